#include "scx/kernels.hpp"

namespace scx::kern::detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double wdot_scalar(const double* w, const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_scalar(const double* x, double a, double* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + a * p[i];
}

void csr_spmv_scalar(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                     const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::int64_t j = rowptr[r]; j < rowptr[r + 1]; ++j) s += val[j] * x[col[j]];
        y[r] = s;
    }
}

} // namespace scx::kern::detail
