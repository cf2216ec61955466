#include "scx/kernels.hpp"

#include <arm_neon.h>

namespace scx::kern::detail {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double wdot_neon(const double* w, const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t p = vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
        acc = vfmaq_f64(acc, vld1q_f64(w + i), p);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_neon(const double* x, double a, double* p, std::size_t n) {
    float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(p + i, vfmaq_f64(vld1q_f64(x + i), va, vld1q_f64(p + i)));
    for (; i < n; ++i) p[i] = x[i] + a * p[i];
}

void csr_spmv_neon(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                   const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        float64x2_t acc = vdupq_n_f64(0.0);
        std::int64_t j = rowptr[r];
        std::int64_t e = rowptr[r + 1];
        for (; j + 2 <= e; j += 2) {
            float64x2_t xv = {x[col[j]], x[col[j + 1]]};
            acc = vfmaq_f64(acc, vld1q_f64(val + j), xv);
        }
        double s = vaddvq_f64(acc);
        for (; j < e; ++j) s += val[j] * x[col[j]];
        y[r] = s;
    }
}

} // namespace scx::kern::detail
