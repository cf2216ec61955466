#include "scx/kernels.hpp"

#include <atomic>

namespace scx::kern {

namespace {

struct Table {
    Isa isa;
    double (*dot)(const double*, const double*, std::size_t);
    double (*nrm2sq)(const double*, std::size_t);
    double (*wdot)(const double*, const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*xpay)(const double*, double, double*, std::size_t);
    void (*spmv)(std::size_t, const std::int64_t*, const std::int32_t*, const double*,
                 const double*, double*);
};

constexpr Table scalar_table{Isa::scalar,       detail::dot_scalar,  detail::nrm2sq_scalar,
                             detail::wdot_scalar, detail::axpy_scalar, detail::xpay_scalar,
                             detail::csr_spmv_scalar};

Table detect() {
#if defined(SCX_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Table{Isa::avx2,        detail::dot_avx2,  detail::nrm2sq_avx2, detail::wdot_avx2,
                     detail::axpy_avx2, detail::xpay_avx2, detail::csr_spmv_avx2};
#endif
#if defined(SCX_HAVE_NEON_TU)
    return Table{Isa::neon,        detail::dot_neon,  detail::nrm2sq_neon, detail::wdot_neon,
                 detail::axpy_neon, detail::xpay_neon, detail::csr_spmv_neon};
#endif
    return scalar_table;
}

const Table detected = detect();
std::atomic<bool> forced{false};

inline const Table& table() { return forced.load(std::memory_order_relaxed) ? scalar_table : detected; }

} // namespace

Isa active_isa() { return table().isa; }

std::string isa_name(Isa isa) {
    switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    default: return "scalar";
    }
}

void force_scalar(bool on) { forced.store(on, std::memory_order_relaxed); }
bool scalar_forced() { return forced.load(std::memory_order_relaxed); }

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
double nrm2sq(const double* x, std::size_t n) { return table().nrm2sq(x, n); }
double wdot(const double* w, const double* x, const double* y, std::size_t n) {
    return table().wdot(w, x, y, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
void xpay(const double* x, double a, double* p, std::size_t n) { table().xpay(x, a, p, n); }
void csr_spmv(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
              const double* val, const double* x, double* y) {
    table().spmv(rows, rowptr, col, val, x, y);
}

} // namespace scx::kern
