#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace scx::kern {

enum class Isa { scalar, avx2, neon };

// Kernel table selected once at startup from CPU features; force_scalar()
// overrides it (deterministic mode: fixed-order scalar reductions).
Isa active_isa();
std::string isa_name(Isa isa);
void force_scalar(bool on);
bool scalar_forced();

double dot(const double* x, const double* y, std::size_t n);
double nrm2sq(const double* x, std::size_t n);
// sum_i w[i] * x[i] * y[i]
double wdot(const double* w, const double* x, const double* y, std::size_t n);
// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
// p = x + a * p
void xpay(const double* x, double a, double* p, std::size_t n);
// y = A x for CSR A
void csr_spmv(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
              const double* val, const double* x, double* y);

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
double nrm2sq_scalar(const double* x, std::size_t n);
double wdot_scalar(const double* w, const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void xpay_scalar(const double* x, double a, double* p, std::size_t n);
void csr_spmv_scalar(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                     const double* val, const double* x, double* y);

#if defined(SCX_HAVE_AVX2_TU)
double dot_avx2(const double* x, const double* y, std::size_t n);
double nrm2sq_avx2(const double* x, std::size_t n);
double wdot_avx2(const double* w, const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void xpay_avx2(const double* x, double a, double* p, std::size_t n);
void csr_spmv_avx2(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                   const double* val, const double* x, double* y);
#endif
#if defined(SCX_HAVE_NEON_TU)
double dot_neon(const double* x, const double* y, std::size_t n);
double nrm2sq_neon(const double* x, std::size_t n);
double wdot_neon(const double* w, const double* x, const double* y, std::size_t n);
void axpy_neon(double a, const double* x, double* y, std::size_t n);
void xpay_neon(const double* x, double a, double* p, std::size_t n);
void csr_spmv_neon(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                   const double* val, const double* x, double* y);
#endif
} // namespace detail

} // namespace scx::kern
