#include "scx/kernels.hpp"

#include <immintrin.h>

namespace scx::kern::detail {

static inline double hsum4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    double s = hsum4(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum4(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double wdot_avx2(const double* w, const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), p, acc);
    }
    double s = hsum4(acc);
    for (; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_avx2(const double* x, double a, double* p, std::size_t n) {
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(p + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(p + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) p[i] = x[i] + a * p[i];
}

void csr_spmv_avx2(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                   const double* val, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        std::int64_t b = rowptr[r];
        std::int64_t e = rowptr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        std::int64_t j = b;
        for (; j + 4 <= e; j += 4) {
            __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + j));
            __m256d xv = _mm256_i32gather_pd(x, idx, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + j), xv, acc);
        }
        double s = hsum4(acc);
        for (; j < e; ++j) s += val[j] * x[col[j]];
        y[r] = s;
    }
}

} // namespace scx::kern::detail
