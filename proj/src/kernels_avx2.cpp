// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; it is only entered through the dispatch table after a
// runtime cpuid check, so the rest of the library can be built for a
// generic x86-64 baseline.

#include "stochfd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <cmath>
#include <cstring>
#include <immintrin.h>

namespace stochfd::kernels {
namespace {

void fill_v(double* dst, double v, std::size_t n) {
    const __m256d vv = _mm256_set1_pd(v);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, vv);
    for (; i < n; ++i) dst[i] = v;
}

void copy_v(double* dst, const double* src, std::size_t n) {
    if (n) std::memcpy(dst, src, n * sizeof(double));
}

void scale_v(double* y, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] *= a;
}

void axpy_v(double* y, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void axpby_v(double* y, double a, const double* x, double b, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), t));
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], b * y[i]);
}

void scaled_diff_v(double* out, const double* s, const double* u, double factor,
                   std::size_t n) {
    const __m256d vf = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(s + i), _mm256_loadu_pd(u + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vf));
    }
    for (; i < n; ++i) out[i] = (s[i] - u[i]) * factor;
}

void diff_axpy_v(double* out, double a, const double* x, const double* y,
                 std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        __m256d vo = _mm256_loadu_pd(out + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, d, vo));
    }
    for (; i < n; ++i) out[i] = std::fma(a, x[i] - y[i], out[i]);
}

void mul_v(double* y, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i,
                         _mm256_mul_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] *= x[i];
}

void mul_axpy_v(double* y, double a, const double* c, const double* x,
                std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d cx = _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(x + i));
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, cx, vy));
    }
    for (; i < n; ++i) y[i] = std::fma(a, c[i] * x[i], y[i]);
}

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

double dot_v(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r = std::fma(x[i], y[i], r);
    return r;
}

double sum_v(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double sum_sq_v(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * x[i];
    return r;
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double sum_abs_v(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_and_pd(kAbsMask, _mm256_loadu_pd(x + i)));
    double r = hsum(acc);
    for (; i < n; ++i) r += std::fabs(x[i]);
    return r;
}

double max_abs_v(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_and_pd(kAbsMask, _mm256_loadu_pd(x + i)));
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    double r = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
    for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

} // namespace

const Ops& avx2_ops_impl() {
    // sum_abs_pow stays scalar: there is no vectorizable std::pow here.
    static const Ops table{fill_v,      copy_v,        scale_v,     axpy_v,
                           axpby_v,     scaled_diff_v, diff_axpy_v, mul_v,
                           mul_axpy_v,  dot_v,         sum_v,       sum_sq_v,
                           sum_abs_v,   scalar_ops().sum_abs_pow,   max_abs_v};
    return table;
}

} // namespace stochfd::kernels

#else

namespace stochfd::kernels {
const Ops& avx2_ops_impl() { return scalar_ops(); }
} // namespace stochfd::kernels

#endif
