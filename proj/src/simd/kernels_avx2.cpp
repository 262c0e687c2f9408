// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "fraclab/simd.hpp"

#if defined(__x86_64__) && defined(FRACLAB_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace fraclab::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_avx2(const double* A, const double* x, double* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(A + r * cols, x, cols);
}

double max_abs_avx2(const double* x, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
    return r;
}

double barycentric_avx2(double t, const double* nodes, const double* lambda, double* out,
                        std::size_t n) {
    const __m256d vt = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d q = _mm256_div_pd(_mm256_loadu_pd(lambda + j), _mm256_sub_pd(vt, _mm256_loadu_pd(nodes + j)));
        _mm256_storeu_pd(out + j, q);
        acc = _mm256_add_pd(acc, q);
    }
    double s = hsum(acc);
    for (; j < n; ++j) {
        out[j] = lambda[j] / (t - nodes[j]);
        s += out[j];
    }
    return s;
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const bool usable = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    static const KernelTable table{Backend::avx2, dot_avx2,     axpy_avx2,
                                   gemv_avx2,     max_abs_avx2, barycentric_avx2};
    return usable ? &table : nullptr;
}

}  // namespace fraclab::simd

#else

namespace fraclab::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace fraclab::simd

#endif
