#include "fraclab/simd.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <cmath>

namespace fraclab::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_neon(const double* A, const double* x, double* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_neon(A + r * cols, x, cols);
}

double max_abs_neon(const double* x, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
    double r = vmaxvq_f64(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
    return r;
}

double barycentric_neon(double t, const double* nodes, const double* lambda, double* out,
                        std::size_t n) {
    const float64x2_t vt = vdupq_n_f64(t);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t q = vdivq_f64(vld1q_f64(lambda + j), vsubq_f64(vt, vld1q_f64(nodes + j)));
        vst1q_f64(out + j, q);
        acc = vaddq_f64(acc, q);
    }
    double s = vaddvq_f64(acc);
    for (; j < n; ++j) {
        out[j] = lambda[j] / (t - nodes[j]);
        s += out[j];
    }
    return s;
}

}  // namespace

const KernelTable* neon_kernels() {
    static const KernelTable table{Backend::neon, dot_neon,     axpy_neon,
                                   gemv_neon,     max_abs_neon, barycentric_neon};
    return &table;
}

}  // namespace fraclab::simd

#else

namespace fraclab::simd {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace fraclab::simd

#endif
