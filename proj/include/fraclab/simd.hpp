#pragma once

// Data-parallel inner loops used by the Nystrom operator and the solvers.
//
// Every kernel has a scalar reference implementation and vector variants
// (AVX2+FMA on x86-64, NEON on AArch64). The variant is picked once at first
// use from the running CPU; setting FRACLAB_SIMD=scalar forces the reference
// path. Vector variants reassociate sums, so results agree with the scalar
// path to rounding, not bitwise.

#include <cstddef>
#include <span>
#include <string_view>

namespace fraclab::simd {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

struct KernelTable {
    Backend backend;
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y = A x, A row-major rows x cols
    void (*gemv)(const double* A, const double* x, double* y, std::size_t rows, std::size_t cols);
    double (*max_abs)(const double* x, std::size_t n);
    // out[j] = lambda[j] / (t - nodes[j]); returns sum of out. Caller guarantees t != nodes[j].
    double (*barycentric)(double t, const double* nodes, const double* lambda, double* out,
                          std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Kernels selected for this process.
const KernelTable& active();

// Overrides the selection (tests); returns false if the backend is unavailable.
bool force_backend(Backend b);

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double max_abs(std::span<const double> x) {
    return active().max_abs(x.data(), x.size());
}

}  // namespace fraclab::simd
