#include "fraclab/simd.hpp"

#include <cmath>

namespace fraclab::simd {
namespace {

double dot_ref(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_ref(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_ref(const double* A, const double* x, double* y, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot_ref(A + i * cols, x, cols);
}

double max_abs_ref(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
}

double barycentric_ref(double t, const double* nodes, const double* lambda, double* out,
                       std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = lambda[j] / (t - nodes[j]);
        s += out[j];
    }
    return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Backend::scalar, dot_ref,     axpy_ref,
                                   gemv_ref,        max_abs_ref, barycentric_ref};
    return table;
}

}  // namespace fraclab::simd
