#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fraclab/simd.hpp"

using namespace fraclab::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

std::vector<const KernelTable*> vector_tables() {
    std::vector<const KernelTable*> t;
    if (auto* k = avx2_kernels()) t.push_back(k);
    if (auto* k = neon_kernels()) t.push_back(k);
    return t;
}

// lengths around every vector width and remainder
const std::size_t lengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 65, 129, 257, 1000};

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("backend selection") {
    const KernelTable& a = active();
    CHECK(!backend_name(a.backend).empty());
    CHECK(force_backend(Backend::scalar));
    CHECK(active().backend == Backend::scalar);
    for (auto* t : vector_tables()) {
        CHECK(force_backend(t->backend));
        CHECK(active().backend == t->backend);
    }
    force_backend(a.backend);
}

TEST_CASE("vector kernels agree with the scalar reference") {
    const auto& ref = scalar_kernels();
    std::mt19937_64 rng(42);
    for (auto* vk : vector_tables()) {
        CAPTURE(backend_name(vk->backend));
        for (std::size_t n : lengths) {
            CAPTURE(n);
            const auto a = random_vec(rng, n), b = random_vec(rng, n);
            double scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) scale += std::fabs(a[i] * b[i]);
            CHECK(std::fabs(vk->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
                  1e-15 * (scale + 1.0) * double(n + 1));

            auto y1 = random_vec(rng, n), y2 = y1;
            vk->axpy(0.37, a.data(), y1.data(), n);
            ref.axpy(0.37, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

            // max_abs has no reassociation: bitwise equal
            CHECK(vk->max_abs(a.data(), n) == ref.max_abs(a.data(), n));

            const std::size_t rows = n % 13 + 1;
            const auto A = random_vec(rng, rows * n);
            std::vector<double> g1(rows), g2(rows);
            vk->gemv(A.data(), a.data(), g1.data(), rows, n);
            ref.gemv(A.data(), a.data(), g2.data(), rows, n);
            for (std::size_t i = 0; i < rows; ++i) CHECK(std::fabs(g1[i] - g2[i]) <= 1e-14 * double(n + 1));

            if (n > 0) {
                auto nodes = random_vec(rng, n, -1.0, 1.0);
                const auto lam = random_vec(rng, n);
                const double t = 1.5;  // away from every node
                std::vector<double> o1(n), o2(n);
                const double s1 = vk->barycentric(t, nodes.data(), lam.data(), o1.data(), n);
                const double s2 = ref.barycentric(t, nodes.data(), lam.data(), o2.data(), n);
                CHECK(s1 == doctest::Approx(s2).epsilon(1e-13));
                for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("max_abs handles signs and an empty range") {
    const auto& ref = scalar_kernels();
    std::vector<double> v{0.5, -3.0, 2.0, -0.1, 2.9};
    CHECK(ref.max_abs(v.data(), v.size()) == 3.0);
    CHECK(ref.max_abs(v.data(), 0) == 0.0);
    for (auto* vk : vector_tables()) CHECK(vk->max_abs(v.data(), v.size()) == 3.0);
}

TEST_CASE("span wrappers use the active table") {
    std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    CHECK(dot(a, b) == 32.0);
    axpy(2.0, a, b);
    CHECK(b == std::vector<double>{6, 9, 12});
    CHECK(max_abs(b) == 12.0);
}

}
