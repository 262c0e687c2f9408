#include <doctest.h>

#include <cmath>

#include "fraclab/quadrature.hpp"
#include "fraclab/special.hpp"

using namespace fraclab;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (std::size_t n : {1, 2, 5, 10, 16, 24}) {
        const auto q = gauss_legendre(n);
        REQUIRE(q.size() == n);
        for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], double(k));
            const double exact = k % 2 ? 0.0 : 2.0 / double(k + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("Gauss-Jacobi moments on [0,1]") {
    // int_0^1 (1-t)^A t^(B+k) dt = B(A+1, B+k+1)
    for (auto [A, B] : {std::pair{0.0, -0.25}, {-0.75, 0.0}, {0.5, -0.5}, {0.0, 0.0}, {-0.4, 0.9}}) {
        const std::size_t n = 12;
        const auto q = gauss_jacobi_unit(n, A, B);
        for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], double(k));
            CHECK(s == doctest::Approx(beta_fn(A + 1.0, B + double(k) + 1.0)).epsilon(1e-12));
        }
        for (double t : q.nodes) {
            CHECK(t > 0.0);
            CHECK(t < 1.0);
        }
    }
}

TEST_CASE("graded rule error on t^beta is bounded by the innermost panel mass") {
    // The innermost panel [0, delta] carries mass delta^(1+beta)/(1+beta); the
    // geometric panels above it are resolved to rounding, so the total error
    // must sit below that mass and shrink with the number of levels.
    for (double beta : {-0.3, -0.5, -0.6, -0.8}) {
        double prev = 1.0;
        for (int levels : {8, 12, 16, 20, 24}) {
            GradedOptions opt;
            opt.levels = levels;
            const double s = integrate_graded([&](double t) { return std::pow(t, beta); }, 0.0, 1.0, true, false, 16, opt);
            const double err = std::fabs(s - 1.0 / (1.0 + beta));
            const double delta = 0.5 * std::pow(opt.sigma, levels);
            CAPTURE(beta);
            CAPTURE(levels);
            CHECK(err <= std::pow(delta, 1.0 + beta) / (1.0 + beta) + 1e-12);  // plus a rounding floor
            CHECK(err <= prev);
            prev = std::max(err, 1e-12);
        }
    }
    // two-sided blow-up at an anchor that floating point resolves exactly
    const double s = integrate_graded([](double t) { return std::pow(-t, -0.5); }, -1.0, 0.0, false, true) +
                     integrate_graded([](double t) { return std::pow(t, -0.5); }, 0.0, 1.0, true, false);
    CHECK(s == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("graded rule resolves Hoelder kinks at interior and end anchors") {
    // bounded integrands with an (alpha - 1)-type cusp, the class met by the Green operator
    const double s = integrate_graded([](double t) { return std::pow(1.0 - t, 0.3); }, 0.0, 1.0, false, true);
    CHECK(s == doctest::Approx(1.0 / 1.3).epsilon(1e-12));
    const double s3 = integrate_graded([](double t) { return std::sqrt(std::fabs(0.3 - t)); }, 0.0, 0.3, false, true) +
                      integrate_graded([](double t) { return std::sqrt(std::fabs(t - 0.3)); }, 0.3, 1.0, true, false);
    CHECK(s3 == doctest::Approx(2.0 / 3.0 * (std::pow(0.3, 1.5) + std::pow(0.7, 1.5))).epsilon(1e-12));
    for (double x : {-0.95, 0.05, 0.3, 0.5, 0.95}) {
        auto f = [&](double t) { return std::pow(std::fabs(t - x), 0.05); };
        const double exact = (std::pow(x + 1.0, 1.05) + std::pow(1.0 - x, 1.05)) / 1.05;
        const double s4 = integrate_graded(f, -1.0, x, false, true) + integrate_graded(f, x, 1.0, true, false);
        CAPTURE(x);
        CHECK(s4 == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("graded rule is exact for smooth polynomials") {
    const double s = integrate_graded([](double t) { return 3.0 * t * t; }, -1.0, 2.0, true, true);
    CHECK(s == doctest::Approx(9.0).epsilon(1e-14));
}

}
