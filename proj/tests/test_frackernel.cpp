#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "fraclab/errors.hpp"
#include "fraclab/frackernel.hpp"
#include "fraclab/greenop.hpp"
#include "fraclab/special.hpp"

using namespace fraclab;

namespace {

// G(x, y) straight from the integral representation, integrated by tanh-sinh
double green_oracle(double x, double y, double alpha) {
    const double a = alpha / 2.0;
    const double c = 1.0 / (std::pow(2.0, alpha) * std::pow(std::tgamma(a), 2));
    const double w = (1.0 - x * x) * (1.0 - y * y) / ((x - y) * (x - y));
    boost::math::quadrature::tanh_sinh<double> ts;
    const double inner = ts.integrate([a](double r) { return std::pow(r, a - 1.0) / std::sqrt(1.0 + r); }, 0.0, w);
    return c * std::pow(std::fabs(x - y), alpha - 1.0) * inner;
}

double delta_estimate(double x, double y, double alpha) {
    const double dx = 1.0 - std::fabs(x), dy = 1.0 - std::fabs(y);
    const double a = alpha / 2.0;
    const double near = std::pow(dx * dy, (alpha - 1.0) / 2.0);
    if (x == y) return near;
    return std::min(std::pow(dx * dy, a) / std::fabs(x - y), near);
}

}  // namespace

TEST_SUITE("frackernel") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((KernelParams{1, 2.5}).validate(), DomainError);
    CHECK_THROWS_AS((KernelParams{0, 1.5}).validate(), DomainError);
    CHECK_NOTHROW((KernelParams{3, 0.5}).validate());
    CHECK_THROWS_AS((KernelParams{1, 1.0}).validate_solver(), DomainError);
    CHECK_THROWS_AS((KernelParams{2, 1.5}).validate_solver(), DomainError);
}

TEST_CASE("w factor") {
    CHECK(w_factor(0.0, 0.5).value == 3.0);
    CHECK(w_factor(1.0, 0.3).value == 0.0);
    CHECK(w_factor(0.2, 0.2).diagonal);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double x = u(rng), y = u(rng);
        CHECK(w_factor(x, y).value == w_factor(y, x).value);
    }
}

TEST_CASE("green goldens (mpmath)") {
    const KernelParams kp{1, 1.5};
    CHECK(green_ball(0.0, 0.5, kp) == doctest::Approx(0.35646685935169689957).epsilon(1e-12));
    CHECK(green_ball(0.3, -0.7, kp) == doctest::Approx(0.16201109705339281085).epsilon(1e-12));
    CHECK(green_ball(0.9, 0.95, kp) == doctest::Approx(0.17653145209306679459).epsilon(1e-12));
    CHECK(green_ball(0.2, 0.2000001, kp) == doctest::Approx(0.92249548766429098644).epsilon(1e-10));
}

TEST_CASE("green matches tanh-sinh quadrature on random pairs") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.999, 0.999);
    for (double alpha : {1.05, 1.2, 1.5, 1.8, 1.95}) {
        const GreenKernel K({1, alpha});
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double x = u(rng), y = u(rng);
            worst = std::max(worst, std::fabs(K(x, y) / green_oracle(x, y, alpha) - 1.0));
        }
        CAPTURE(alpha);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("green for alpha <= 1 and in higher dimension") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.95, 0.95);
    for (double alpha : {0.5, 0.9}) {
        const GreenKernel K({1, alpha});
        for (int k = 0; k < 50; ++k) {
            const double x = u(rng), y = u(rng);
            CHECK(K(x, y) == doctest::Approx(green_oracle(x, y, alpha)).epsilon(1e-10));
        }
    }
    // alpha = d = 1 closed form: (1/pi) asinh(sqrt(w))
    const GreenKernel K1({1, 1.0});
    for (int k = 0; k < 50; ++k) {
        const double x = u(rng), y = u(rng);
        CHECK(K1(x, y) == doctest::Approx(std::asinh(std::sqrt(w_factor(x, y).value)) / pi).epsilon(1e-12));
    }
    // d = 3: radial symmetry under rotation of both points
    const GreenKernel K3({3, 1.5});
    const double x[3] = {0.3, 0.1, -0.2}, y[3] = {-0.1, 0.4, 0.2};
    const double xr[3] = {0.1, -0.3, -0.2}, yr[3] = {0.4, 0.1, 0.2};  // rotation by 90 degrees in the first plane
    CHECK(K3.ball(x, y) == doctest::Approx(K3.ball(xr, yr)).epsilon(1e-14));
    CHECK(K3.ball(x, y) > 0.0);
}

TEST_CASE("green symmetry, support and diagonal") {
    const GreenKernel K({1, 1.5});
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = u(rng), y = u(rng);
        CHECK(K(x, y) == K(y, x));
    }
    CHECK(K(1.2, 0.0) == 0.0);
    CHECK(K(0.0, -1.0) == 0.0);
    CHECK(K(1.0, 1.0) == 0.0);
    const double d = K(0.2, 0.2);
    CHECK(std::isfinite(d));
    CHECK(K(0.2, 0.2 + 1e-9) == doctest::Approx(d).epsilon(1e-3));
    CHECK(std::isinf(GreenKernel({1, 0.8})(0.1, 0.1)));
}

TEST_CASE("two-sided boundary estimate has a bounded ratio") {
    for (double alpha : {1.2, 1.5, 1.8}) {
        const GreenKernel K({1, alpha});
        auto range = [&](std::size_t m) {
            double lo = INFINITY, hi = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const double x = std::cos(pi * (double(i) + 0.5) / double(m));
                    const double y = std::cos(pi * (double(j) + 0.5) / double(m));
                    const double r = K(x, y) / delta_estimate(x, y, alpha);
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
            return std::pair{lo, hi};
        };
        const auto [lo, hi] = range(100);
        const auto [lo2, hi2] = range(400);
        CAPTURE(alpha);
        CHECK(lo > 0.0);
        CHECK(std::isfinite(hi));
        // the bounds do not drift as the grid reaches closer to the boundary and the diagonal
        CHECK(lo2 > 0.5 * lo);
        CHECK(hi2 < 2.0 * hi);
    }
}

TEST_CASE("interval kernel is the scaled ball kernel") {
    const GreenKernel K({1, 1.5});
    const double c = 0.25, r = 0.75;
    CHECK(K.interval(0.1, 0.6, c, r) == doctest::Approx(std::pow(r, 0.5) * K((0.1 - c) / r, (0.6 - c) / r)));
    CHECK(K.interval(-0.6, 0.0, c, r) == 0.0);
}

TEST_CASE("poisson kernel") {
    const KernelParams kp{1, 1.5};
    CHECK(poisson_ball(0.999999, 1.5, 1.0, kp) < 1e-3 * poisson_ball(0.0, 1.5, 1.0, kp));
    CHECK_THROWS_AS(poisson_ball(1.2, 1.5, 1.0, kp), DomainError);
    CHECK_THROWS_AS(poisson_ball(0.2, 0.5, 1.0, kp), DomainError);
    for (double x : {0.0, 0.3, -0.6}) CHECK(std::fabs(poisson_exterior_mass(x, 1.0, kp) - 1.0) < 1e-6);
    for (double alpha : {1.2, 1.8})
        CHECK(std::fabs(poisson_exterior_mass(0.4, 2.0, {1, alpha}) - 1.0) < 1e-6);

    // independent route: tanh-sinh after y = 1/t on each side. Written out,
    // P(x, 1/t)/t^2 = C (1-x^2)^a t^(2a-1) / (((1-t)(1+t))^a |1 - x t|); most
    // of the mass sits within rounding distance of t = 1, so 1-t comes from
    // the complement argument rather than from y.
    const double a = kp.alpha / 2.0;
    auto reduced = [&](double x, double t, double one_minus_t) {
        return poisson_const(kp) * std::pow(1.0 - x * x, a) * std::pow(t, 2.0 * a - 1.0) /
               (std::pow(one_minus_t * (1.0 + t), a) * std::fabs(1.0 - x * t));
    };
    for (double x : {0.0, 0.3, -0.6})
        for (double t : {0.1, 0.5, 0.9})
            CHECK(reduced(x, t, 1.0 - t) == doctest::Approx(poisson_ball(x, 1.0 / t, 1.0, kp) / (t * t)).epsilon(1e-12));
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double x : {0.0, 0.3, -0.6}) {
        auto side = [&](double xs) {
            return ts.integrate([&](double t, double tc) { return reduced(xs, t, tc > 0.0 ? tc : 1.0 - t); }, 0.0, 1.0);
        };
        CHECK(side(x) + side(-x) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("principal value operator") {
    const KernelParams kp{1, 1.5};
    const GreenOperator op(make_grid(65), kp);
    const auto zero = GridFunction::zeros(op.grid());
    CHECK(frac_laplacian_pv(zero, 0.3, kp) == 0.0);

    const GridFunction& g1 = op.torsion();
    for (double x : {0.0, 0.3, -0.3, 0.6, -0.6}) {
        CHECK(std::fabs(frac_laplacian_pv(g1, x, kp) - 1.0) < 5e-3);
        CHECK(frac_laplacian_pv(g1.scaled(2.0), x, kp) == doctest::Approx(2.0 * frac_laplacian_pv(g1, x, kp)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(frac_laplacian_pv(g1, 0.9999, kp), DomainError);
}

TEST_CASE("principal value of the closed-form torsion converges") {
    // (1 - x^2)^(alpha/2) scaled to solve (-Delta)^(alpha/2) u = 1 exactly
    for (double alpha : {1.2, 1.5, 1.8}) {
        const KernelParams kp{1, alpha};
        const double k = std::sqrt(pi) /
                         (std::pow(2.0, alpha) * std::tgamma(1.0 + alpha / 2.0) * std::tgamma((1.0 + alpha) / 2.0));
        double prev = 0.0;
        for (std::size_t n : {65, 129, 257}) {
            const auto u = GridFunction::sample(make_grid(n), [&](double x) { return k * std::pow(1.0 - x * x, alpha / 2.0); });
            double worst = 0.0;
            for (double x : {0.0, 0.25, -0.5}) worst = std::max(worst, std::fabs(frac_laplacian_pv(u, x, kp) - 1.0));
            CAPTURE(alpha);
            CAPTURE(n);
            if (prev > 0.0) CHECK(worst < prev);
            prev = worst;
        }
        CHECK(prev < 1e-2);
    }
}

}
