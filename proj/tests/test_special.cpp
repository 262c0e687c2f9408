#include <doctest.h>

#include <cmath>
#include <random>

#include "fraclab/errors.hpp"
#include "fraclab/frackernel.hpp"
#include "fraclab/special.hpp"

using namespace fraclab;

TEST_SUITE("special") {

TEST_CASE("gamma at classical points") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_fn(2.5) == doctest::Approx(1.5 * 0.5 * std::sqrt(pi)).epsilon(1e-14));
    CHECK(gamma_fn(-0.75) == doctest::Approx(std::tgamma(-0.75)).epsilon(1e-14));
}

TEST_CASE("gamma matches std::tgamma on random arguments") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-6.0, 20.0);
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) {
        const double x = d(rng);
        if (std::fabs(x - std::round(x)) < 1e-6 && x <= 0.0) continue;
        worst = std::max(worst, std::fabs(gamma_fn(x) / std::tgamma(x) - 1.0));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("gamma recurrence") {
    for (double x : {0.1, 0.75, 1.3, 3.7, 9.2}) CHECK(gamma_fn(x + 1) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-14));
}

TEST_CASE("gamma poles") {
    CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
    CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
    CHECK_THROWS_AS(gamma_fn(-3.0), DomainError);
}

TEST_CASE("beta") {
    CHECK(beta_fn(0.5, 0.5) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(beta_fn(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(beta_fn(0.3, 1.7) == doctest::Approx(beta_fn(1.7, 0.3)).epsilon(1e-15));
}

TEST_CASE("norm_const") {
    // mpmath reference
    CHECK(norm_const(1, -1.5) == doctest::Approx(0.29920671030107450845).epsilon(1e-13));
    // independent evaluation through std::tgamma
    const double ref = std::tgamma(1.25) / (std::pow(2.0, -1.5) * std::sqrt(pi) * std::fabs(std::tgamma(-0.75)));
    CHECK(std::fabs(norm_const(1, -1.5) - ref) < 1e-10);
    for (int d : {1, 2, 3})
        for (double g : {-1.9, -1.5, -1.05, -0.5, 0.5})
            CHECK(norm_const(d, g) > 0.0);
}

}
