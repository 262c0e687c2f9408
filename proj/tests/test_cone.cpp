#include <doctest.h>

#include <cmath>
#include <cstring>

#include "fraclab/cone.hpp"
#include "fraclab/errors.hpp"

using namespace fraclab;

namespace {

const GreenOperator& op15() {
    static const GreenOperator op(make_grid(65), {1, 1.5});
    return op;
}

ConeSpec spec15() { return {0.5, gamma_U(0.5, op15().kernel()), 1e-9}; }

}  // namespace

TEST_SUITE("cone") {

TEST_CASE("membership flags") {
    const auto g = op15().grid();
    CHECK(check_membership(GridFunction::zeros(g), spec15()).member());
    const auto odd = check_membership(GridFunction::sample(g, [](double x) { return x; }), spec15());
    CHECK_FALSE(odd.symmetric);
    CHECK(odd.worst_asymmetry > 0.0);
    const auto neg = check_membership(GridFunction::sample(g, [](double x) { return x * x - 0.5; }), spec15());
    CHECK_FALSE(neg.nonneg);
    CHECK_FALSE(neg.unimodal);
    const auto bimodal = check_membership(
        GridFunction::sample(g, [](double x) { return std::exp(-20 * (x - 0.5) * (x - 0.5)) + std::exp(-20 * (x + 0.5) * (x + 0.5)); }),
        spec15());
    CHECK(bimodal.symmetric);
    CHECK_FALSE(bimodal.unimodal);
    // nonneg, symmetric, unimodal but too peaked for the ratio
    const auto peaked = check_membership(GridFunction::sample(g, [](double x) { return std::exp(-50 * x * x); }), spec15());
    CHECK(peaked.shape_ok());
    CHECK_FALSE(peaked.ratio_ok);
    ConeSpec ratio_only = spec15();
    ratio_only.kind = ConeKind::ratio_only;
    CHECK(check_membership(GridFunction::sample(g, [](double x) { return 1.0 + 0.1 * x; }), ratio_only).member());
}

TEST_CASE("torsion is in the cone") {
    CHECK(check_membership(op15().torsion(), spec15()).member());
}

TEST_CASE("membership is invariant under positive scaling (property)") {
    for (const auto& u : sample_cone(1.0, 50, 8, op15().grid(), spec15(), 1.5)) {
        const bool m = check_membership(u, spec15()).member();
        for (double s : {1e-6, 0.3, 7.0, 1e5}) CHECK(check_membership(u.scaled(s), spec15()).member() == m);
    }
}

TEST_CASE("samples are members with the requested norm and are reproducible") {
    const auto a = sample_cone(2.5, 100, 17, op15().grid(), spec15(), 1.5);
    const auto b = sample_cone(2.5, 100, 17, op15().grid(), spec15(), 1.5);
    const auto c = sample_cone(2.5, 100, 18, op15().grid(), spec15(), 1.5);
    REQUIRE(a.size() == 100);
    bool differs = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(check_membership(a[k], spec15()).member());
        CHECK(a[k].sup_norm() == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(std::memcmp(a[k].values().data(), b[k].values().data(), a[k].size() * sizeof(double)) == 0);
        differs = differs || a[k][20] != c[k][20];
    }
    CHECK(differs);
    CHECK(max_profile_exponent(spec15()) > 0.75);
}

TEST_CASE("invariance under B = G u^p") {
    for (double p : {2.0, 3.0}) {
        const auto rep = verify_invariance(op15(), p, {0.5, spec15().gamma, 1e-8}, 100, 1);
        CHECK(rep.passed());
        CHECK(rep.count == 100);
    }
}

TEST_CASE("inflated ratio is a negative control") {
    ConeSpec strict = spec15();
    strict.gamma = 1.0;
    const auto rep = verify_invariance(op15(), 2.0, strict, 50, 1, spec15());
    CHECK_FALSE(rep.passed());
    CHECK(rep.worst_ratio_shortfall > 0.1);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("positive power") {
    const auto u = GridFunction::sample(op15().grid(), [](double x) { return x; });
    const auto v = positive_power(u, 2.0);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(v[j] == (u[j] > 0 ? u[j] * u[j] : 0.0));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(check_membership(op15().torsion(), {1.0, 0.5, 1e-9}), DomainError);
    CHECK_THROWS_AS(check_membership(op15().torsion(), {0.5, 0.0, 1e-9}), DomainError);
    CHECK_THROWS_AS(sample_cone(-1.0, 3, 1, op15().grid(), spec15(), 1.5), DomainError);
}

}
