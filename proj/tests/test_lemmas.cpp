#include <doctest.h>

#include "fraclab/lemmas.hpp"

using namespace fraclab;

namespace {

const LemmaCheck* find(const LemmaReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_SUITE("lemmas") {

TEST_CASE("battery passes at the default tolerances") {
    for (double alpha : {1.2, 1.5, 1.8}) {
        LemmaConfig cfg;
        cfg.alpha = alpha;
        const auto rep = run_lemma_battery(cfg);
        CAPTURE(alpha);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
        CHECK(rep.gamma_U > 0.0);
        for (const char* name : {"green_ratio", "unimodality_preservation", "green_reflection", "green_monotonicity",
                                 "poisson_monotonicity", "poisson_normalization", "cone_invariance"})
            CHECK(find(rep, name) != nullptr);
    }
}

TEST_CASE("machine-precision tolerance is a negative control") {
    LemmaConfig cfg;
    cfg.set_all_tolerances(1e-15);
    const auto rep = run_lemma_battery(cfg);
    CHECK_FALSE(rep.all_passed());
    for (const auto& c : rep.checks)
        if (!c.passed) CHECK(c.value > c.threshold);
}

TEST_CASE("individual identities") {
    const GreenKernel K({1, 1.3});
    CHECK(green_reflection_defect(K, 0.25, 32) <= 1e-12);
    CHECK(green_monotonicity_defect(K, 0.25, 50) <= 0.0);
    CHECK(poisson_monotonicity_defect({1, 1.3}, 0.25, 20) <= 0.0);
}

}
