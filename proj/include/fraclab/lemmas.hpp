#pragma once

// Numerical verification battery for the kernel facts behind the two-solution
// result: the Green-ratio constant, preservation of symmetry and unimodality
// by G, the reflection identities and monotonicity of the Green function on a
// shifted interval, Poisson normalization and cone invariance.

#include <cstdint>
#include <string>
#include <vector>

#include "fraclab/frackernel.hpp"

namespace fraclab {

struct LemmaConfig {
    double alpha = 1.5;
    double p = 2.0;
    std::size_t grid_n = 65;
    double a_half = 0.5;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    std::size_t ratio_resolution = 200;

    double ratio_stability = 0.02;  // relative change of gamma_U under grid doubling
    double unimodal_tol = 1e-9;
    double reflection_tol = 1e-10;
    double monotone_tol = 1e-10;
    double poisson_tol = 1e-6;
    double invariance_tol = 1e-8;

    // Replaces every threshold above by `tol`.
    void set_all_tolerances(double tol);
};

struct LemmaCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured worst quantity
    double threshold = 0.0;  // pass iff value <= threshold (or the stated relation)
    std::string detail;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    double gamma_U = 0.0;
    double gamma_U_refined = 0.0;

    bool all_passed() const;
};

LemmaReport run_lemma_battery(const LemmaConfig& cfg);

// Individual pieces, exposed for tests.

// Worst |G_W(2z-y, 2z-v) - G_W(y, v)| and |G_W(2z-y, v) - G_W(y, 2z-v)| over an
// m x m grid of (y, v) in W = (2z - 1, 1). Use dyadic z and m.
double green_reflection_defect(const GreenKernel& kernel, double z, std::size_t m);
// Worst positive part of G_W(2z-y, v) - G_W(y, v) for y, v in (z, 1).
double green_monotonicity_defect(const GreenKernel& kernel, double z, std::size_t m);
// Worst positive part of P_W(y, v) - P_W(x, v) for z-r < x < z < y = 2z-x and v left of W.
double poisson_monotonicity_defect(const KernelParams& kp, double z, std::size_t m);

}  // namespace fraclab
