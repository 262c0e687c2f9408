#pragma once

// Real-line model u = b u^p + u0 with p > 1, its two-root threshold c_p and
// the radii that drive the cone compression/expansion argument.

#include <optional>
#include <string_view>
#include <vector>

namespace fraclab {

struct ScalarProblem {
    double b;   // power coefficient, > 0
    double u0;  // inhomogeneity, >= 0
    double p;   // power, > 1

    // Throws DomainError when an invariant fails.
    void validate() const;
};

// c_p = ((p-1)^((1-p)/p) + (p-1)^(1/p))^(-p); the product b u0^(p-1) below
// which u = b u^p + u0 has two nonnegative roots.
double critical_constant(double p);

// Band around c_p inside which b u0^(p-1) counts as the tangency case.
inline constexpr double threshold_band = 1e-10;

// Every nonnegative root, ascending. A tangency returns the double root once.
std::vector<double> scalar_roots(const ScalarProblem& prob);

struct Radii {
    double rho1;
    double rho2;
    double rho3;
};

enum class CertificateStatus {
    pass,
    threshold_violated,  // b u0^(p-1) > c_p
    at_threshold,        // |b u0^(p-1) - c_p| <= threshold_band
    degenerate_zero,     // u0 = 0: u = 0 solves, rho1 undefined
};

std::string_view to_string(CertificateStatus s);

struct RadiiOutcome {
    CertificateStatus status;
    double lhs;     // b u0^(p-1)
    double c_p;
    std::optional<Radii> radii;  // engaged iff status == pass

    bool ok() const { return status == CertificateStatus::pass; }
};

// Deterministic radii:
//   rho2 = (u0 / (b (p-1)))^(1/p)
//   rho1 = root of b r^p + r = u0, halved
//   rho3 = max(2 rho2, 2 * root of a r^p - r = u0)
// Throws DomainError unless 0 < a <= b, u0 >= 0, p > 1.
RadiiOutcome radii_certificate(double a_coef, double b_coef, double u0_norm, double p);

// Smallest strictness margin the returned radii must have, relative to the
// size of the terms in each inequality.
inline constexpr double radii_margin = 1e-12;

}  // namespace fraclab

namespace fraclab {

// Largest root of a r^p - r = u0 (a > 0, u0 >= 0, p > 1): every solution in
// the cone has norm at most this when |B(u)| >= a |u|^p.
double expansion_root(double a_coef, double u0_norm, double p);

}  // namespace fraclab
