#pragma once

// The cone of nonnegative, symmetric, unimodal functions on [-1, 1] whose
// infimum over U = (-a, a) is at least gamma times their supremum.

#include <cstdint>
#include <optional>
#include <vector>

#include "fraclab/greenop.hpp"
#include "fraclab/grid.hpp"

namespace fraclab {

enum class ConeKind {
    symmetric_unimodal,  // the cone used for the interval problem
    ratio_only,          // general Hammerstein cone: nonnegativity and the ratio only
};

struct ConeSpec {
    double a_half = 0.5;
    double gamma = 0.5;
    double tol = 1e-9;  // relative to the sup norm of the checked function
    ConeKind kind = ConeKind::symmetric_unimodal;

    void validate() const;
};

struct ConeDiagnostics {
    bool nonneg = true;
    bool symmetric = true;
    bool unimodal = true;
    bool ratio_ok = true;
    // worst violations, as nonnegative magnitudes (0 when the property holds exactly)
    double worst_negative = 0.0;
    double worst_asymmetry = 0.0;
    double worst_monotonicity = 0.0;
    double ratio_shortfall = 0.0;
    double inf_on_U = 0.0;
    double sup = 0.0;
    ConeKind kind = ConeKind::symmetric_unimodal;

    bool member() const {
        if (kind == ConeKind::ratio_only) return nonneg && ratio_ok;
        return nonneg && symmetric && unimodal && ratio_ok;
    }
    // Hypotheses asked of a forcing term: membership without the ratio.
    bool shape_ok() const { return nonneg && symmetric && unimodal; }
};

// Throws DomainError on an asymmetric grid.
ConeDiagnostics check_membership(const GridFunction& u, const ConeSpec& spec);

// Largest exponent beta with (1 - x^2)^beta in the cone: ln(gamma) / ln(1 - a^2), capped at 3.
double max_profile_exponent(const ConeSpec& spec);

// Deterministic cone members with sup norm rho: convex mixtures of the
// profiles (1 - x^2)^beta, beta uniform in [alpha/2, max_profile_exponent].
std::vector<GridFunction> sample_cone(double rho, std::size_t count, std::uint64_t seed,
                                      const GridPtr& grid, const ConeSpec& spec, double alpha);

struct InvarianceViolation {
    std::size_t sample;
    ConeDiagnostics diag;
};

struct InvarianceReport {
    std::size_t count = 0;
    std::vector<InvarianceViolation> violations;
    double worst_negative = 0.0;
    double worst_asymmetry = 0.0;
    double worst_monotonicity = 0.0;
    double worst_ratio_shortfall = 0.0;

    bool passed() const { return violations.empty(); }
};

// x -> max(x, 0)^p elementwise
GridFunction positive_power(const GridFunction& u, double p);

// Checks B(u) = G(u^p) against `spec` for `count` sampled members u. Samples
// are drawn from `sample_spec` when given (negative controls check a stricter
// cone than the one sampled from).
InvarianceReport verify_invariance(const GreenOperator& op, double p, const ConeSpec& spec,
                                   std::size_t count, std::uint64_t seed = 1,
                                   const std::optional<ConeSpec>& sample_spec = std::nullopt);

}  // namespace fraclab
