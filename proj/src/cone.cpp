#include "fraclab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fraclab/errors.hpp"

namespace fraclab {
namespace {

// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double unit_draw(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void ConeSpec::validate() const {
    if (!(a_half > 0.0 && a_half < 1.0)) throw DomainError("ConeSpec: a_half must lie in (0, 1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("ConeSpec: gamma must lie in (0, 1]");
    if (!(tol >= 0.0)) throw DomainError("ConeSpec: tol must be nonnegative");
}

ConeDiagnostics check_membership(const GridFunction& u, const ConeSpec& spec) {
    spec.validate();
    const Grid& grid = *u.grid();
    if (!grid.is_symmetric()) throw DomainError("check_membership: grid is not symmetric");
    const auto v = u.values();
    const std::size_t n = v.size();
    const std::size_t c = grid.center();
    ConeDiagnostics d;
    d.kind = spec.kind;
    d.sup = u.sup_norm();
    const double slack = spec.tol * d.sup;

    double vmax = v[0];
    for (double e : v) vmax = std::max(vmax, e);
    for (double e : v) d.worst_negative = std::max(d.worst_negative, -e);
    for (std::size_t j = 0; j < n; ++j)
        d.worst_asymmetry = std::max(d.worst_asymmetry, std::fabs(v[j] - v[n - 1 - j]));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double step = v[j + 1] - v[j];
        // nondecreasing up to the center, nonincreasing after
        const double bad = j < c ? -step : step;
        d.worst_monotonicity = std::max(d.worst_monotonicity, bad);
    }
    double inf_u = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
        if (std::fabs(grid.node(j)) < spec.a_half) inf_u = std::min(inf_u, v[j]);
    d.inf_on_U = inf_u;
    d.ratio_shortfall = std::max(0.0, spec.gamma * vmax - inf_u);

    d.nonneg = d.worst_negative <= slack;
    d.symmetric = d.worst_asymmetry <= slack;
    d.unimodal = d.worst_monotonicity <= slack;
    d.ratio_ok = d.ratio_shortfall <= slack;
    return d;
}

double max_profile_exponent(const ConeSpec& spec) {
    spec.validate();
    if (spec.gamma >= 1.0) return 0.0;
    return std::min(3.0, std::log(spec.gamma) / std::log(1.0 - spec.a_half * spec.a_half));
}

std::vector<GridFunction> sample_cone(double rho, std::size_t count, std::uint64_t seed,
                                      const GridPtr& grid, const ConeSpec& spec, double alpha) {
    if (!(rho > 0.0)) throw DomainError("sample_cone: rho must be positive");
    const double lo = alpha / 2.0;
    const double hi = max_profile_exponent(spec);
    if (hi < lo)
        throw DomainError("sample_cone: gamma too large, no profile (1-x^2)^beta with beta >= alpha/2 is a member");
    std::mt19937_64 rng(seed);
    std::vector<GridFunction> out;
    out.reserve(count);
    const std::size_t n = grid->size();
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t parts = 1 + std::size_t(unit_draw(rng) * 3.0);
        std::vector<double> v(n, 0.0);
        for (std::size_t k = 0; k < parts; ++k) {
            const double beta = lo + (hi - lo) * unit_draw(rng);
            const double weight = 0.05 + unit_draw(rng);
            for (std::size_t j = 0; j < n; ++j) {
                const double x = grid->node(j);
                v[j] += weight * std::pow(std::max(0.0, 1.0 - x * x), beta);
            }
        }
        // every profile peaks at x = 0 with value 1
        const double peak = v[grid->center()];
        for (double& e : v) e *= rho / peak;
        out.emplace_back(grid, std::move(v));
    }
    return out;
}

GridFunction positive_power(const GridFunction& u, double p) {
    std::vector<double> v(u.values().begin(), u.values().end());
    for (double& e : v) e = e > 0.0 ? std::pow(e, p) : 0.0;
    return GridFunction(u.grid(), std::move(v));
}

InvarianceReport verify_invariance(const GreenOperator& op, double p, const ConeSpec& spec,
                                   std::size_t count, std::uint64_t seed,
                                   const std::optional<ConeSpec>& sample_spec) {
    if (!(p > 1.0)) throw DomainError("verify_invariance: p must exceed 1");
    const auto samples =
        sample_cone(1.0, count, seed, op.grid(), sample_spec.value_or(spec), op.params().alpha);
    InvarianceReport rep;
    rep.count = count;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const GridFunction image = op.apply(positive_power(samples[s], p));
        const ConeDiagnostics d = check_membership(image, spec);
        const double scale = d.sup > 0.0 ? d.sup : 1.0;
        rep.worst_negative = std::max(rep.worst_negative, d.worst_negative / scale);
        rep.worst_asymmetry = std::max(rep.worst_asymmetry, d.worst_asymmetry / scale);
        rep.worst_monotonicity = std::max(rep.worst_monotonicity, d.worst_monotonicity / scale);
        rep.worst_ratio_shortfall = std::max(rep.worst_ratio_shortfall, d.ratio_shortfall / scale);
        if (!d.member()) rep.violations.push_back({s, d});
    }
    return rep;
}

}  // namespace fraclab
