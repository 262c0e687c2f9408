#include "fraclab/scalar_model.hpp"

#include <cmath>
#include <functional>

#include "fraclab/errors.hpp"

namespace fraclab {
namespace {

// Bisection to absolute width tol_w, f(lo) and f(hi) of opposite sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double width = 1e-14) {
    double flo = f(lo);
    for (int it = 0; it < 2000 && hi - lo > width * std::fmax(1.0, std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Newton polish on g(u) = b u^p + u0 - u, kept inside [lo, hi].
double polish(const ScalarProblem& q, double u, double lo, double hi) {
    for (int it = 0; it < 8; ++it) {
        const double g = q.b * std::pow(u, q.p) + q.u0 - u;
        const double dg = q.p * q.b * std::pow(u, q.p - 1.0) - 1.0;
        if (dg == 0.0) break;
        const double next = u - g / dg;
        if (!(next >= lo && next <= hi) || next == u) break;
        u = next;
    }
    return u;
}

}  // namespace

void ScalarProblem::validate() const {
    if (!(b > 0.0)) throw DomainError("ScalarProblem: b must be positive");
    if (!(u0 >= 0.0)) throw DomainError("ScalarProblem: u0 must be nonnegative");
    if (!(p > 1.0)) throw DomainError("ScalarProblem: p must exceed 1");
}

double critical_constant(double p) {
    if (!(p > 1.0)) throw DomainError("critical_constant: p must exceed 1");
    if (p == 2.0) return 0.25;
    const double q = p - 1.0;
    return std::pow(std::pow(q, (1.0 - p) / p) + std::pow(q, 1.0 / p), -p);
}

std::vector<double> scalar_roots(const ScalarProblem& prob) {
    prob.validate();
    const double b = prob.b, u0 = prob.u0, p = prob.p;
    if (u0 == 0.0) return {0.0, std::pow(b, -1.0 / (p - 1.0))};

    const double lhs = b * std::pow(u0, p - 1.0);
    const double cp = critical_constant(p);
    // Minimizer of b u^(p-1) + u0/u; roots of g are where that function is 1.
    const double ustar = std::pow(u0 / (b * (p - 1.0)), 1.0 / p);
    if (std::fabs(lhs - cp) <= threshold_band) return {ustar};
    if (lhs > cp) return {};

    auto phi = [&](double u) { return b * std::pow(u, p - 1.0) + u0 / u - 1.0; };
    // left root in (0, u*): phi(0+) = +inf, phi(u*) < 0; u0 is a valid left end
    double lo = u0;
    while (phi(lo) <= 0.0) lo *= 0.5;
    double r1 = bisect(phi, lo, ustar);
    double hi = 2.0 * ustar;
    while (phi(hi) <= 0.0) hi *= 2.0;
    double r2 = bisect(phi, ustar, hi);
    r1 = polish(prob, r1, lo, ustar);
    r2 = polish(prob, r2, ustar, hi);
    return {r1, r2};
}

std::string_view to_string(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::pass: return "pass";
        case CertificateStatus::threshold_violated: return "threshold_violated";
        case CertificateStatus::at_threshold: return "at_threshold";
        case CertificateStatus::degenerate_zero: return "degenerate_zero";
    }
    return "unknown";
}

RadiiOutcome radii_certificate(double a_coef, double b_coef, double u0_norm, double p) {
    if (!(a_coef > 0.0) || !(b_coef >= a_coef))
        throw DomainError("radii_certificate: need 0 < a <= b");
    if (!(u0_norm >= 0.0)) throw DomainError("radii_certificate: |u0| must be nonnegative");
    if (!(p > 1.0)) throw DomainError("radii_certificate: p must exceed 1");

    RadiiOutcome out{};
    out.c_p = critical_constant(p);
    out.lhs = b_coef * std::pow(u0_norm, p - 1.0);
    if (u0_norm == 0.0) {
        out.status = CertificateStatus::degenerate_zero;
        return out;
    }
    if (std::fabs(out.lhs - out.c_p) <= threshold_band) {
        out.status = CertificateStatus::at_threshold;
        return out;
    }
    if (out.lhs > out.c_p) {
        out.status = CertificateStatus::threshold_violated;
        return out;
    }

    const double rho2 = std::pow(u0_norm / (b_coef * (p - 1.0)), 1.0 / p);
    // b r^p + r - u0 is increasing with a sign change on (0, u0)
    const double small_root =
        bisect([&](double r) { return b_coef * std::pow(r, p) + r - u0_norm; }, 0.0, u0_norm);
    const double rho1 = 0.5 * small_root;
    const double big_root = expansion_root(a_coef, u0_norm, p);
    const double rho3 = std::fmax(2.0 * rho2, 2.0 * big_root);

    const double t1 = b_coef * std::pow(rho1, p) + rho1;
    const double t2 = u0_norm + b_coef * std::pow(rho2, p);
    const double t3 = a_coef * std::pow(rho3, p) - rho3;
    const bool ok = rho1 > 0.0 && rho1 < rho2 && rho2 < rho3 &&
                    u0_norm - t1 >= radii_margin * u0_norm &&
                    rho2 - t2 >= radii_margin * rho2 &&
                    t3 - u0_norm >= radii_margin * (a_coef * std::pow(rho3, p));
    if (!ok) {
        // margins below resolution: treat as the tangency case
        out.status = CertificateStatus::at_threshold;
        return out;
    }
    out.status = CertificateStatus::pass;
    out.radii = Radii{rho1, rho2, rho3};
    return out;
}

double expansion_root(double a_coef, double u0_norm, double p) {
    if (!(a_coef > 0.0) || !(u0_norm >= 0.0) || !(p > 1.0))
        throw DomainError("expansion_root: need a > 0, u0 >= 0, p > 1");
    // a r^p - r - u0 is negative on (0, r*] and increases past it
    auto expand = [&](double r) { return a_coef * std::pow(r, p) - r - u0_norm; };
    double hi = std::fmax(1.0, u0_norm);
    while (expand(hi) <= 0.0) hi *= 2.0;
    return bisect(expand, 0.0, hi);
}

}  // namespace fraclab
