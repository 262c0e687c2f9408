#include "fraclab/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fraclab/errors.hpp"
#include "fraclab/simd.hpp"

namespace fraclab {
namespace {

double sup_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j] - b[j]));
    return m;
}

double norm2(std::span<const double> v) { return std::sqrt(simd::dot(v, v)); }

}  // namespace

FixedPointProblem::FixedPointProblem(const GreenOperator& op, GridFunction h, double p)
    : op_(&op), h_(std::move(h)), u0_(GridFunction::zeros(op.grid())), p_(p) {
    if (!(p > 1.0)) throw DomainError("FixedPointProblem: p must exceed 1");
    if (h_.size() != op.size()) throw DomainError("FixedPointProblem: forcing lives on another grid");
    u0_ = op.apply(h_);
}

GridFunction FixedPointProblem::apply_T(const GridFunction& u) const {
    GridFunction image = op_->apply(positive_power(u, p_));
    std::vector<double> v(image.values().begin(), image.values().end());
    simd::axpy(1.0, u0_.values(), v);
    return GridFunction(op_->grid(), std::move(v));
}

GridFunction FixedPointProblem::residual(const GridFunction& u) const {
    const GridFunction t = apply_T(u);
    std::vector<double> v(u.values().begin(), u.values().end());
    simd::axpy(-1.0, t.values(), v);
    return GridFunction(op_->grid(), std::move(v));
}

GridFunction FixedPointProblem::jacobian_action(const GridFunction& u, const GridFunction& v) const {
    std::vector<double> w(u.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = u[j] > 0.0 ? p_ * std::pow(u[j], p_ - 1.0) * v[j] : 0.0;
    std::vector<double> gw(u.size());
    op_->apply(w, gw);
    std::vector<double> out(v.values().begin(), v.values().end());
    simd::axpy(-1.0, gw, out);
    return GridFunction(op_->grid(), std::move(out));
}

CertificateReport certify(const FixedPointProblem& prob, const ConeSpec& spec) {
    const ConeDiagnostics hd = check_membership(prob.h(), spec);
    if (!hd.shape_ok())
        throw HypothesisError("certify: forcing must be nonnegative, symmetric and unimodal");
    const double p = prob.p();
    CertificateReport r;
    r.b = operator_norm_b(prob.op(), p);
    r.a_coerc = coercivity_a(spec.a_half, p, spec.gamma, prob.op().kernel());
    r.gamma = spec.gamma;
    r.a_half = spec.a_half;
    r.u0_sup = prob.u0().sup_norm();
    const RadiiOutcome out = radii_certificate(r.a_coerc, r.b, r.u0_sup, p);
    r.c_p = out.c_p;
    r.lhs = out.lhs;
    r.margin = out.c_p - out.lhs;
    r.status = out.status;
    r.radii = out.radii;
    r.solution_bound = r.u0_sup > 0.0 ? expansion_root(r.a_coerc, r.u0_sup, p) : 0.0;
    return r;
}

std::string_view to_string(Branch b) { return b == Branch::minimal ? "minimal" : "second"; }

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::diverged: return "diverged";
        case SolveStatus::collapsed: return "collapsed";
        case SolveStatus::singular: return "singular";
    }
    return "unknown";
}

SolveResult picard_minimal(const FixedPointProblem& prob, const SolverOptions& opts,
                           double divergence_bound) {
    SolveResult res{GridFunction::zeros(prob.op().grid())};
    res.branch = Branch::minimal;
    GridFunction u = res.u;
    for (int it = 1; it <= opts.max_picard; ++it) {
        GridFunction next = prob.apply_T(u);
        double step = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double d = next[j] - u[j];
            step = std::max(step, std::fabs(d));
            res.monotonicity_violation = std::max(res.monotonicity_violation, -d);
        }
        res.trace.push_back(step);
        res.iterations = it;
        u = std::move(next);
        if (u.sup_norm() > divergence_bound || !std::isfinite(u.sup_norm())) {
            res.status = SolveStatus::diverged;
            break;
        }
        if (step < opts.fixed_tol) {
            res.status = SolveStatus::converged;
            break;
        }
    }
    res.u = u;
    res.fixed_point_residual = prob.residual(u).sup_norm();
    return res;
}

SolveResult newton_second(const FixedPointProblem& prob, const SolveResult& known,
                          const SolverOptions& opts, double start_sup,
                          const std::optional<GridFunction>& start) {
    const std::size_t n = prob.op().size();
    const double p = prob.p();
    GridFunction u = start ? *start
                           : (known.u.sup_norm() > 0.0 ? known.u.scaled(start_sup / known.u.sup_norm())
                                                       : GridFunction::zeros(prob.op().grid()));
    SolveResult res{u};
    res.branch = Branch::second;
    res.start_sup = u.sup_norm();

    auto deflation = [&](const GridFunction& v, std::vector<double>* grad) {
        std::vector<double> e(n);
        for (std::size_t j = 0; j < n; ++j) e[j] = v[j] - known.u[j];
        const double r = norm2(e);
        if (r == 0.0) return std::numeric_limits<double>::infinity();
        const double q = opts.deflation_power;
        if (grad) {
            grad->assign(n, 0.0);
            const double c = -q * std::pow(r, -q - 2.0);
            for (std::size_t j = 0; j < n; ++j) (*grad)[j] = c * e[j];
        }
        return std::pow(r, -q) + opts.deflation_shift;
    };
    auto merit = [&](const GridFunction& v) {
        const double m = deflation(v, nullptr);
        return m * norm2(prob.residual(v).values());
    };

    const auto& A = prob.op().matrix();
    double divergence_cap = 1e3 * std::max(start_sup, 1.0);
    for (int it = 1; it <= opts.max_newton; ++it) {
        res.iterations = it;
        const GridFunction F = prob.residual(u);
        Eigen::MatrixXd J(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double dj = u[j] > 0.0 ? p * std::pow(u[j], p - 1.0) : 0.0;
                J(Eigen::Index(i), Eigen::Index(j)) = (i == j ? 1.0 : 0.0) - A[i * n + j] * dj;
            }
        Eigen::VectorXd rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[Eigen::Index(j)] = -F[j];
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        const Eigen::VectorXd delta = lu.solve(rhs);
        if (!delta.allFinite()) {
            res.status = SolveStatus::singular;
            break;
        }
        std::vector<double> grad;
        const double m = deflation(u, &grad);
        double gd = 0.0;
        for (std::size_t j = 0; j < n; ++j) gd += grad[j] * delta[Eigen::Index(j)];
        double tau = 1.0;
        const double denom = 1.0 - gd / m;
        if (std::isfinite(m) && std::fabs(denom) > 1e-12) tau = 1.0 / denom;

        const double m0 = merit(u);
        double lam = 1.0;
        GridFunction trial = u;
        for (int ls = 0; ls < 30; ++ls) {
            std::vector<double> v(u.values().begin(), u.values().end());
            for (std::size_t j = 0; j < n; ++j) v[j] += lam * tau * delta[Eigen::Index(j)];
            trial = GridFunction(u.grid(), std::move(v));
            if (merit(trial) < m0 * (1.0 - 1e-4 * lam)) break;
            lam *= 0.5;
        }
        const double step = sup_diff(trial, u);
        res.trace.push_back(step);
        u = std::move(trial);
        if (!std::isfinite(u.sup_norm()) || u.sup_norm() > divergence_cap) {
            res.status = SolveStatus::diverged;
            break;
        }
        if (step < opts.newton_tol) {
            res.status = SolveStatus::converged;
            break;
        }
    }
    res.u = u;
    res.fixed_point_residual = prob.residual(u).sup_norm();
    res.distance_to_known = sup_diff(u, known.u);
    if (res.status == SolveStatus::converged) {
        if (res.fixed_point_residual > opts.fixed_tol)
            res.status = SolveStatus::max_iterations;
        else if (res.distance_to_known <= 10.0 * opts.fixed_tol)
            res.status = SolveStatus::collapsed;
    }
    return res;
}

void classify_cone(SolveResult& result, const ConeSpec& spec) {
    result.in_cone = check_membership(result.u, spec).member();
}

ProbeExtremes krasnoselskii_probe(const FixedPointProblem& prob, double rho, const ConeSpec& spec,
                                  std::size_t count, std::uint64_t seed) {
    const auto samples = sample_cone(rho, count, seed, prob.op().grid(), spec, prob.op().params().alpha);
    ProbeExtremes ex{std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& u : samples) {
        const double t = prob.apply_T(u).sup_norm();
        ex.min_T = std::min(ex.min_T, t);
        ex.max_T = std::max(ex.max_T, t);
    }
    return ex;
}

double residual_strong(SolveResult& result, const FixedPointProblem& prob, const PVConfig& cfg) {
    const KernelParams& kp = prob.op().params();
    double worst = 0.0;
    for (double x : strong_probe_points) {
        const double lap = frac_laplacian_pv(result.u, x, kp, cfg);
        const double ux = std::max(0.0, result.u.interpolate_local(x, cfg.order));
        const double hx = prob.h().interpolate_local(x, cfg.order);
        worst = std::max(worst, std::fabs(lap - std::pow(ux, prob.p()) - hx));
    }
    result.strong_residual = worst;
    return worst;
}

bool PairSolve::both() const {
    return minimal.converged() && second && second->converged();
}

double PairSolve::separation() const {
    return second ? second->distance_to_known : 0.0;
}

PairSolve solve_pair(const FixedPointProblem& prob, const ConeSpec& spec, const SolverOptions& opts,
                     const std::optional<GridFunction>& warm_second) {
    PairSolve out{certify(prob, spec), SolveResult{GridFunction::zeros(prob.op().grid())}, std::nullopt};
    const CertificateReport& cert = out.cert;
    if (cert.status == CertificateStatus::degenerate_zero) {
        out.degenerate = true;
        out.minimal = picard_minimal(prob, opts, 1.0);
        classify_cone(out.minimal, spec);
        return out;
    }
    // minimal solution norm is below rho2 when certified; below the expansion root always
    const double bound = cert.radii ? cert.radii->rho2 : 2.0 * cert.solution_bound;
    out.minimal = picard_minimal(prob, opts, bound);
    classify_cone(out.minimal, spec);
    if (!out.minimal.converged()) return out;

    const double rho2_formula = std::pow(cert.u0_sup / (cert.b * (prob.p() - 1.0)), 1.0 / prob.p());
    const double start_sup = cert.radii ? cert.radii->rho3 / 2.0 : std::max(rho2_formula, cert.solution_bound);
    if (warm_second) {
        SolveResult s = newton_second(prob, out.minimal, opts, start_sup, warm_second);
        if (s.converged()) {
            classify_cone(s, spec);
            out.second = std::move(s);
            return out;
        }
    }
    SolveResult s = newton_second(prob, out.minimal, opts, start_sup);
    if (!s.converged()) {
        // fallback: geometric ladder of start norms across (lo, hi), nearest the annulus floor first
        const double lo = cert.radii ? cert.radii->rho2 : rho2_formula;
        const double hi = cert.radii ? cert.radii->rho3 : 4.0 * start_sup;
        constexpr int rungs = 8;
        for (int k = 1; k < rungs && !s.converged(); ++k) {
            const double sup = lo * std::pow(hi / lo, double(k) / rungs);
            SolveResult t = newton_second(prob, out.minimal, opts, sup);
            t.iterations += s.iterations;
            s = std::move(t);
        }
    }
    classify_cone(s, spec);
    out.second = std::move(s);
    return out;
}

GridBranchFamily::GridBranchFamily(const GreenOperator& op, GridFunction h_base, double p,
                                   ConeSpec spec, SolverOptions opts)
    : op_(&op), h_base_(std::move(h_base)), p_(p), spec_(spec), opts_(opts) {}

double GridBranchFamily::lambda_cert() const {
    const FixedPointProblem base(*op_, h_base_, p_);
    const double u0 = base.u0().sup_norm();
    if (u0 == 0.0) return std::numeric_limits<double>::infinity();
    const double b = operator_norm_b(*op_, p_);
    return std::pow(critical_constant(p_) / b, 1.0 / (p_ - 1.0)) / u0;
}

SweepPoint GridBranchFamily::solve(double lambda) {
    const FixedPointProblem prob(*op_, h_base_.scaled(lambda), p_);
    std::optional<GridFunction> warm;
    if (warm_) warm = warm_->scaled(1.0);
    const PairSolve pair = solve_pair(prob, spec_, opts_, warm);
    SweepPoint pt;
    pt.lambda = lambda;
    pt.certified = pair.cert.pass();
    pt.minimal_ok = pair.minimal.converged();
    pt.picard_iterations = pair.minimal.iterations;
    if (pt.minimal_ok) pt.minimal_sup = pair.minimal.u.sup_norm();
    if (pair.second) {
        pt.newton_iterations = pair.second->iterations;
        pt.second_ok = pair.second->converged();
        if (pt.second_ok) {
            pt.second_sup = pair.second->u.sup_norm();
            warm_ = pair.second->u;
            warm_lambda_ = lambda;
        }
    }
    return pt;
}

ScalarBranchFamily::ScalarBranchFamily(double b, double u0, double p, long max_picard)
    : b_(b), u0_(u0), p_(p), max_picard_(max_picard) {
    ScalarProblem{b, u0, p}.validate();
    if (!(u0 > 0.0)) throw DomainError("ScalarBranchFamily: u0 must be positive");
}

double ScalarBranchFamily::lambda_cert() const {
    return std::pow(critical_constant(p_) / b_, 1.0 / (p_ - 1.0)) / u0_;
}

SweepPoint ScalarBranchFamily::solve(double lambda) {
    SweepPoint pt;
    pt.lambda = lambda;
    const double c = lambda * u0_;
    pt.certified = b_ * std::pow(c, p_ - 1.0) < critical_constant(p_);
    // the minimal root lies left of the minimizer of b u^(p-1) + c/u
    const double ustar = std::pow(c / (b_ * (p_ - 1.0)), 1.0 / p_);
    double u = 0.0;
    long it = 0;
    for (; it < max_picard_; ++it) {
        const double next = b_ * std::pow(u, p_) + c;
        const double step = next - u;
        u = next;
        if (u > ustar) break;
        if (step <= 1e-15 * u) {  // includes the stall at the rounding level
            pt.minimal_ok = true;
            break;
        }
    }
    pt.picard_iterations = int(std::min<long>(it + 1, std::numeric_limits<int>::max()));
    if (!pt.minimal_ok) return pt;
    pt.minimal_sup = u;
    // Newton from the right of the larger root decreases monotonically onto it
    double v = std::max(4.0 * ustar, std::pow(2.0 / b_, 1.0 / (p_ - 1.0)));
    for (int k = 0; k < 200; ++k) {
        const double g = b_ * std::pow(v, p_) + c - v;
        const double dg = p_ * b_ * std::pow(v, p_ - 1.0) - 1.0;
        const double next = v - g / dg;
        pt.newton_iterations = k + 1;
        if (!(dg > 0.0) || !std::isfinite(next)) break;
        // iterates decrease monotonically until rounding takes over
        if (!(next < v) || v - next <= 1e-15 * v) {
            v = std::min(v, next);
            pt.second_ok = v - u > 1e-12 * v;
            break;
        }
        v = next;
    }
    if (pt.second_ok) pt.second_sup = v;
    return pt;
}

SweepRecord fold_sweep(BranchFamily& family, double lambda_lo, double lambda_hi, int steps,
                       double rel_width) {
    if (!(lambda_lo > 0.0) || !(lambda_hi > lambda_lo) || steps < 2)
        throw DomainError("fold_sweep: need 0 < lambda_lo < lambda_hi and steps >= 2");
    if (!(rel_width > 0.0)) throw DomainError("fold_sweep: rel_width must be positive");
    SweepRecord rec;
    rec.lambda_cert = family.lambda_cert();
    std::optional<std::size_t> first_fail;
    for (int k = 0; k < steps; ++k) {
        const double lam = lambda_lo + (lambda_hi - lambda_lo) * double(k) / double(steps - 1);
        rec.points.push_back(family.solve(lam));
        if (!first_fail && !rec.points.back().both()) first_fail = rec.points.size() - 1;
    }
    if (!first_fail) {
        rec.fold_lower = rec.fold_upper = rec.fold_estimate = lambda_hi;
        return rec;
    }
    if (*first_fail == 0) {
        rec.fold_lower = 0.0;
        rec.fold_upper = rec.fold_estimate = lambda_lo;
        return rec;
    }
    double lo = rec.points[*first_fail - 1].lambda;
    double hi = rec.points[*first_fail].lambda;
    // re-solve at lo so any warm start comes from just below the bracket
    family.solve(lo);
    while (hi - lo > rel_width * hi) {
        const double mid = 0.5 * (lo + hi);
        const SweepPoint pt = family.solve(mid);
        rec.refinement.push_back(pt);
        if (pt.both())
            lo = mid;
        else
            hi = mid;
    }
    rec.bracketed = true;
    rec.fold_lower = lo;
    rec.fold_upper = hi;
    rec.fold_estimate = 0.5 * (lo + hi);
    return rec;
}

}  // namespace fraclab
