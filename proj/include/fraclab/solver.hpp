#pragma once

// Two-solution solver for u = G(u^p) + G h on (-1, 1): the smallness
// certificate, Picard iteration from zero for the minimal solution, deflated
// Newton for the second one, cone sphere probes, the strong (pointwise PDE)
// residual and a fold sweep in the forcing amplitude.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "fraclab/cone.hpp"
#include "fraclab/frackernel.hpp"
#include "fraclab/greenop.hpp"
#include "fraclab/scalar_model.hpp"

namespace fraclab {

struct SolverOptions {
    double fixed_tol = 1e-9;   // Picard sup-norm step; bound on accepted fixed-point residuals
    double newton_tol = 1e-10; // Newton sup-norm step
    int max_picard = 20000;
    int max_newton = 80;
    double deflation_power = 2.0;
    double deflation_shift = 1.0;
};

// The fixed-point map T(u) = G(max(u,0)^p) + u0 with u0 = G h.
class FixedPointProblem {
  public:
    FixedPointProblem(const GreenOperator& op, GridFunction h, double p);

    const GreenOperator& op() const { return *op_; }
    const GridFunction& h() const { return h_; }
    const GridFunction& u0() const { return u0_; }
    double p() const { return p_; }

    GridFunction apply_T(const GridFunction& u) const;
    // F(u) = u - T(u)
    GridFunction residual(const GridFunction& u) const;
    // F'(u) v = v - G(p max(u,0)^(p-1) v)
    GridFunction jacobian_action(const GridFunction& u, const GridFunction& v) const;

  private:
    const GreenOperator* op_;
    GridFunction h_;
    GridFunction u0_;
    double p_;
};

struct CertificateReport {
    double b = 0.0;
    double a_coerc = 0.0;
    double c_p = 0.0;
    double u0_sup = 0.0;
    double lhs = 0.0;     // b u0_sup^(p-1)
    double margin = 0.0;  // c_p - lhs
    double gamma = 0.0;
    double a_half = 0.0;
    CertificateStatus status = CertificateStatus::degenerate_zero;
    std::optional<Radii> radii;
    // Upper bound on the norm of any solution in the cone (expansion root), 0 if u0 = 0.
    double solution_bound = 0.0;

    bool pass() const { return status == CertificateStatus::pass; }
};

// Throws HypothesisError unless h is nonnegative, symmetric and unimodal.
CertificateReport certify(const FixedPointProblem& prob, const ConeSpec& spec);

enum class Branch { minimal, second };
enum class SolveStatus { converged, max_iterations, diverged, collapsed, singular };

std::string_view to_string(Branch b);
std::string_view to_string(SolveStatus s);

struct SolveResult {
    explicit SolveResult(GridFunction v) : u(std::move(v)) {}

    GridFunction u;
    double fixed_point_residual = std::numeric_limits<double>::quiet_NaN();
    double strong_residual = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    Branch branch = Branch::minimal;
    SolveStatus status = SolveStatus::max_iterations;
    bool in_cone = false;
    std::vector<double> trace;          // sup-norm step per iteration
    double monotonicity_violation = 0;  // Picard: worst decrease between iterates
    double distance_to_known = 0;       // second branch: sup distance to the minimal solution
    double start_sup = 0;               // second branch: sup norm of the accepted initial guess

    bool converged() const { return status == SolveStatus::converged; }
};

// Picard iteration u <- T(u) from u = 0. Stops when the sup step drops below
// opts.fixed_tol, or flags divergence once the iterate exceeds
// divergence_bound (use rho2 when certified).
SolveResult picard_minimal(const FixedPointProblem& prob, const SolverOptions& opts,
                           double divergence_bound);

// Newton on F(u) = 0 deflated at `known`. The initial guess is `start` when
// given, otherwise `known` rescaled to sup norm start_sup.
SolveResult newton_second(const FixedPointProblem& prob, const SolveResult& known,
                          const SolverOptions& opts, double start_sup,
                          const std::optional<GridFunction>& start = std::nullopt);

// Fills result.in_cone.
void classify_cone(SolveResult& result, const ConeSpec& spec);

struct ProbeExtremes {
    double min_T;
    double max_T;
};

// sup norms of T(u) over `count` cone samples of sup norm rho
ProbeExtremes krasnoselskii_probe(const FixedPointProblem& prob, double rho, const ConeSpec& spec,
                                  std::size_t count, std::uint64_t seed = 7);

inline constexpr double strong_probe_points[] = {-0.5, -0.25, 0.0, 0.25, 0.5};

// max over the probe points of |(-Delta)^(alpha/2) u - u^p - h|; stored into result.
double residual_strong(SolveResult& result, const FixedPointProblem& prob, const PVConfig& cfg = {});

// Both branches for one instance.
struct PairSolve {
    CertificateReport cert;
    SolveResult minimal;
    std::optional<SolveResult> second;
    bool degenerate = false;  // u0 = 0: u = 0 is the solution, no second branch sought

    bool both() const;
    double separation() const;  // sup distance between branches, 0 without a second
};

PairSolve solve_pair(const FixedPointProblem& prob, const ConeSpec& spec, const SolverOptions& opts,
                     const std::optional<GridFunction>& warm_second = std::nullopt);

// --- fold sweep -----------------------------------------------------------

struct SweepPoint {
    double lambda = 0.0;
    bool certified = false;
    bool minimal_ok = false;
    bool second_ok = false;
    double minimal_sup = std::numeric_limits<double>::quiet_NaN();
    double second_sup = std::numeric_limits<double>::quiet_NaN();
    int picard_iterations = 0;
    int newton_iterations = 0;

    bool both() const { return minimal_ok && second_ok; }
};

// A one-parameter family of problems with forcing lambda * h_base.
class BranchFamily {
  public:
    virtual ~BranchFamily() = default;
    virtual SweepPoint solve(double lambda) = 0;
    // Largest lambda passing the smallness certificate.
    virtual double lambda_cert() const = 0;
};

// Interval problem. Keeps the most recent second-branch solution as a warm start.
class GridBranchFamily : public BranchFamily {
  public:
    GridBranchFamily(const GreenOperator& op, GridFunction h_base, double p, ConeSpec spec,
                     SolverOptions opts = {});
    SweepPoint solve(double lambda) override;
    double lambda_cert() const override;

  private:
    const GreenOperator* op_;
    GridFunction h_base_;
    double p_;
    ConeSpec spec_;
    SolverOptions opts_;
    std::optional<GridFunction> warm_;
    double warm_lambda_ = 0.0;
};

// The real-line model u = b u^p + lambda u0 run through the same sweep.
class ScalarBranchFamily : public BranchFamily {
  public:
    ScalarBranchFamily(double b, double u0, double p, long max_picard = 10'000'000);
    SweepPoint solve(double lambda) override;
    double lambda_cert() const override;
    // Closed-form fold: b (lambda u0)^(p-1) = c_p.
    double closed_form_fold() const { return lambda_cert(); }

  private:
    double b_, u0_, p_;
    long max_picard_;
};

struct SweepRecord {
    std::vector<SweepPoint> points;      // the uniform lambda grid
    std::vector<SweepPoint> refinement;  // bisection evaluations
    double lambda_cert = 0.0;
    double fold_lower = 0.0;  // largest lambda with both branches found
    double fold_upper = 0.0;  // smallest lambda above it without
    double fold_estimate = 0.0;
    bool bracketed = false;

    // fold_estimate >= lambda_cert up to the bisection width
    bool sufficiency_ok(double rel_width) const {
        return fold_estimate >= lambda_cert * (1.0 - rel_width);
    }
};

// Throws DomainError unless 0 < lambda_lo < lambda_hi and steps >= 2.
SweepRecord fold_sweep(BranchFamily& family, double lambda_lo, double lambda_hi, int steps,
                       double rel_width = 1e-4);

}  // namespace fraclab
