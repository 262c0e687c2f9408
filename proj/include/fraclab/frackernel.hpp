#pragma once

// Explicit kernels of the fractional Laplacian on balls: the normalization
// constant of the singular integral, the Green function and the Poisson
// kernel, plus a principal-value evaluator of (-Delta)^(alpha/2) for grid
// functions on (-1, 1).

#include <span>

#include "fraclab/grid.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

struct KernelParams {
    int d = 1;
    double alpha = 1.5;

    // d >= 1, alpha in (0, 2).
    void validate() const;
    // Additionally d == 1 and alpha in [1.05, 1.95].
    void validate_solver() const;
};

inline constexpr double solver_alpha_min = 1.05;
inline constexpr double solver_alpha_max = 1.95;

// c_{d,gamma} = Gamma((d - gamma)/2) / (2^gamma pi^(d/2) |Gamma(gamma/2)|).
double norm_const(int d, double gamma);

// c^d_alpha = Gamma(d/2) / (2^alpha pi^(d/2) Gamma(alpha/2)^2), Green prefactor.
double green_const(const KernelParams& kp);

// C^d_alpha = Gamma(d/2) pi^(-d/2 - 1) sin(pi alpha / 2), Poisson prefactor.
double poisson_const(const KernelParams& kp);

struct WFactor {
    double value;   // +inf when diagonal
    bool diagonal;  // x == y
};

// w(x, y) = (1 - |x|^2)(1 - |y|^2) / |x - y|^2; points given as coordinate spans.
WFactor w_factor(std::span<const double> x, std::span<const double> y);
WFactor w_factor(double x, double y);

// Green function of the unit ball. Holds the Gauss-Jacobi rules for the inner
// integral of r^(alpha/2-1) (1+r)^(-d/2) so repeated evaluation is cheap.
class GreenKernel {
  public:
    explicit GreenKernel(const KernelParams& kp);

    const KernelParams& params() const { return kp_; }

    // d = 1 evaluation; bitwise symmetric in (x, y); 0 unless both points are
    // in (-1, 1). Finite on the diagonal for alpha > 1, +inf for alpha <= 1.
    double operator()(double x, double y) const;
    // General d. Points of dimension kp.d.
    double ball(std::span<const double> x, std::span<const double> y) const;
    // Green function of the interval (center - radius, center + radius), d = 1.
    double interval(double x, double y, double center, double radius) const;

    // Inner integral of r^(alpha/2 - 1) (1 + r)^(-d/2) over [0, w].
    double inner_integral(double w) const;

  private:
    // G from |x - y| and the product (1 - |x|^2)(1 - |y|^2)
    double from_distance(double dist, double prod) const;

    KernelParams kp_;
    double half_alpha_;
    double prefactor_;
    QuadratureRule head_;   // weight t^(a-1) on [0,1]
    QuadratureRule tail_;   // d = 1, alpha > 1: weight t^(1/2 - a)
    double head_at_one_ = 0.0;
    double tail_at_zero_ = 0.0;
    double beta_total_ = 0.0;  // B(a, d/2 - a) when alpha < d
};

double green_ball(double x, double y, const KernelParams& kp);
double green_ball(std::span<const double> x, std::span<const double> y, const KernelParams& kp);

// Poisson kernel of the ball B(0, r); throws DomainError unless |x| < r < |y|.
double poisson_ball(std::span<const double> x, std::span<const double> y, double r,
                    const KernelParams& kp);
double poisson_ball(double x, double y, double r, const KernelParams& kp);

// Integral of the d = 1 Poisson kernel of (-r, r) over |y| > r (harmonic
// measure of the exterior; equal to one).
double poisson_exterior_mass(double x, double r, const KernelParams& kp);

struct PVConfig {
    // Inner cutoff is epsilon_factor times the local node spacing, unless
    // epsilon > 0 is given explicitly.
    double epsilon_factor = 4.0;
    double epsilon = 0.0;
    int order = 3;  // degree of the local interpolant
};

// Principal-value evaluation of (-Delta)^(alpha/2) u at an interior x for u
// extended by zero outside [-1, 1]. Requires d == 1 and a distance of at
// least two node spacings from the boundary.
double frac_laplacian_pv(const GridFunction& u, double x, const KernelParams& kp,
                         const PVConfig& cfg = {});

}  // namespace fraclab
