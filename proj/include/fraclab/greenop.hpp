#pragma once

// Product-integration (Nystrom) discretization of the Green operator of
// (-1, 1): (G f)(x_i) = int G(x_i, y) f~(y) dy with f~ the polynomial
// interpolant of f on the grid. Each row uses panels graded geometrically
// toward the target x_i and toward +-1.

#include <vector>

#include "fraclab/frackernel.hpp"
#include "fraclab/grid.hpp"

namespace fraclab {

struct GreenOperatorOptions {
    std::size_t order = 16;        // Gauss-Legendre points per panel
    std::size_t check_order = 12;  // lower-order rule for the error estimate
    GradedOptions grading{};
};

class GreenOperator {
  public:
    GreenOperator(GridPtr grid, const KernelParams& kp, const GreenOperatorOptions& opt = {});

    const GridPtr& grid() const { return grid_; }
    const GreenKernel& kernel() const { return kernel_; }
    const KernelParams& params() const { return kernel_.params(); }
    std::size_t size() const { return grid_->size(); }

    // Row-major n x n matrix.
    const std::vector<double>& matrix() const { return matrix_; }
    double entry(std::size_t i, std::size_t j) const { return matrix_[i * size() + j]; }

    GridFunction apply(const GridFunction& f) const;
    void apply(std::span<const double> f, std::span<double> out) const;

    // G applied to the constant 1.
    const GridFunction& torsion() const { return torsion_; }

    // Max over rows of |row sum - lower-order row sum|, relative to max row sum.
    double quadrature_error_estimate() const { return error_estimate_; }

  private:
    GridPtr grid_;
    GreenKernel kernel_;
    std::vector<double> matrix_;
    GridFunction torsion_;
    double error_estimate_ = 0.0;
};

// Best constant b in |G u^p| <= b |u|^p over the cone: (G 1)(0), the maximum
// of the torsion function. p enters only through validation.
double operator_norm_b(const GreenOperator& op, double p);

struct GammaUOptions {
    std::size_t resolution = 200;  // x-grid on U has resolution+1 points, y-grid 2*resolution-1
};

// Grid estimate of the largest gamma with inf_{|x|<a} G(x, y) >= gamma G(0, y)
// for every y in (-1, 1); the y-grid is graded toward +-1 and closed by the
// boundary limits of the ratio.
double gamma_U(double a_half, const GreenKernel& kernel, const GammaUOptions& opt = {});

// int_{-a}^{a} G(0, y) dy
double central_mass(double a_half, const GreenKernel& kernel);

// a = gamma^p int_{-a}^{a} G(0, y) dy
double coercivity_a(double a_half, double p, double gamma, const GreenKernel& kernel);
double coercivity_a(double a_half, double p, const GreenKernel& kernel);

}  // namespace fraclab
