#include "fraclab/greenop.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/errors.hpp"
#include "fraclab/simd.hpp"
#include "fraclab/special.hpp"

namespace fraclab {
namespace {

// Adds weight * (Lagrange basis at t) to row.
void accumulate_basis(const Grid& grid, double t, double weight, std::vector<double>& scratch,
                      std::span<double> row) {
    const auto nodes = grid.nodes();
    const auto lam = grid.bary_weights();
    const auto hit = std::find(nodes.begin(), nodes.end(), t);
    if (hit != nodes.end()) {
        row[std::size_t(hit - nodes.begin())] += weight;
        return;
    }
    const auto& k = simd::active();
    const double s = k.barycentric(t, nodes.data(), lam.data(), scratch.data(), nodes.size());
    k.axpy(weight / s, scratch.data(), row.data(), row.size());
}

}  // namespace

GreenOperator::GreenOperator(GridPtr grid, const KernelParams& kp, const GreenOperatorOptions& opt)
    : grid_(std::move(grid)), kernel_(kp), torsion_(GridFunction::zeros(grid_)) {
    kp.validate_solver();
    const std::size_t n = grid_->size();
    matrix_.assign(n * n, 0.0);
    const QuadratureRule base = gauss_legendre(opt.order);
    const QuadratureRule check = gauss_legendre(opt.check_order);
    std::vector<double> scratch(n), y, w, yc, wc;
    double max_row = 0.0, max_diff = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double x = grid_->node(i);
        y.clear();
        w.clear();
        append_graded_rule(-1.0, x, true, true, base, opt.grading, y, w);
        append_graded_rule(x, 1.0, true, true, base, opt.grading, y, w);
        std::span<double> row(matrix_.data() + i * n, n);
        double row_sum = 0.0;
        for (std::size_t q = 0; q < y.size(); ++q) {
            const double g = w[q] * kernel_(x, y[q]);
            row_sum += g;
            accumulate_basis(*grid_, y[q], g, scratch, row);
        }
        yc.clear();
        wc.clear();
        append_graded_rule(-1.0, x, true, true, check, opt.grading, yc, wc);
        append_graded_rule(x, 1.0, true, true, check, opt.grading, yc, wc);
        double check_sum = 0.0;
        for (std::size_t q = 0; q < yc.size(); ++q) check_sum += wc[q] * kernel_(x, yc[q]);
        max_row = std::max(max_row, row_sum);
        max_diff = std::max(max_diff, std::fabs(row_sum - check_sum));
    }
    error_estimate_ = max_row > 0.0 ? max_diff / max_row : 0.0;
    torsion_ = apply(GridFunction(grid_, std::vector<double>(n, 1.0)));
}

void GreenOperator::apply(std::span<const double> f, std::span<double> out) const {
    const std::size_t n = size();
    if (f.size() != n || out.size() != n) throw DomainError("GreenOperator::apply: size mismatch");
    simd::active().gemv(matrix_.data(), f.data(), out.data(), n, n);
}

GridFunction GreenOperator::apply(const GridFunction& f) const {
    if (f.size() != size())
        throw DomainError("GreenOperator::apply: function lives on another grid");
    std::vector<double> out(size());
    apply(f.values(), out);
    return GridFunction(grid_, std::move(out));
}

double operator_norm_b(const GreenOperator& op, double p) {
    if (!(p > 1.0)) throw DomainError("operator_norm_b: p must exceed 1");
    return op.torsion().sup_norm();
}

double gamma_U(double a_half, const GreenKernel& kernel, const GammaUOptions& opt) {
    if (!(a_half > 0.0 && a_half < 1.0)) throw DomainError("gamma_U: a_half must lie in (0, 1)");
    if (opt.resolution < 2) throw DomainError("gamma_U: resolution too small");
    const std::size_t mx = opt.resolution + 1;
    std::vector<double> xs(mx);
    for (std::size_t k = 0; k < mx; ++k) xs[k] = -a_half + 2.0 * a_half * double(k) / double(mx - 1);
    xs[mx / 2] = 0.0;

    double best = 1.0;
    const std::size_t my = 2 * opt.resolution;
    for (std::size_t k = 1; k < my; ++k) {
        // sin map clusters the y samples toward +-1
        const double s = -1.0 + 2.0 * double(k) / double(my);
        const double yv = std::sin(0.5 * pi * s);
        const double g0 = kernel(0.0, yv);
        if (!(g0 > 0.0)) continue;
        for (double xv : xs) best = std::min(best, kernel(xv, yv) / g0);
    }
    // y -> +-1: G(x, y) / G(0, y) -> (1 - x^2)^(alpha/2) / |x -+ 1|
    const double half_alpha = kernel.params().alpha / 2.0;
    for (double xv : xs) {
        const double lead = std::pow(1.0 - xv * xv, half_alpha);
        best = std::min(best, lead / (1.0 - xv));
        best = std::min(best, lead / (1.0 + xv));
    }
    return best;
}

double central_mass(double a_half, const GreenKernel& kernel) {
    if (!(a_half > 0.0 && a_half < 1.0)) throw DomainError("central_mass: a_half must lie in (0, 1)");
    auto f = [&](double y) { return kernel(0.0, y); };
    return integrate_graded(f, -a_half, 0.0, false, true) + integrate_graded(f, 0.0, a_half, true, false);
}

double coercivity_a(double a_half, double p, double gamma, const GreenKernel& kernel) {
    if (!(p > 1.0)) throw DomainError("coercivity_a: p must exceed 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("coercivity_a: gamma must lie in (0, 1]");
    return std::pow(gamma, p) * central_mass(a_half, kernel);
}

double coercivity_a(double a_half, double p, const GreenKernel& kernel) {
    return coercivity_a(a_half, p, gamma_U(a_half, kernel), kernel);
}

}  // namespace fraclab
