#include "fraclab/frackernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fraclab/errors.hpp"
#include "fraclab/special.hpp"

namespace fraclab {
namespace {

constexpr std::size_t jacobi_nodes = 24;
constexpr double inf = std::numeric_limits<double>::infinity();

// -1 / (sqrt(1+s) (1 + sqrt(1+s))) == ((1+s)^(-1/2) - 1) / s without cancellation
double tail_phi(double s) {
    const double r = std::sqrt(1.0 + s);
    return -1.0 / (r * (1.0 + r));
}

}  // namespace

void KernelParams::validate() const {
    if (d < 1) throw DomainError("KernelParams: dimension must be >= 1");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw DomainError("KernelParams: alpha must lie in (0, 2), got " + std::to_string(alpha));
}

void KernelParams::validate_solver() const {
    validate();
    if (d != 1) throw DomainError("KernelParams: solver path requires d = 1");
    if (!(alpha >= solver_alpha_min && alpha <= solver_alpha_max))
        throw DomainError("KernelParams: solver path requires alpha in [1.05, 1.95]");
}

double norm_const(int d, double gamma) {
    if (d < 1) throw DomainError("norm_const: dimension must be >= 1");
    const double num = gamma_fn((double(d) - gamma) / 2.0);
    const double den =
        std::pow(2.0, gamma) * std::pow(pi, double(d) / 2.0) * std::fabs(gamma_fn(gamma / 2.0));
    return num / den;
}

double green_const(const KernelParams& kp) {
    kp.validate();
    const double g = gamma_fn(kp.alpha / 2.0);
    return gamma_fn(double(kp.d) / 2.0) /
           (std::pow(2.0, kp.alpha) * std::pow(pi, double(kp.d) / 2.0) * g * g);
}

double poisson_const(const KernelParams& kp) {
    kp.validate();
    return gamma_fn(double(kp.d) / 2.0) * std::pow(pi, -double(kp.d) / 2.0 - 1.0) *
           std::sin(pi * kp.alpha / 2.0);
}

WFactor w_factor(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("w_factor: dimension mismatch");
    double nx = 0.0, ny = 0.0, dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        nx += x[k] * x[k];
        ny += y[k] * y[k];
        dist2 += (x[k] - y[k]) * (x[k] - y[k]);
    }
    if (dist2 == 0.0) return {inf, true};
    return {(1.0 - nx) * (1.0 - ny) / dist2, false};
}

WFactor w_factor(double x, double y) {
    return w_factor(std::span<const double>(&x, 1), std::span<const double>(&y, 1));
}

GreenKernel::GreenKernel(const KernelParams& kp) : kp_(kp) {
    kp_.validate();
    half_alpha_ = kp_.alpha / 2.0;
    prefactor_ = green_const(kp_);
    const double a = half_alpha_;
    const double hd = double(kp_.d) / 2.0;
    head_ = gauss_jacobi_unit(jacobi_nodes, 0.0, a - 1.0);
    for (std::size_t q = 0; q < head_.size(); ++q)
        head_at_one_ += head_.weights[q] * std::pow(1.0 + head_.nodes[q], -hd);
    if (kp_.alpha > double(kp_.d)) {
        // d = 1 and alpha > 1: divergent tail split off analytically
        tail_ = gauss_jacobi_unit(jacobi_nodes, 0.0, 0.5 - a);
        for (std::size_t q = 0; q < tail_.size(); ++q)
            tail_at_zero_ += tail_.weights[q] * tail_phi(tail_.nodes[q]);
    } else if (kp_.alpha < double(kp_.d)) {
        tail_ = gauss_jacobi_unit(jacobi_nodes, 0.0, hd - a - 1.0);
        beta_total_ = beta_fn(a, hd - a);
    }
}

double GreenKernel::inner_integral(double w) const {
    if (!(w >= 0.0)) throw DomainError("inner_integral: w must be nonnegative");
    const double a = half_alpha_;
    const double hd = double(kp_.d) / 2.0;
    if (w <= 1.0) {
        double s = 0.0;
        for (std::size_t q = 0; q < head_.size(); ++q)
            s += head_.weights[q] * std::pow(1.0 + w * head_.nodes[q], -hd);
        return std::pow(w, a) * s;
    }
    if (kp_.alpha == double(kp_.d)) return 2.0 * std::asinh(std::sqrt(w));  // d = 1, alpha = 1
    const double s0 = std::isinf(w) ? 0.0 : 1.0 / w;
    if (kp_.alpha < double(kp_.d)) {
        double s = 0.0;
        for (std::size_t q = 0; q < tail_.size(); ++q)
            s += tail_.weights[q] * std::pow(1.0 + s0 * tail_.nodes[q], -hd);
        return beta_total_ - std::pow(s0, hd - a) * s;
    }
    if (std::isinf(w)) return inf;
    const double k = a - 0.5;
    double s = 0.0;
    for (std::size_t q = 0; q < tail_.size(); ++q) s += tail_.weights[q] * tail_phi(s0 * tail_.nodes[q]);
    const double tail = tail_at_zero_ - std::pow(s0, 1.5 - a) * s;
    return head_at_one_ + (std::pow(w, k) - 1.0) / k + tail;
}

double GreenKernel::from_distance(double dist, double prod) const {
    const double a = half_alpha_;
    const double alpha = kp_.alpha;
    const double dd = double(kp_.d);
    if (dist == 0.0) {
        if (alpha > dd) return prefactor_ * std::pow(prod, a - 0.5) / (a - 0.5);
        return inf;
    }
    const double w = prod / (dist * dist);
    if (w <= 1.0) {
        // |x-y|^(alpha-d) w^a = prod^a |x-y|^(-d)
        double s = 0.0;
        const double hd = dd / 2.0;
        for (std::size_t q = 0; q < head_.size(); ++q)
            s += head_.weights[q] * std::pow(1.0 + w * head_.nodes[q], -hd);
        return prefactor_ * std::pow(prod, a) * std::pow(dist, -dd) * s;
    }
    if (alpha > dd) {
        const double k = a - 0.5;
        const double s0 = 1.0 / w;
        double s = 0.0;
        for (std::size_t q = 0; q < tail_.size(); ++q) s += tail_.weights[q] * tail_phi(s0 * tail_.nodes[q]);
        const double tail = tail_at_zero_ - std::pow(s0, 1.5 - a) * s;
        // |x-y|^(alpha-1) w^(a-1/2) = prod^(a-1/2)
        return prefactor_ * (std::pow(prod, k) / k + std::pow(dist, alpha - 1.0) * (head_at_one_ - 1.0 / k + tail));
    }
    return prefactor_ * std::pow(dist, alpha - dd) * inner_integral(w);
}

double GreenKernel::operator()(double x, double y) const {
    if (x > y) std::swap(x, y);
    if (!(x > -1.0 && x < 1.0 && y > -1.0 && y < 1.0)) return 0.0;
    return from_distance(y - x, (1.0 - x * x) * (1.0 - y * y));
}

double GreenKernel::ball(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != std::size_t(kp_.d) || y.size() != std::size_t(kp_.d))
        throw DomainError("green_ball: point dimension does not match d");
    if (kp_.d == 1) return (*this)(x[0], y[0]);
    double nx = 0.0, ny = 0.0, dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        nx += x[k] * x[k];
        ny += y[k] * y[k];
        dist2 += (x[k] - y[k]) * (x[k] - y[k]);
    }
    if (!(nx < 1.0 && ny < 1.0)) return 0.0;
    return from_distance(std::sqrt(dist2), (1.0 - nx) * (1.0 - ny));
}

double GreenKernel::interval(double x, double y, double center, double radius) const {
    if (!(radius > 0.0)) throw DomainError("GreenKernel::interval: radius must be positive");
    return std::pow(radius, kp_.alpha - 1.0) * (*this)((x - center) / radius, (y - center) / radius);
}

double green_ball(double x, double y, const KernelParams& kp) { return GreenKernel(kp)(x, y); }

double green_ball(std::span<const double> x, std::span<const double> y, const KernelParams& kp) {
    return GreenKernel(kp).ball(x, y);
}

double poisson_ball(std::span<const double> x, std::span<const double> y, double r,
                    const KernelParams& kp) {
    kp.validate();
    if (x.size() != std::size_t(kp.d) || y.size() != std::size_t(kp.d))
        throw DomainError("poisson_ball: point dimension does not match d");
    if (!(r > 0.0)) throw DomainError("poisson_ball: radius must be positive");
    double nx = 0.0, ny = 0.0, dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        nx += x[k] * x[k];
        ny += y[k] * y[k];
        dist2 += (x[k] - y[k]) * (x[k] - y[k]);
    }
    if (!(nx < r * r)) throw DomainError("poisson_ball: x must lie inside the ball");
    if (!(ny > r * r)) throw DomainError("poisson_ball: y must lie outside the closed ball");
    const double a = kp.alpha / 2.0;
    return poisson_const(kp) * std::pow(r * r - nx, a) /
           (std::pow(ny - r * r, a) * std::pow(dist2, double(kp.d) / 2.0));
}

double poisson_ball(double x, double y, double r, const KernelParams& kp) {
    return poisson_ball(std::span<const double>(&x, 1), std::span<const double>(&y, 1), r, kp);
}

double poisson_exterior_mass(double x, double r, const KernelParams& kp) {
    kp.validate();
    if (kp.d != 1) throw DomainError("poisson_exterior_mass: d = 1 only");
    if (!(std::fabs(x) < r)) throw DomainError("poisson_exterior_mass: x must lie inside (-r, r)");
    const double a = kp.alpha / 2.0;
    // y = r/t on each side; weight t^(alpha-1) (1-t)^(-a)
    const QuadratureRule rule = gauss_jacobi_unit(48, -a, kp.alpha - 1.0);
    auto side = [&](double xs) {
        double s = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double t = rule.nodes[q];
            s += rule.weights[q] * std::pow(1.0 + t, -a) / (r - xs * t);
        }
        return s;
    };
    const double pref = poisson_const(kp) * std::pow(r * r - x * x, a) * std::pow(r, 1.0 - 2.0 * a);
    return pref * (side(x) + side(-x));
}

double frac_laplacian_pv(const GridFunction& u, double x, const KernelParams& kp,
                         const PVConfig& cfg) {
    kp.validate();
    if (kp.d != 1) throw DomainError("frac_laplacian_pv: d = 1 only");
    if (cfg.order < 2) throw DomainError("frac_laplacian_pv: interpolant degree must be >= 2");
    const Grid& grid = *u.grid();
    const double h = grid.spacing_at(x);
    const double margin = 1.0 - std::fabs(x);
    if (!(margin >= 2.0 * h)) throw DomainError("frac_laplacian_pv: point too close to the boundary");
    const double alpha = kp.alpha;

    double R = cfg.epsilon > 0.0 ? cfg.epsilon : cfg.epsilon_factor * h;
    R = std::min(R, 0.5 * margin);

    // near zone: 2P(x) - P(x+t) - P(x-t) = -2 sum_{k even} c_k t^k, integrated exactly
    const auto idx = nearest_stencil(grid, x, cfg.order);
    const auto c = taylor_at(grid, u.values(), idx, x);
    const double ux = c[0];
    double near = 0.0;
    for (std::size_t k = 2; k < c.size(); k += 2)
        near -= 2.0 * c[k] * std::pow(R, double(k) - alpha) / (double(k) - alpha);

    // far zone inside [-1, 1] with the piecewise interpolant
    static const QuadratureRule gl = gauss_legendre(10);
    auto segment = [&](double lo, double hi) {
        if (!(hi > lo)) return 0.0;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (std::size_t q = 0; q < gl.size(); ++q) {
            const double y = mid + half * gl.nodes[q];
            s += gl.weights[q] * (ux - u.interpolate_local(y, cfg.order)) *
                 std::pow(std::fabs(x - y), -1.0 - alpha);
        }
        return half * s;
    };
    double far = 0.0;
    const auto nodes = grid.nodes();
    auto sweep = [&](double lo, double hi) {
        double a = lo;
        for (double node : nodes) {
            if (node <= a) continue;
            if (node >= hi) break;
            far += segment(a, node);
            a = node;
        }
        far += segment(a, hi);
    };
    sweep(-1.0, x - R);
    sweep(x + R, 1.0);

    // exterior, where u = 0
    const double exterior = ux * (std::pow(1.0 - x, -alpha) + std::pow(1.0 + x, -alpha)) / alpha;

    return norm_const(1, -alpha) * (near + far + exterior);
}

}  // namespace fraclab
