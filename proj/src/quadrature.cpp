#include "fraclab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fraclab/errors.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0) throw DomainError("gauss_legendre: n must be positive");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

QuadratureRule gauss_jacobi_unit(std::size_t n, double A, double B) {
    if (n == 0 || !(A > -1.0) || !(B > -1.0))
        throw DomainError("gauss_jacobi_unit: need n > 0 and exponents > -1");
    // Jacobi weight (1 - x)^A (1 + x)^B on [-1, 1]; t = (1 + x) / 2.
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    const double ab = A + B;
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = double(k);
        const double s = 2.0 * kk + ab;
        if (k == 0)
            diag[0] = (B - A) / (ab + 2.0);
        else
            diag[k] = (B * B - A * A) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double k1 = kk + 1.0;
            const double num = 4.0 * k1 * (k1 + A) * (k1 + B) * (k1 + ab);
            const double den = (s + 1.0) * (s + 2.0) * (s + 2.0) * (s + 3.0);
            sub[k] = std::sqrt(num / den);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, n > 1 ? Eigen::VectorXd(sub.head(n - 1)) : Eigen::VectorXd(),
                              Eigen::ComputeEigenvectors);
    const double mu0 = beta_fn(A + 1.0, B + 1.0);
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (1.0 + es.eigenvalues()[Eigen::Index(i)]);
        const double v0 = es.eigenvectors()(0, Eigen::Index(i));
        r.weights[i] = mu0 * v0 * v0;
    }
    return r;
}

void append_graded_rule(double s, double e, bool grade_s, bool grade_e, const QuadratureRule& base,
                        const GradedOptions& opt, std::vector<double>& nodes,
                        std::vector<double>& weights) {
    const double mid = 0.5 * (s + e);
    auto panel = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < base.size(); ++q) {
            nodes.push_back(c + h * base.nodes[q]);
            weights.push_back(h * base.weights[q]);
        }
    };
    // half [anchor, far] graded toward anchor; dir = +1 or -1
    auto half = [&](double anchor, double far, bool graded) {
        if (!graded) {
            panel(std::min(anchor, far), std::max(anchor, far));
            return;
        }
        const double len = far - anchor;
        double outer = 1.0;
        for (int k = 0; k < opt.levels; ++k) {
            const double inner = outer * opt.sigma;
            const double a = anchor + inner * len;
            const double b = anchor + outer * len;
            panel(std::min(a, b), std::max(a, b));
            outer = inner;
        }
        const double b = anchor + outer * len;
        panel(std::min(anchor, b), std::max(anchor, b));
    };
    half(s, mid, grade_s);
    half(e, mid, grade_e);
}

double integrate_graded(const std::function<double(double)>& f, double s, double e, bool grade_s,
                        bool grade_e, std::size_t order, const GradedOptions& opt) {
    if (!(e > s)) return 0.0;
    const QuadratureRule base = gauss_legendre(order);
    std::vector<double> y, w;
    append_graded_rule(s, e, grade_s, grade_e, base, opt, y, w);
    double acc = 0.0;
    for (std::size_t q = 0; q < y.size(); ++q) acc += w[q] * f(y[q]);
    return acc;
}

}  // namespace fraclab
