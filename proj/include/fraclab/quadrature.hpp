#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fraclab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

// Gauss rule on [0, 1] for the weight (1 - t)^A t^B, A, B > -1
// (Golub-Welsch on the Jacobi recurrence).
QuadratureRule gauss_jacobi_unit(std::size_t n, double A, double B);

// Composite rule on [s, e]: the interval is halved and each half is covered by
// panels shrinking geometrically (ratio sigma, `levels` panels plus a final
// one) toward the ends flagged in grade_s / grade_e. Each panel carries the
// Gauss-Legendre rule `base`.
struct GradedOptions {
    double sigma = 0.15;
    int levels = 18;
};

void append_graded_rule(double s, double e, bool grade_s, bool grade_e, const QuadratureRule& base,
                        const GradedOptions& opt, std::vector<double>& nodes,
                        std::vector<double>& weights);

double integrate_graded(const std::function<double(double)>& f, double s, double e, bool grade_s,
                        bool grade_e, std::size_t order = 16, const GradedOptions& opt = {});

}  // namespace fraclab
