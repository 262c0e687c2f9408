#include "fraclab/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fraclab/errors.hpp"

namespace fraclab {
namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
    // Gamma(x) for x >= 0.5
    const double z = x - 1.0;
    double sum = lanczos_coef[0];
    for (std::size_t k = 1; k < lanczos_coef.size(); ++k) sum += lanczos_coef[k] / (z + double(k));
    const double t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

// sin(pi x) with exact argument reduction, so accuracy holds near the integers
double sin_pi(double x) {
    double r = x - 2.0 * std::round(0.5 * x);  // exact, in [-1, 1]
    if (r > 0.5) r = 1.0 - r;
    else if (r < -0.5) r = -1.0 - r;
    return std::sin(pi * r);
}

}  // namespace

double gamma_fn(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError("gamma_fn: pole at nonpositive integer " + std::to_string(x));
    if (x < 0.5) return pi / (sin_pi(x) * lanczos(1.0 - x));
    return lanczos(x);
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_fn: arguments must be positive");
    return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
}

}  // namespace fraclab
