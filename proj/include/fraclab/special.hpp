#pragma once

namespace fraclab {

// Gamma function. Lanczos approximation (g = 7, 9 terms) for x >= 0.5,
// reflection formula below. Throws PoleError at nonpositive integers.
double gamma_fn(double x);

// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for a, b > 0.
double beta_fn(double a, double b);

inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace fraclab
