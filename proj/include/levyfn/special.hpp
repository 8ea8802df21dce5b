#pragma once
// Small special-function layer: sign-tracked log-gamma, reciprocal gamma with
// pole handling, exponential integral, Kolmogorov tail, polynomial roots.
// Everything here is a thin veneer over libm / GSL so that callers never deal
// with GSL error handling or lost signs.

#include <complex>
#include <vector>

namespace levyfn {

// log|Γ(x)| together with sgn Γ(x).  sign == 0 marks a pole (x a nonpositive
// integer), in which case log is +inf and 1/Γ(x) should be taken as 0.
struct SignedLogGamma {
  double log;
  int sign;
};

SignedLogGamma lgamma_signed(double x);

// Γ(x) for x where it is finite; throws ParameterViolation on a pole.
double gamma_fn(double x);

// 1/Γ(x), defined for all real x (entire function); exactly 0 at poles.
double reciprocal_gamma(double x);

// Γ(a)/Γ(b) in log space, sign-tracked.  Returns 0 when Γ(a) hits a pole of
// the denominator... i.e. when Γ(b) has a pole the ratio is 0, and when Γ(a)
// has a pole the ratio is +-inf (reported as such).
double gamma_ratio(double a, double b);

// Upper incomplete gamma Γ(a, x) and the exponential integral E1(x).
double upper_incomplete_gamma(double a, double x);
double expint_e1(double x);

// Kolmogorov limit tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

// All (complex) roots of c[0] + c[1] x + ... + c[n] x^n, c[n] != 0.
std::vector<std::complex<double>> real_poly_roots(const std::vector<double>& c);

// ln(1+x) - x, accurate for small |x|; used by compensated jump integrals.
double log1p_minus_x(double x);

}  // namespace levyfn
