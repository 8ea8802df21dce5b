#include "levyfn/special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_poly.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <limits>

#include "levyfn/errors.hpp"

namespace levyfn {

namespace {

// GSL aborts by default; disable that once, callers inspect return codes.
struct GslHandlerGuard {
  GslHandlerGuard() { gsl_set_error_handler_off(); }
};
const GslHandlerGuard gsl_handler_guard;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace

SignedLogGamma lgamma_signed(double x) {
  if (is_nonpositive_integer(x)) {
    return {std::numeric_limits<double>::infinity(), 0};
  }
  int sign = 0;
  double lg = lgamma_r(x, &sign);
  return {lg, sign};
}

double gamma_fn(double x) {
  SignedLogGamma g = lgamma_signed(x);
  if (g.sign == 0) {
    fail(ErrorCode::ParameterViolation, "gamma pole at x = " + std::to_string(x));
  }
  return g.sign * std::exp(g.log);
}

double reciprocal_gamma(double x) {
  SignedLogGamma g = lgamma_signed(x);
  if (g.sign == 0) return 0.0;
  return g.sign * std::exp(-g.log);
}

double gamma_ratio(double a, double b) {
  SignedLogGamma ga = lgamma_signed(a);
  SignedLogGamma gb = lgamma_signed(b);
  if (gb.sign == 0) return 0.0;  // denominator pole kills the ratio
  if (ga.sign == 0) {
    fail(ErrorCode::ParameterViolation,
         "gamma ratio has a numerator pole at a = " + std::to_string(a));
  }
  return ga.sign * gb.sign * std::exp(ga.log - gb.log);
}

double upper_incomplete_gamma(double a, double x) {
  gsl_sf_result r;
  int status = gsl_sf_gamma_inc_e(a, x, &r);
  if (status != GSL_SUCCESS) {
    fail(ErrorCode::QuadratureFailure, "incomplete gamma evaluation failed");
  }
  return r.val;
}

double expint_e1(double x) {
  if (x <= 0.0) {
    fail(ErrorCode::ParameterViolation, "E1 requires x > 0");
  }
  gsl_sf_result r;
  int status = gsl_sf_expint_E1_e(x, &r);
  if (status != GSL_SUCCESS) {
    fail(ErrorCode::QuadratureFailure, "E1 evaluation failed");
  }
  return r.val;
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // Series converges very fast for lambda of statistical interest.
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  double q = 2.0 * sum;
  if (q < 0.0) q = 0.0;
  if (q > 1.0) q = 1.0;
  return q;
}

std::vector<std::complex<double>> real_poly_roots(const std::vector<double>& c) {
  size_t n = c.size();
  if (n < 2 || c.back() == 0.0) {
    fail(ErrorCode::ParameterViolation, "polynomial must have nonzero leading coefficient");
  }
  std::vector<double> z(2 * (n - 1));
  gsl_poly_complex_workspace* w = gsl_poly_complex_workspace_alloc(n);
  int status = gsl_poly_complex_solve(c.data(), n, w, z.data());
  gsl_poly_complex_workspace_free(w);
  if (status != GSL_SUCCESS) {
    fail(ErrorCode::NoRoot, "polynomial root finding did not converge");
  }
  std::vector<std::complex<double>> roots;
  roots.reserve(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    roots.emplace_back(z[2 * i], z[2 * i + 1]);
  }
  return roots;
}

double log1p_minus_x(double x) {
  if (std::abs(x) > 1e-4) return std::log1p(x) - x;
  // Taylor tail: -x^2/2 + x^3/3 - x^4/4 ...
  double x2 = x * x;
  return -x2 / 2.0 + x2 * x / 3.0 - x2 * x2 / 4.0;
}

}  // namespace levyfn
