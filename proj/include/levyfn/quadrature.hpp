#pragma once
// Adaptive quadrature wrappers (GSL QAG family) with exceptions instead of
// status codes.  All integrands are plain std::function; no GSL types leak.

#include <functional>
#include <vector>

namespace levyfn {

struct QuadratureOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_intervals = 2000;
};

// Integral over the finite interval [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Integral over [a, +inf).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadratureOptions& opt = {});

// Integral over [a, b] with interior breakpoints (singular or kink points).
double integrate_with_breaks(const std::function<double(double)>& f,
                             std::vector<double> points,
                             const QuadratureOptions& opt = {});

}  // namespace levyfn
