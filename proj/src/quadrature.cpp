#include "levyfn/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "levyfn/errors.hpp"

namespace levyfn {

namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

double trampoline(double x, void* params) {
  auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

[[noreturn]] void raise(int status, double est_err) {
  fail(ErrorCode::QuadratureFailure,
       "adaptive quadrature failed (gsl status " + std::to_string(status) +
           ", error estimate " + std::to_string(est_err) + ")");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  Workspace w(gsl_integration_workspace_alloc(opt.max_intervals));
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  int status = gsl_integration_qag(&gf, a, b, opt.abs_tol, opt.rel_tol,
                                   opt.max_intervals, GSL_INTEG_GAUSS61,
                                   w.get(), &result, &err);
  if (status != GSL_SUCCESS) raise(status, err);
  return result;
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadratureOptions& opt) {
  Workspace w(gsl_integration_workspace_alloc(opt.max_intervals));
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  int status = gsl_integration_qagiu(&gf, a, opt.abs_tol, opt.rel_tol,
                                     opt.max_intervals, w.get(), &result, &err);
  if (status != GSL_SUCCESS) raise(status, err);
  return result;
}

double integrate_with_breaks(const std::function<double(double)>& f,
                             std::vector<double> points,
                             const QuadratureOptions& opt) {
  if (points.size() < 2) {
    fail(ErrorCode::ParameterViolation, "need at least two breakpoints");
  }
  std::sort(points.begin(), points.end());
  Workspace w(gsl_integration_workspace_alloc(opt.max_intervals));
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  int status = gsl_integration_qagp(&gf, points.data(), points.size(),
                                    opt.abs_tol, opt.rel_tol, opt.max_intervals,
                                    w.get(), &result, &err);
  if (status != GSL_SUCCESS) raise(status, err);
  return result;
}

}  // namespace levyfn
