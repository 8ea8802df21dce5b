#include "levyfn/exponent.hpp"

#include <algorithm>
#include <cmath>

#include "levyfn/errors.hpp"

namespace levyfn {

namespace {
constexpr double kEdgeGuard = 1e-9;
}

void validate_model(const LevyModel& model) {
  if (model.gaussian < 0) {
    fail(ErrorCode::ParameterViolation, "gaussian coefficient must be nonnegative");
  }
  if (model.kill < 0) {
    fail(ErrorCode::ParameterViolation, "killing rate must be nonnegative");
  }
}

LaplaceExponent::LaplaceExponent(std::function<double(double)> fn,
                                 double theta_min, double theta_max,
                                 Provenance provenance, double kill)
    : fn_(std::move(fn)),
      theta_min_(theta_min),
      theta_max_(theta_max),
      provenance_(provenance),
      kill_(kill) {}

double LaplaceExponent::operator()(double s) const {
  if (!(s > theta_min_ + kEdgeGuard) || !(s < theta_max_ - kEdgeGuard)) {
    fail(ErrorCode::StripViolation,
         "s = " + std::to_string(s) + " outside the finiteness strip");
  }
  return fn_(s);
}

double LaplaceExponent::mean() const {
  double h = 1e-5;
  if (std::isfinite(theta_min_)) h = std::min(h, -theta_min_ / 4.0);
  if (std::isfinite(theta_max_)) h = std::min(h, theta_max_ / 4.0);
  const auto& f = *this;
  return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
}

double eval_exponent(const LevyModel& model, double s) {
  validate_model(model);
  if (s == 0.0) return -model.kill;
  double lo = model.jumps.theta_min();
  double hi = model.jumps.theta_max();
  bool inside = (!std::isfinite(lo) || s > lo + kEdgeGuard) &&
                (!std::isfinite(hi) || s < hi - kEdgeGuard);
  if (!inside) {
    fail(ErrorCode::StripViolation,
         "s = " + std::to_string(s) + " outside the finiteness strip");
  }
  return model.drift * s + 0.5 * model.gaussian * s * s +
         model.jumps.exponent_integral(s) - model.kill;
}

LaplaceExponent make_exponent(const LevyModel& model) {
  validate_model(model);
  LevyModel copy = model;
  return LaplaceExponent([copy](double s) { return eval_exponent(copy, s); },
                         model.jumps.theta_min(), model.jumps.theta_max(),
                         Provenance::Triplet, model.kill);
}

}  // namespace levyfn
