#include "levyfn/transform.hpp"

#include <cmath>

#include "levyfn/errors.hpp"

namespace levyfn {

LaplaceExponent tbeta_transform(const LaplaceExponent& psi, double beta) {
  if (!(beta > 0) || !(beta < psi.theta_max())) {
    fail(ErrorCode::BadBeta, "shift must lie in (0, theta_max)");
  }
  LaplaceExponent base = psi;
  auto fn = [base, beta](double s) {
    if (s == 0.0) return 0.0;
    return s / (s + beta) * base(s + beta);
  };
  return LaplaceExponent(fn, psi.theta_min() - beta, psi.theta_max() - beta,
                         Provenance::Transformed, 0.0);
}

LevyModel tbeta_model(const LevyModel& model, double beta) {
  validate_model(model);
  if (!(beta > 0) || !(beta < model.jumps.theta_max())) {
    fail(ErrorCode::BadBeta, "shift must lie in (0, theta_max)");
  }
  LevyModel out;
  out.gaussian = model.gaussian;
  out.kill = 0.0;
  out.jumps = transformed_jumps_internal(model.jumps, beta, model.kill);
  // Natural drift shifts by sigma^2 beta / 2; convert back through the
  // compensation constants of the old and new measures.
  out.drift = model.drift - model.jumps.compensation() +
              out.jumps.compensation() + 0.5 * model.gaussian * beta;
  return out;
}

BetaStarResult beta_star(const LaplaceExponent& psi_q, double beta_plus) {
  if (!(beta_plus > 0)) {
    fail(ErrorCode::ParameterViolation, "beta_plus must be positive");
  }
  double cap = beta_plus;
  double hi = beta_plus;
  if (std::isfinite(psi_q.theta_max())) {
    hi = std::min(hi, psi_q.theta_max() - 3e-9);
    cap = std::min(cap, psi_q.theta_max());
  }
  if (!(hi > 0)) return {0.0, true};

  if (psi_q(hi) < 0) return {cap, false};

  double lo = 0.0;
  bool have_bracket = psi_q.kill() > 0;  // Psi_q(0) = -q < 0
  if (!have_bracket) {
    // Unkilled: Psi_q(0) = 0.  By convexity the negative region, if any, is
    // an interval (0, beta*); probe geometrically for a point inside it.
    for (int k = 1; k <= 60; ++k) {
      double b = hi * std::pow(0.5, k);
      if (b <= 0) break;
      if (psi_q(b) < 0) {
        lo = b;
        have_bracket = true;
        break;
      }
    }
    if (!have_bracket) return {0.0, true};
  }

  double flo_neg_hi = hi;
  for (int it = 0; it < 200 && flo_neg_hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + flo_neg_hi);
    if (psi_q(mid) < 0) {
      lo = mid;
    } else {
      flo_neg_hi = mid;
    }
  }
  return {lo, false};
}

}  // namespace levyfn
