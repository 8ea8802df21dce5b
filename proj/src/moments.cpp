#include "levyfn/moments.hpp"

#include <cmath>
#include <limits>

#include "levyfn/errors.hpp"
#include "levyfn/quadrature.hpp"
#include "levyfn/special.hpp"

namespace levyfn {

double MomentLadder::moment(int m) const {
  if (m == 0) return 1.0;
  if (m < 1 || m > size()) {
    fail(ErrorCode::ParameterViolation, "moment order outside the ladder");
  }
  return values[static_cast<size_t>(m) - 1];
}

bool MomentLadder::log_convex(double rel_slack) const {
  for (int m = 1; m + 1 <= size(); ++m) {
    double lhs = moment(m) * moment(m);
    double rhs = moment(m - 1) * moment(m + 1);
    if (lhs > rhs * (1.0 + rel_slack)) return false;
  }
  return true;
}

MomentLadder moments_descending(const LadderExponent& phi_minus, int N) {
  if (N < 1) fail(ErrorCode::ParameterViolation, "need at least one moment");
  MomentLadder out;
  out.source = MomentSource::SubordinatorFormula;
  out.values.reserve(static_cast<size_t>(N));
  double log_prod = 0.0;  // sum of log(-phi(k))
  for (int m = 1; m <= N; ++m) {
    double v = -phi_minus(static_cast<double>(m));
    if (!(v > 0.0)) {
      fail(ErrorCode::SignViolation, "-phi(k) must stay positive up to order N");
    }
    log_prod += std::log(v);
    out.values.push_back(std::exp(std::lgamma(m + 1.0) - log_prod));
  }
  return out;
}

MomentLadder negative_moments_spectrally_positive(const LaplaceExponent& psi,
                                                  int N) {
  if (N < 1) fail(ErrorCode::ParameterViolation, "need at least one moment");
  if (psi.kill() != 0.0) {
    fail(ErrorCode::ParameterViolation, "exponent must be unkilled");
  }
  double slope = psi.mean();
  if (!(slope < 0.0)) {
    fail(ErrorCode::ParameterViolation, "exponent must have negative mean");
  }
  MomentLadder out;
  out.source = MomentSource::SpectrallyPositiveFormula;
  out.negative_orders = true;
  out.values.reserve(static_cast<size_t>(N));
  double log_acc = std::log(-slope);  // order 1 is -psi'(0) by convention
  out.values.push_back(-slope);
  for (int m = 2; m <= N; ++m) {
    double v = psi(-static_cast<double>(m - 1));
    if (!std::isfinite(v)) {
      fail(ErrorCode::StripViolation, "psi(-k) not finite");
    }
    if (!(v > 0.0)) {
      fail(ErrorCode::SignViolation, "psi(-k) must stay positive up to order N-1");
    }
    log_acc += std::log(v);
    out.values.push_back(std::exp(log_acc - std::lgamma(static_cast<double>(m))));
  }
  return out;
}

double mellin_by_quadrature(const std::function<double(double)>& density,
                            double z) {
  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  auto f = [&](double x) { return std::pow(x, z) * density(x); };
  // Split at 1: QAGP absorbs the possible x^{z-1}-type endpoint singularity,
  // QAGIU takes the tail.
  double head = integrate_with_breaks(f, {0.0, 1.0}, opt);
  double tail = integrate_to_inf(f, 1.0, opt);
  return head + tail;
}

namespace {

double recursion_residual(double mz, double mzm1, double z, double psi_at_z) {
  double lhs = mz + z / psi_at_z * mzm1;
  return std::abs(lhs) / std::abs(mz);
}

}  // namespace

double mellin_recursion_check(const MomentLadder& ladder,
                              const LaplaceExponent& psi_q) {
  double worst = 0.0;
  bool any = false;
  for (int m = 1; m <= ladder.size(); ++m) {
    double r = recursion_residual(ladder.moment(m), ladder.moment(m - 1),
                                  static_cast<double>(m),
                                  psi_q(static_cast<double>(m)));
    if (std::isnan(r)) continue;
    worst = std::max(worst, r);
    any = true;
  }
  return any ? worst : std::numeric_limits<double>::quiet_NaN();
}

double mellin_recursion_check(const std::function<double(double)>& density,
                              const LaplaceExponent& psi_q,
                              const std::vector<double>& z_grid) {
  double worst = 0.0;
  bool any = false;
  for (double z : z_grid) {
    double mz = mellin_by_quadrature(density, z);
    double mzm1 = mellin_by_quadrature(density, z - 1.0);
    double r = recursion_residual(mz, mzm1, z, psi_q(z));
    if (std::isnan(r)) continue;
    worst = std::max(worst, r);
    any = true;
  }
  return any ? worst : std::numeric_limits<double>::quiet_NaN();
}

double mellin_recursion_check(const std::vector<double>& draws,
                              const LaplaceExponent& psi_q,
                              const std::vector<double>& z_grid) {
  if (draws.empty()) fail(ErrorCode::ParameterViolation, "no draws");
  double worst = 0.0;
  bool any = false;
  double n = static_cast<double>(draws.size());
  for (double z : z_grid) {
    double coef = z / psi_q(z);
    double sum = 0.0, sumsq = 0.0;
    for (double x : draws) {
      double r = std::pow(x, z) + coef * std::pow(x, z - 1.0);
      sum += r;
      sumsq += r * r;
    }
    double mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    double se = std::sqrt(var / n);
    if (se == 0.0) continue;
    double score = std::abs(mean) / se;
    if (std::isnan(score)) continue;
    worst = std::max(worst, score);
    any = true;
  }
  return any ? worst : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace levyfn
