#include "levyfn/stable.hpp"

#include <gsl/gsl_multifit.h>

#include <algorithm>
#include <cmath>

#include "levyfn/errors.hpp"
#include "levyfn/ladders.hpp"
#include "levyfn/special.hpp"

namespace levyfn {
namespace {

constexpr double kAlphaTol = 1e-12;

double killed_eval(double alpha, double rho, double s) {
  SignedLogGamma n1 = lgamma_signed(alpha - alpha * s);
  SignedLogGamma n2 = lgamma_signed(alpha * s + 1.0);
  SignedLogGamma d1 = lgamma_signed(alpha * rho - alpha * s);
  SignedLogGamma d2 = lgamma_signed(alpha * s + 1.0 - alpha * rho);
  if (d1.sign == 0 || d2.sign == 0) return 0.0;
  double lg = n1.log + n2.log - d1.log - d2.log;
  int sign = n1.sign * n2.sign * d1.sign * d2.sign;
  return -sign * std::exp(lg);
}

bool is_brownian(const StableParams& p) {
  return std::fabs(p.alpha - 2.0) <= kAlphaTol;
}

LevyModel brownian_model(const StableParams& p) {
  // Psi^2(s) - q = 4 s^2 - 2 s exactly (q = 0 at the alpha rho = 1 pole).
  (void)p;
  return LevyModel{-2.0, 8.0, 0.0, JumpSpec::none()};
}

}  // namespace

void validate_stable(const StableParams& p) {
  if (!(p.alpha > 0.0) || p.alpha > 2.0)
    fail(ErrorCode::Inadmissible, "stable: alpha must lie in (0, 2]");
  if (!(p.rho > 0.0) || p.rho > 1.0)
    fail(ErrorCode::Inadmissible, "stable: rho must lie in (0, 1]");
  if (p.alpha > 1.0 &&
      (p.rho < 1.0 - 1.0 / p.alpha - kAlphaTol ||
       p.rho > 1.0 / p.alpha + kAlphaTol))
    fail(ErrorCode::Inadmissible,
         "stable: for alpha > 1, rho must lie in [1 - 1/alpha, 1/alpha]");
}

double stable_kill_rate(const StableParams& p) {
  validate_stable(p);
  SignedLogGamma num = lgamma_signed(p.alpha);
  SignedLogGamma d1 = lgamma_signed(p.alpha * p.rho);
  SignedLogGamma d2 = lgamma_signed(1.0 - p.alpha * p.rho);
  if (d1.sign == 0 || d2.sign == 0) return 0.0;
  return num.sign * d1.sign * d2.sign *
         std::exp(num.log - d1.log - d2.log);
}

LaplaceExponent stable_exponent(const StableParams& p) {
  validate_stable(p);
  const double alpha = p.alpha, rho = p.rho;
  double q = stable_kill_rate(p);
  return LaplaceExponent(
      [alpha, rho](double s) { return killed_eval(alpha, rho, s); },
      -1.0 / alpha, 1.0, Provenance::Triplet, q);
}

double stable_gamma_q(const StableParams& p) {
  validate_stable(p);
  const double alpha = p.alpha, rho = p.rho;
  return positive_convex_root(
      [alpha, rho](double s) { return killed_eval(alpha, rho, s); }, 1.0);
}

LevyModel stable_surrogate_model(const StableParams& p, double* max_rel_err) {
  validate_stable(p);
  if (is_brownian(p)) {
    if (max_rel_err) *max_rel_err = 0.0;
    return brownian_model(p);
  }
  if (!(p.alpha < 1.0))
    fail(ErrorCode::ParameterViolation,
         "stable: surrogate measure available for alpha < 1 (or alpha = 2)");

  const double q = stable_kill_rate(p);
  JumpSpec unit_plus = JumpSpec::lamperti_stable(p.alpha, 1.0, 0.0);
  JumpSpec unit_minus = JumpSpec::lamperti_stable(p.alpha, 0.0, 1.0);

  // Least-squares fit of Psi^alpha(s) = b s + C+ u+(s) + C- u-(s) on an
  // interior grid of the strip (-1/alpha, 1).
  const int kPoints = 20;
  const double lo = -1.0 / p.alpha, hi = 1.0;
  const double margin = 0.06 * (hi - lo);
  gsl_matrix* X = gsl_matrix_alloc(kPoints, 3);
  gsl_vector* y = gsl_vector_alloc(kPoints);
  gsl_vector* c = gsl_vector_alloc(3);
  gsl_matrix* cov = gsl_matrix_alloc(3, 3);
  gsl_multifit_linear_workspace* ws = gsl_multifit_linear_alloc(kPoints, 3);
  for (int i = 0; i < kPoints; ++i) {
    double s = lo + margin + (hi - lo - 2.0 * margin) * i / (kPoints - 1);
    gsl_matrix_set(X, i, 0, s);
    gsl_matrix_set(X, i, 1, unit_plus.natural_integral(s));
    gsl_matrix_set(X, i, 2, unit_minus.natural_integral(s));
    gsl_vector_set(y, i, killed_eval(p.alpha, p.rho, s) + q);
  }
  double chisq = 0.0;
  gsl_multifit_linear(X, y, c, cov, &chisq, ws);
  double b_nat = gsl_vector_get(c, 0);
  double c_plus = std::max(0.0, gsl_vector_get(c, 1));
  double c_minus = std::max(0.0, gsl_vector_get(c, 2));
  gsl_multifit_linear_free(ws);
  gsl_matrix_free(cov);
  gsl_vector_free(c);
  gsl_vector_free(y);
  gsl_matrix_free(X);

  JumpSpec jumps = JumpSpec::lamperti_stable(p.alpha, c_plus, c_minus);
  LevyModel model{b_nat + jumps.compensation(), 0.0, q, jumps};

  double worst = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    double s = lo + margin + (hi - lo - 2.0 * margin) * i / (kPoints - 1);
    double target = killed_eval(p.alpha, p.rho, s);
    double got = eval_exponent(model, s);
    worst = std::max(worst, std::fabs(got - target) /
                                std::max(1.0, std::fabs(target)));
  }
  if (max_rel_err) *max_rel_err = worst;
  return model;
}

PassageLaw passage_time_law(const StableParams& p, size_t n, uint64_t seed,
                            const SamplerOptions& opt, int bins) {
  validate_stable(p);
  PassageLaw law;
  law.kill = stable_kill_rate(p);
  LevyModel model;
  if (is_brownian(p)) {
    model = brownian_model(p);
  } else if (p.alpha < 1.0) {
    model = stable_surrogate_model(p, &law.surrogate_residual);
  } else {
    fail(ErrorCode::ParameterViolation,
         "stable: passage-time sampling supported for alpha < 1 or alpha = 2");
  }
  law.t1 = sample_functional(model, n, seed, opt);

  std::vector<double> sorted = law.t1.draws;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&sorted](double u) {
    size_t i = static_cast<size_t>(u * (sorted.size() - 1));
    return sorted[i];
  };

  double top = quantile(0.98);
  double h = top / bins;
  for (int i = 0; i < bins; ++i)
    law.t1_density.push_back(
        histogram_density(law.t1.draws, (i + 0.5) * h, 0.5 * h));

  std::vector<double> inv(law.t1.draws.size());
  for (size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / law.t1.draws[i];
  std::vector<double> inv_sorted = inv;
  std::sort(inv_sorted.begin(), inv_sorted.end());
  double inv_top = inv_sorted[static_cast<size_t>(0.98 * (inv.size() - 1))];
  double hh = inv_top / bins;
  for (int i = 0; i < bins; ++i)
    law.s1a_density.push_back(
        histogram_density(inv, (i + 0.5) * hh, 0.5 * hh));

  law.t1_monotone_applies =
      p.alpha < 1.0 && p.rho <= 1.0 / p.alpha - 1.0 + kAlphaTol;
  law.t1_monotone = true;
  for (size_t i = 0; i + 1 < law.t1_density.size(); ++i) {
    const DensityEstimate& a = law.t1_density[i];
    const DensityEstimate& b = law.t1_density[i + 1];
    double slack = 3.0 * std::sqrt(a.se * a.se + b.se * b.se);
    if (b.value > a.value + slack) law.t1_monotone = false;
  }

  law.s1a_log_convex = true;
  for (size_t i = 1; i + 1 < law.s1a_density.size(); ++i) {
    const DensityEstimate& l = law.s1a_density[i - 1];
    const DensityEstimate& m = law.s1a_density[i];
    const DensityEstimate& r = law.s1a_density[i + 1];
    if (l.value <= 0.0 || m.value <= 0.0 || r.value <= 0.0) continue;
    double second = std::log(l.value) + std::log(r.value) -
                    2.0 * std::log(m.value);
    double slack = 3.0 * std::sqrt(std::pow(l.se / l.value, 2.0) +
                                   4.0 * std::pow(m.se / m.value, 2.0) +
                                   std::pow(r.se / r.value, 2.0));
    if (second < -slack) law.s1a_log_convex = false;
  }
  return law;
}

}  // namespace levyfn
