#include "levyfn/verify.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "levyfn/errors.hpp"
#include "levyfn/stats.hpp"
#include "levyfn/transform.hpp"

namespace levyfn {
namespace {

bool has_minus_part(const JumpSpec& j) {
  if (!j.exp_minus().empty()) return true;
  for (const TiltedTail& t : j.tilted())
    if (t.side < 0) return true;
  if (j.lamperti() && j.lamperti()->c_minus > 0.0) return true;
  return false;
}

// Jump measure scaled by 1/q, for the families where the factories can
// express the result (exponential mixtures and a single untilted stable
// tail).  Other shapes fall through to the remaining routes.
std::optional<JumpSpec> scale_plus_jumps(const JumpSpec& j, double factor) {
  if (j.is_none()) return JumpSpec::none();
  if (j.lamperti()) return std::nullopt;
  if (j.tilted().empty()) {
    std::vector<ExpComponent> plus = j.exp_plus();
    for (ExpComponent& c : plus) c.mass *= factor;
    return JumpSpec::compound_poisson(plus, {});
  }
  if (j.exp_plus().empty() && j.tilted().size() == 1) {
    const TiltedTail& t = j.tilted().front();
    if (t.side > 0 && t.shift == 0.0)
      return JumpSpec::tilted_stable_tail(t.c * factor, t.alpha, t.gamma);
  }
  return std::nullopt;
}

bool rhs_measure_supported(const JumpSpec& j) {
  return j.tilted().empty() && !j.lamperti();
}

}  // namespace

Factorization build_factorization(const LevyModel& model) {
  validate_model(model);
  const JumpSpec& j = model.jumps;
  const double b_nat = model.drift - j.compensation();

  if (model.kill > 0.0 && model.gaussian == 0.0 && !has_minus_part(j) &&
      b_nat >= -1e-12) {
    // Killed subordinator: Psi_q(s) = q (delta s + jump integral / q - 1),
    // so phi_- = -q and phi_+ = Psi_q / q is itself an ascending exponent
    // killed at rate 1.
    std::optional<JumpSpec> scaled = scale_plus_jumps(j, 1.0 / model.kill);
    if (scaled) {
      LadderExponent phi_minus =
          LadderExponent::descending(model.kill, 0.0, JumpSpec::none());
      LadderExponent phi_plus = LadderExponent::ascending(
          1.0, std::max(0.0, b_nat) / model.kill, *scaled);
      Factorization f{phi_plus, phi_minus, RhsPlan{}, false, 0.0,
                      "subordinator"};
      if (rhs_measure_supported(*scaled)) {
        f.rhs.minus_kind = MinusKind::ExponentialQ;
        f.rhs.minus_param = model.kill;
        f.rhs.plus_model = psi_plus_model(phi_plus);
        f.rhs_supported = true;
      }
      return f;
    }
  }

  if (model.gaussian > 0.0 && model.kill > 0.0 && j.exp_plus().size() == 1 &&
      j.exp_minus().size() == 1 && j.tilted().empty() && !j.lamperti()) {
    RationalFactors rf = rational_factors(model);
    Factorization f{rf.phi_plus, rf.phi_minus, RhsPlan{}, false, 0.0,
                    "rational"};
    f.rhs.minus_kind = MinusKind::PathModel;
    f.rhs.minus_model = descending_model(rf.phi_minus);
    f.rhs.plus_model = psi_plus_model(rf.phi_plus);
    f.rhs_supported = true;
    return f;
  }

  OneSidedFactors of = spectrally_onesided_factors(model);
  if (of.which == OneSidedCase::SpectrallyPositive) {
    Factorization f{of.phi_plus, of.phi_minus, RhsPlan{}, false, of.gamma_q,
                    "onesided-positive"};
    f.rhs.minus_kind = MinusKind::BetaOneGamma;
    f.rhs.minus_param = of.gamma_q;
    if (j.is_none() && model.gaussian > 0.0) {
      // With no jumps Psi_q(s) = (sigma^2/2)(s + gamma_q)(s - r) with r the
      // positive root, so s phi_+(s) = (sigma^2/2) s (s - r): a Brownian
      // motion with drift -sigma^2 r / 2.
      double r = positive_convex_root(
          [&model](double s) { return eval_exponent(model, s); },
          std::numeric_limits<double>::infinity());
      f.rhs.plus_model = LevyModel{-0.5 * model.gaussian * r, model.gaussian,
                                   0.0, JumpSpec::none()};
      f.rhs_supported = true;
    }
    return f;
  }
  return Factorization{of.phi_plus, of.phi_minus, RhsPlan{}, false,
                       of.gamma_q, "onesided-negative"};
}

double factor_consistency(const LevyModel& model, const Factorization& f,
                          int grid_points) {
  LaplaceExponent psi = make_exponent(model);
  LaplaceExponent comp = compose_factors(f.phi_plus, f.phi_minus);
  double lo = std::max({psi.theta_min(), comp.theta_min(), -5.0});
  double hi = std::min({psi.theta_max(), comp.theta_max(), 5.0});
  if (!(hi > lo))
    fail(ErrorCode::StripViolation, "factor consistency: empty common strip");
  double margin = 0.02 * (hi - lo);
  lo += margin;
  hi -= margin;
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double s = lo + (hi - lo) * i / (grid_points - 1);
    double m = psi(s), c = comp(s);
    double scale = std::max({std::fabs(m), std::fabs(c), 1.0});
    worst = std::max(worst, std::fabs(c - m) / scale);
  }
  return worst;
}

TestReport test_factorization(const LevyModel& model, const Factorization& f,
                              size_t n, uint64_t seed,
                              const SamplerOptions& opt, bool force) {
  TestReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.consistency = factor_consistency(model, f);
  bool cons_pass = rep.consistency <= 1e-8;
  rep.entries.push_back(
      {"factor-consistency", rep.consistency, 1e-8, cons_pass});
  if (!cons_pass && !force)
    fail(ErrorCode::InconsistentFactors,
         "factor pair does not reproduce the model exponent");
  if (!f.rhs_supported)
    fail(ErrorCode::ParameterViolation,
         "product-law sampling is not available for route " + f.route);

  SampleSet lhs = sample_functional(model, n, seed, opt);
  SampleSet rhs = sample_factor_rhs(f.rhs, n, seed, opt);
  KsResult ks = ks_two_sample(lhs.draws, rhs.draws);
  rep.entries.push_back({"ks", ks.p_value, 0.01, ks.p_value > 0.01});

  int m_max = 0;
  try {
    double root = positive_convex_root(
        [&model](double s) { return eval_exponent(model, s); },
        model.jumps.theta_max());
    m_max = std::min(3, static_cast<int>(std::ceil(root)) - 1);
  } catch (const Error&) {
    m_max = 0;
  }
  for (int m = 1; m <= m_max; ++m) {
    MomentStat st = moment_two_sample(lhs.draws, rhs.draws, m);
    rep.entries.push_back(
        {"moment-z-" + std::to_string(m), st.z, 3.0, st.z < 3.0});
  }
  rep.pass = true;
  for (const TestEntry& e : rep.entries) rep.pass = rep.pass && e.pass;
  return rep;
}

TestReport test_factorization(const LevyModel& model, size_t n, uint64_t seed,
                              const SamplerOptions& opt) {
  Factorization f = build_factorization(model);
  return test_factorization(model, f, n, seed, opt, false);
}

TestReport test_length_bias(const LevyModel& model, double beta, size_t n,
                            uint64_t seed, const SamplerOptions& opt) {
  TestReport rep;
  rep.n = n;
  rep.seed = seed;
  SampleSet direct = sample_functional(model, n, seed, opt);
  LevyModel trans = tbeta_model(model, beta);
  // Distinct derived seed so the two batches are independent.
  SampleSet biased =
      sample_functional(trans, n, seed ^ 0x9E3779B97F4A7C15ULL, opt);

  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = std::pow(biased.draws[i], -beta);
  KsResult ks = ks_weighted_two_sample(biased.draws, w, direct.draws);
  rep.entries.push_back(
      {"ks-weighted", ks.p_value, 0.01, ks.p_value > 0.01});

  // E_T[Y^-beta] = 1 / E[I^beta]: compare the weight mean with the direct
  // sample estimate.
  MomentStat direct_beta = sample_moment(direct.draws, beta);
  MomentStat weight_mean = sample_moment(biased.draws, -beta);
  double target = 1.0 / direct_beta.value;
  double se = std::sqrt(weight_mean.se * weight_mean.se +
                        std::pow(direct_beta.se / (direct_beta.value *
                                                   direct_beta.value),
                                 2.0));
  double z = std::fabs(weight_mean.value - target) / se;
  rep.entries.push_back({"weight-normalization-z", z, 3.0, z < 3.0});
  rep.pass = true;
  for (const TestEntry& e : rep.entries) rep.pass = rep.pass && e.pass;
  return rep;
}

}  // namespace levyfn
