// Acceptance suite: one line per criterion, each combining closed-form
// checks, cross-route consistency and Monte Carlo agreement with the
// tolerances pinned inline.  Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "levyfn/density_ops.hpp"
#include "levyfn/exponent.hpp"
#include "levyfn/jumps.hpp"
#include "levyfn/ladders.hpp"
#include "levyfn/moments.hpp"
#include "levyfn/sampler.hpp"
#include "levyfn/series.hpp"
#include "levyfn/special.hpp"
#include "levyfn/stable.hpp"
#include "levyfn/stats.hpp"
#include "levyfn/transform.hpp"
#include "levyfn/verify.hpp"

using namespace levyfn;

namespace {

constexpr uint64_t kSeed = 0xC0FFEE;

int g_failures = 0;

void run(int idx, const char* name, double cap_seconds,
         const std::function<bool()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string("  unexpected error: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  if (cap_seconds > 0 && dt >= cap_seconds) {
    ok = false;
    if (note.empty()) note = "  over time budget";
  }
  std::printf("[%d] %-52s %s (%.2f s)%s\n", idx, name, ok ? "PASS" : "FAIL",
              dt, note.c_str());
  if (!ok) ++g_failures;
}

LevyModel drift_subordinator() {
  LevyModel m;
  m.drift = 1.0;
  m.kill = 1.0;
  return m;
}

LevyModel rational_fixture() {
  LevyModel m;
  m.drift = -0.3;
  m.gaussian = 0.25;
  m.kill = 2.0;
  m.jumps = JumpSpec::exponential_two_sided(0.5, 6.0, 1.0, 2.0);
  return m;
}

// Killed spectrally positive Brownian motion, Psi_q(s) = (1/2)(s-3)(s+2).
LevyModel onesided_fixture() {
  LevyModel m;
  m.drift = -0.5;
  m.gaussian = 1.0;
  m.kill = 3.0;
  return m;
}

double closed_density(double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }

// Criterion 1: the killed-subordinator density series reproduces
// q(1+bx)^{-q/b-1} for b = q = 1, raw inside the radius and
// Euler-transformed far beyond it, with the exact value at zero.
bool density_series_closed_form() {
  LevyModel m = drift_subordinator();
  DensitySeries raw = density_series_subordinator(m, SeriesMode::Raw);
  DensitySeries euler = density_series_subordinator(m, SeriesMode::Euler);

  double sup_raw = 0.0;
  for (int i = 0; i <= 90; ++i) {
    double x = 0.01 * i;
    sup_raw = std::max(sup_raw, std::abs(raw.eval(x) - closed_density(x)));
  }
  double sup_euler = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double x = 0.25 * i;
    sup_euler =
        std::max(sup_euler, std::abs(euler.eval(x) - closed_density(x)));
  }
  return sup_raw < 1e-9 && sup_euler < 1e-9 &&
         std::abs(raw.eval(0.0) - 1.0) < 1e-12;
}

// Criterion 2: moment ladders against exact values and against Monte Carlo
// draws of the matching path functionals.
bool moment_ladders_and_monte_carlo() {
  bool ok = true;

  // phi(s) = -(1+s): E[I^m] = 1/(m+1).
  MomentLadder ladder = moments_descending(
      LadderExponent::descending(1.0, 1.0, JumpSpec::none()), 20);
  for (int m = 1; m <= 20; ++m)
    ok = ok && std::abs(ladder.moment(m) - 1.0 / (m + 1.0)) < 1e-12;

  // The matching path functional is 1 - e^{-e_1}.
  LevyModel desc;
  desc.drift = -1.0;
  desc.kill = 1.0;
  SampleSet draws = sample_functional(desc, 100000, kSeed);
  for (int m = 1; m <= 3; ++m)
    ok = ok && moment_vs_value(draws.draws, m, 1.0 / (m + 1.0)).z < 3.0;

  // psi(s) = s^2/2 - s/2: E[I^-m] = m!/2^m.
  LevyModel bm;
  bm.drift = -0.5;
  bm.gaussian = 1.0;
  MomentLadder neg = negative_moments_spectrally_positive(make_exponent(bm), 10);
  double target = 1.0;
  for (int m = 1; m <= 10; ++m) {
    target *= m / 2.0;
    ok = ok && std::abs(neg.moment(m) / target - 1.0) < 1e-10;
  }

  SampleSet paths = sample_functional(bm, 1000000, kSeed);
  std::vector<double> inv(paths.draws.size());
  for (size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / paths.draws[i];
  target = 1.0;
  for (int m = 1; m <= 3; ++m) {
    target *= m / 2.0;
    ok = ok && moment_vs_value(inv, m, target).z < 3.0;
  }
  return ok;
}

// Criterion 3: the factor product law against direct simulation on a
// two-sided rational fixture and a killed one-sided fixture, plus a
// perturbed negative control that must fail.
bool factorization_tests() {
  LevyModel rational = rational_fixture();
  TestReport a = test_factorization(rational, 100000, kSeed);
  bool ok = a.pass;

  LevyModel onesided = onesided_fixture();
  TestReport b = test_factorization(onesided, 100000, kSeed);
  ok = ok && b.pass;

  // 10% perturbation of the beta parameter (true gamma_q = 2).
  Factorization f = build_factorization(onesided);
  f.rhs.minus_param = 2.2;
  TestReport control =
      test_factorization(onesided, f, 100000, kSeed, {}, true);
  return ok && !control.pass;
}

// Criterion 4: the Mellin recursion E[I^z] = -(z/Psi_q(z)) E[I^{z-1}], by
// quadrature on a closed-form density and empirically on draws.
bool mellin_recursion() {
  std::vector<double> z_grid;
  for (int i = 1; i <= 9; ++i) z_grid.push_back(0.1 * i);
  double residual = mellin_recursion_check(
      closed_density, make_exponent(drift_subordinator()), z_grid);
  bool ok = residual < 1e-8;

  LevyModel m = onesided_fixture();
  SampleSet draws = sample_functional(m, 100000, kSeed);
  double worst = mellin_recursion_check(draws.draws, make_exponent(m),
                                        {0.5, 1.0, 1.5, 2.0});
  return ok && worst < 3.0;
}

// Criterion 5: the ladder-measure identity on two cases with closed-form
// potential and ladder measures.
bool ladder_measure_identity() {
  std::vector<double> ys;
  for (int i = 0; i < 21; ++i) ys.push_back(0.1 + 0.245 * i);

  // Case 1: phi_-(s) = -(1+s), potential density e^{-r}; jump tail e^{-2y}
  // gives ascending tail e^{-2y}/3.
  PotentialMeasure pot1 = potential_measure(
      LadderExponent::descending(1.0, 1.0, JumpSpec::none()));
  double r1 = vigon_check([](double y) { return std::exp(-2.0 * y); }, pot1,
                          [](double y) { return std::exp(-2.0 * y) / 3.0; },
                          ys);

  // Case 2: phi_- = -2 (pure kill), potential atom 1/2; tail e^{-y} halves.
  PotentialMeasure pot2 = potential_measure(
      LadderExponent::descending(2.0, 0.0, JumpSpec::none()));
  double r2 = vigon_check([](double y) { return std::exp(-y); }, pot2,
                          [](double y) { return std::exp(-y) / 2.0; }, ys);
  return r1 < 1e-8 && r2 < 1e-8;
}

// Criterion 6: the spectrally negative density built from an exponential
// descending-functional density, with its polynomial tail limit.
bool spectrally_negative_density() {
  auto m_minus = [](double y) { return std::exp(-y); };
  std::vector<double> xs;
  for (int i = 0; i <= 30; ++i)
    xs.push_back(0.1 * std::pow(1000.0, i / 30.0));  // log grid [0.1, 100]
  SpectralNegDensity d = density_spectrally_negative(m_minus, 1.0, xs);
  bool ok = true;
  for (size_t i = 0; i < xs.size(); ++i)
    ok = ok && std::abs(d.values[i] - closed_density(xs[i])) < 1e-8;

  SpectralNegDensity far = density_spectrally_negative(m_minus, 1.0, {1e4});
  double scaled = 1e4 * 1e4 * far.values[0];
  return ok && std::abs(scaled - 1.0) < 0.01;
}

// Criterion 7: the two gamma-family expansions agree at an interior
// crossing, at zero, and in the tail limit.
bool gamma_family_expansions() {
  const double alpha = 0.5, gamma = 0.4, alpha_prime = 0.3;
  DensitySeries small =
      gamma_family_series(alpha, gamma, alpha_prime, GammaRegime::SmallX);
  DensitySeries large =
      gamma_family_series(alpha, gamma, alpha_prime, GammaRegime::LargeX);

  auto diff = [&](double x) { return small.eval(x) - large.eval(x); };
  double lo = 1.0, hi = 2.0;
  if (!(diff(lo) < 0.0 && diff(hi) > 0.0)) return false;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (diff(mid) < 0.0 ? lo : hi) = mid;
  }
  double x_star = 0.5 * (lo + hi);
  bool ok = std::abs(small.eval(x_star) - large.eval(x_star)) < 1e-6 &&
            x_star > 1.0 && x_star < 2.0;

  double m0 = std::pow(gamma, alpha) * gamma_fn(alpha_prime + 1.0);
  ok = ok && std::abs(small.eval(0.0) / m0 - 1.0) < 1e-8;

  // Tail: m(x) ~ K x^{-l-1} with l = 1/alpha_prime.
  double l = 1.0 / alpha_prime;
  double k = l * gamma_fn(l + 1.0) *
             std::exp(alpha * (lgamma_signed(gamma + 1.0).log -
                               lgamma_signed(l + 1.0 + gamma).log));
  double tail = std::pow(1e4, l + 1.0) * large.eval(1e4);
  return ok && std::abs(tail / k - 1.0) < 1e-8;
}

// Criterion 8: stable first passage: exact kill rate, the root identity
// gamma_q = 1 - 1/alpha, the Brownian supremum law, and the shape
// diagnostics in the monotone-density regime.
bool stable_passage() {
  bool ok = std::abs(stable_kill_rate({0.5, 0.5}) - 0.39894228040143268) <
            1e-12;
  for (double alpha : {1.2, 1.5, 2.0}) {
    StableParams p{alpha, 1.0 - 1.0 / alpha};
    ok = ok && std::abs(stable_gamma_q(p) - (1.0 - 1.0 / alpha)) < 1e-10;
  }

  // alpha = 2: S_1^2 / 2 = 1/(2 T_1) is chi-squared with one degree of
  // freedom; compare histogram density estimates at three points.
  SampleSet t1 = sample_functional(stable_surrogate_model({2.0, 0.5}),
                                   1000000, kSeed);
  std::vector<double> v(t1.draws.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = 0.5 / t1.draws[i];
  for (double x : {0.5, 1.0, 2.0}) {
    DensityEstimate est = histogram_density(v, x, 0.05);
    double target = std::exp(-0.5 * x) / std::sqrt(2.0 * std::numbers::pi * x);
    ok = ok && std::abs(est.value - target) / est.se < 3.0;
  }

  PassageLaw law = passage_time_law({0.5, 0.5}, 200000, kSeed);
  return ok && law.t1_monotone_applies && law.t1_monotone &&
         law.s1a_log_convex;
}

// Criterion 9: the killed-to-unkilled transform: semigroup composition, the
// factor-level identity, the transformed mean, and the length-biased
// reweighting law.
bool exponent_transform() {
  LevyModel m = rational_fixture();
  LaplaceExponent psi = make_exponent(m);

  LaplaceExponent two_step = tbeta_transform(tbeta_transform(psi, 0.8), 0.7);
  LaplaceExponent direct = tbeta_transform(psi, 1.5);
  bool ok = true;
  for (double s : {0.3, 1.1, 2.5})
    ok = ok && std::abs(two_step(s) - direct(s)) < 1e-12;

  RationalFactors rf = rational_factors(m);
  TransformedLadder tl = tbeta_on_ladder(rf.phi_minus, rf.phi_plus, 1.5);
  for (double s : {0.2, 0.8, 1.6, 2.3})
    ok = ok &&
         std::abs(-tl.transformed_minus(s) * tl.shifted_plus(s) - direct(s)) <
             1e-10;

  LevyModel transformed = tbeta_model(m, 1.5);
  double mean = make_exponent(transformed).mean();
  ok = ok && std::abs(mean / (psi(1.5) / 1.5) - 1.0) < 1e-6;

  TestReport bias = test_length_bias(drift_subordinator(), 0.5, 100000, kSeed);
  return ok && bias.pass;
}

}  // namespace

int main() {
  run(1, "density series vs closed form", 1.0, density_series_closed_form);
  run(2, "moment ladders with monte carlo cross-checks", 30.0,
      moment_ladders_and_monte_carlo);
  run(3, "factorization product-law tests", 120.0, factorization_tests);
  run(4, "mellin moment recursion", 0.0, mellin_recursion);
  run(5, "ladder measure identity closed forms", 0.0,
      ladder_measure_identity);
  run(6, "spectrally negative density and tail", 0.0,
      spectrally_negative_density);
  run(7, "gamma family expansion cross-agreement", 0.0,
      gamma_family_expansions);
  run(8, "stable first-passage laws", 300.0, stable_passage);
  run(9, "exponent transform identities", 0.0, exponent_transform);
  return g_failures;
}
