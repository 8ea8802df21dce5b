// Wiener-Hopf ladder factors: rational split, one-sided root factors,
// potential measures, the ascending-measure identity, and moment ladders.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <optional>

#include "levyfn/errors.hpp"
#include "levyfn/exponent.hpp"
#include "levyfn/jumps.hpp"
#include "levyfn/ladders.hpp"
#include "levyfn/moments.hpp"
#include "levyfn/special.hpp"

using namespace levyfn;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

LevyModel rational_fixture() {
  LevyModel m;
  m.drift = -0.3;
  m.gaussian = 0.25;
  m.kill = 2.0;
  m.jumps = JumpSpec::exponential_two_sided(0.5, 6.0, 1.0, 2.0);
  return m;
}

LevyModel brownian_killed() {
  LevyModel m;
  m.drift = -0.5;
  m.gaussian = 1.0;
  m.kill = 3.0;
  return m;
}

}  // namespace

TEST_CASE("rational split reproduces the frozen roots and factors") {
  RationalFactors rf = rational_factors(rational_fixture());
  CHECK(rf.b1 == doctest::Approx(4.0038646278030851).epsilon(1e-12));
  CHECK(rf.b2 == doctest::Approx(7.1773917860566298).epsilon(1e-12));
  CHECK(rf.r1 == doctest::Approx(1.2792086331482080).epsilon(1e-12));
  CHECK(rf.r2 == doctest::Approx(5.2229252253632643).epsilon(1e-12));
  CHECK(rf.a_plus == doctest::Approx(0.35355339059327376).epsilon(1e-14));
  CHECK(rf.a_minus == rf.a_plus);

  CHECK(rf.phi_plus.kill() ==
        doctest::Approx(1.6933619419695025).epsilon(1e-12));
  CHECK(rf.phi_minus.kill() ==
        doctest::Approx(1.1810824079782112).epsilon(1e-12));
  REQUIRE(rf.phi_plus.measure().exp_plus().size() == 1);
  CHECK(rf.phi_plus.measure().exp_plus()[0].mass ==
        doctest::Approx(0.13848883068374618).epsilon(1e-10));
  CHECK(rf.phi_plus.measure().exp_plus()[0].rate == doctest::Approx(6.0));
  REQUIRE(rf.phi_minus.measure().exp_plus().size() == 1);
  CHECK(rf.phi_minus.measure().exp_plus()[0].mass ==
        doctest::Approx(0.41066228260329803).epsilon(1e-10));
  CHECK(rf.phi_minus.measure().exp_plus()[0].rate == doctest::Approx(2.0));

  // phi_+(s) = -a (b1-s)(b2-s)/(eta_+ - s)
  double s = 1.0;
  double expect =
      -rf.a_plus * (rf.b1 - s) * (rf.b2 - s) / (6.0 - s);
  CHECK(rf.phi_plus(s) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("composed factors reproduce the exponent") {
  LevyModel model = rational_fixture();
  RationalFactors rf = rational_factors(model);
  LaplaceExponent composed = compose_factors(rf.phi_plus, rf.phi_minus);
  // Value at zero is minus the product of the two kill rates, equal to q.
  CHECK(composed(0.0) == doctest::Approx(-2.0).epsilon(1e-12));
  for (double s : {-1.5, -0.5, 0.5, 1.4, 3.7, 5.5}) {
    double scale = std::max(1.0, std::abs(eval_exponent(model, s)));
    CHECK(std::abs(composed(s) - eval_exponent(model, s)) < 1e-10 * scale);
  }
}

TEST_CASE("ascending factor lifts to the spectrally positive model") {
  RationalFactors rf = rational_factors(rational_fixture());
  LevyModel pm = psi_plus_model(rf.phi_plus);
  CHECK(pm.kill == 0.0);
  CHECK(pm.gaussian == doctest::Approx(0.70710678118654752).epsilon(1e-12));
  REQUIRE(pm.jumps.exp_plus().size() == 1);
  CHECK(pm.jumps.exp_plus()[0].mass ==
        doctest::Approx(0.83093298410247705).epsilon(1e-10));
  // Exponent is s phi_+(s); mean is phi_+(0) = -q_+.
  for (double s : {0.5, 2.0, 4.0}) {
    CHECK(eval_exponent(pm, s) ==
          doctest::Approx(s * rf.phi_plus(s)).epsilon(1e-10));
  }
  CHECK(make_exponent(pm).mean() ==
        doctest::Approx(-1.6933619419695025).epsilon(1e-6));
}

TEST_CASE("descending factor lifts to the negated subordinator model") {
  RationalFactors rf = rational_factors(rational_fixture());
  LevyModel dm = descending_model(rf.phi_minus);
  CHECK(dm.kill == doctest::Approx(rf.phi_minus.kill()).epsilon(1e-14));
  for (double s : {-1.0, 0.5, 3.0}) {
    CHECK(eval_exponent(dm, s) ==
          doctest::Approx(rf.phi_minus(s)).epsilon(1e-10));
  }
}

TEST_CASE("one-sided factors for the killed Brownian fixture") {
  LevyModel m = brownian_killed();  // Psi_q(s) = (1/2)(s-3)(s+2)
  OneSidedFactors f = spectrally_onesided_factors(m);
  CHECK(f.which == OneSidedCase::SpectrallyPositive);
  CHECK(f.gamma_q == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(f.phi_minus.has_triplet());
  CHECK(f.phi_minus.kill() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(f.phi_minus.delta() == doctest::Approx(1.0).epsilon(1e-10));
  // phi_+(s) = Psi_q(s)/(s+2) = (s-3)/2
  CHECK(f.phi_plus(1.0) == doctest::Approx(-1.0).epsilon(1e-10));
  LaplaceExponent composed = compose_factors(f.phi_plus, f.phi_minus);
  for (double s : {-1.5, 1.0, 4.0}) {
    double scale = std::max(1.0, std::abs(eval_exponent(m, s)));
    CHECK(std::abs(composed(s) - eval_exponent(m, s)) < 1e-10 * scale);
  }
}

TEST_CASE("one-sided factors for a spectrally negative model") {
  LevyModel m;
  m.drift = 0.2;
  m.gaussian = 1.0;
  m.kill = 1.0;
  m.jumps = JumpSpec::exponential_two_sided(0.0, 1.0, 0.5, 3.0);
  OneSidedFactors f = spectrally_onesided_factors(m);
  CHECK(f.which == OneSidedCase::SpectrallyNegative);
  CHECK(f.gamma_q > 0);
  CHECK(std::abs(eval_exponent(m, f.gamma_q)) < 1e-9);
  LaplaceExponent composed = compose_factors(f.phi_plus, f.phi_minus);
  for (double s : {-0.5, 0.7, 1.9}) {
    double scale = std::max(1.0, std::abs(eval_exponent(m, s)));
    CHECK(std::abs(composed(s) - eval_exponent(m, s)) < 1e-10 * scale);
  }
}

TEST_CASE("no root without killing and downward drift") {
  // Subordinator, unkilled: Psi(-s) stays negative for s > 0.
  LevyModel m;
  m.drift = 1.0;
  m.jumps = JumpSpec::compound_poisson({{0.5, 2.0}}, {});
  CHECK(code_of([&] { spectrally_onesided_factors(m); }) == ErrorCode::NoRoot);

  // A Gaussian component always restores the root: Psi(-s) = s^2/2 - s.
  LevyModel bm;
  bm.drift = 1.0;
  bm.gaussian = 1.0;
  OneSidedFactors f = spectrally_onesided_factors(bm);
  CHECK(f.which == OneSidedCase::SpectrallyPositive);
  CHECK(f.gamma_q == doctest::Approx(2.0).epsilon(1e-10));

  CHECK(positive_convex_root([](double x) { return x * x - 4.0; }, 100.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("potential measure closed forms") {
  // Pure kill: atom of mass 1/q at zero.
  PotentialMeasure atom =
      potential_measure(LadderExponent::descending(2.0, 0.0, JumpSpec::none()));
  CHECK(atom.atom0 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(atom.terms.empty());
  CHECK(atom.total_mass == doctest::Approx(0.5).epsilon(1e-14));

  // Kill plus drift: density (1/delta) e^{-(q/delta) r}.
  PotentialMeasure expo =
      potential_measure(LadderExponent::descending(1.0, 1.0, JumpSpec::none()));
  CHECK(expo.atom0 == doctest::Approx(0.0));
  CHECK(expo.density(0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-12));
  CHECK(expo.laplace(2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(expo.total_mass == doctest::Approx(1.0).epsilon(1e-12));

  // Exponential-mixture factor: Laplace transform matches -1/phi_-.
  RationalFactors rf = rational_factors(rational_fixture());
  PotentialMeasure pot = potential_measure(rf.phi_minus);
  for (double s : {0.3, 1.7, 4.0}) {
    CHECK(pot.laplace(s) ==
          doctest::Approx(-1.0 / rf.phi_minus(s)).epsilon(1e-10));
  }
  CHECK(pot.total_mass ==
        doctest::Approx(1.0 / rf.phi_minus.kill()).epsilon(1e-10));
}

TEST_CASE("ascending measure identity in closed form") {
  std::vector<double> ys;
  for (int i = 1; i <= 21; ++i) ys.push_back(0.1 + (i - 1) * 0.245);

  // Case 1: phi_-(s) = -(1+s), potential density e^{-r};
  // model tail e^{-2y} gives ascending tail e^{-2y}/3.
  PotentialMeasure pot1 =
      potential_measure(LadderExponent::descending(1.0, 1.0, JumpSpec::none()));
  double res1 = vigon_check([](double y) { return std::exp(-2 * y); }, pot1,
                            [](double y) { return std::exp(-2 * y) / 3.0; }, ys);
  CHECK(res1 < 1e-8);

  // Case 2: phi_- = -2 (pure kill), atom 1/2; tail e^{-y} halves.
  PotentialMeasure pot2 =
      potential_measure(LadderExponent::descending(2.0, 0.0, JumpSpec::none()));
  double res2 = vigon_check([](double y) { return std::exp(-y); }, pot2,
                            [](double y) { return std::exp(-y) / 2.0; }, ys);
  CHECK(res2 < 1e-8);

  // A 5% perturbation of the candidate measure is detected.
  double res_bad =
      vigon_check([](double y) { return std::exp(-2 * y); }, pot1,
                  [](double y) { return 1.05 * std::exp(-2 * y) / 3.0; }, ys);
  CHECK(res_bad > 1e-3);
}

TEST_CASE("descending moment ladder closed forms") {
  // phi(s) = -(1+s): M_m = 1/(m+1).
  MomentLadder uniform = moments_descending(
      LadderExponent::descending(1.0, 1.0, JumpSpec::none()), 20);
  REQUIRE(uniform.size() == 20);
  CHECK(uniform.moment(0) == doctest::Approx(1.0));
  for (int m = 1; m <= 20; ++m) {
    CHECK(std::abs(uniform.moment(m) - 1.0 / (m + 1)) < 1e-12);
  }
  CHECK(uniform.log_convex());

  // phi = -1: moments of a unit exponential.
  MomentLadder expo = moments_descending(
      LadderExponent::descending(1.0, 0.0, JumpSpec::none()), 10);
  double factorial = 1.0;
  for (int m = 1; m <= 10; ++m) {
    factorial *= m;
    CHECK(expo.moment(m) == doctest::Approx(factorial).epsilon(1e-12));
  }

  // phi(s) = -(s+1/2)^{1/2}: M_1 = 1/sqrt(3/2) = sqrt(2/3).
  LadderExponent root_factor = LadderExponent::custom(
      LadderExponent::Side::Descending, std::sqrt(0.5),
      [](double s) { return -std::sqrt(s + 0.5); }, -0.5, 1e30, true);
  MomentLadder one = moments_descending(root_factor, 1);
  CHECK(one.moment(1) == doctest::Approx(0.81649658092772603).epsilon(1e-14));

  // A factor positive at some integer violates the sign requirement.
  LadderExponent bad = LadderExponent::custom(
      LadderExponent::Side::Descending, 2.0,
      [](double s) { return s - 2.0; }, -10.0, 1e30, true);
  CHECK(code_of([&] { moments_descending(bad, 5); }) ==
        ErrorCode::SignViolation);
}

TEST_CASE("negative moments of spectrally positive functionals") {
  // psi(s) = s^2/2 - s/2: E[I^-m] = m!/2^m (reciprocal is exponential rate 2).
  LevyModel bm;
  bm.drift = -0.5;
  bm.gaussian = 1.0;
  MomentLadder neg =
      negative_moments_spectrally_positive(make_exponent(bm), 10);
  CHECK(neg.negative_orders);
  double target = 1.0;
  for (int m = 1; m <= 10; ++m) {
    target *= m / 2.0;
    CHECK(neg.moment(m) == doctest::Approx(target).epsilon(1e-10));
  }
  CHECK(neg.moment(1) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(neg.log_convex());
}

TEST_CASE("negative moments of the Frechet-type exponent") {
  // psi(-s) = s Gamma(a'(s+1)+1)/Gamma(a's+1) with a' = 0.3 has
  // E[I^-m] = Gamma(a'm+1); the density is the printed Frechet law.
  const double ap = 0.3;
  auto fn = [ap](double s) {
    return -s * gamma_fn(ap * (1.0 - s) + 1.0) / gamma_fn(-ap * s + 1.0);
  };
  LaplaceExponent psi(fn, -20.0, 0.99, Provenance::Transformed, 0.0);
  MomentLadder neg = negative_moments_spectrally_positive(psi, 10);
  for (int m = 1; m <= 10; ++m) {
    CHECK(neg.moment(m) ==
          doctest::Approx(gamma_fn(ap * m + 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("integer ladder satisfies the Mellin recursion") {
  LevyModel neg_drift;
  neg_drift.drift = -1.0;
  neg_drift.kill = 1.0;  // exponent -(1+s), matching the descending factor
  MomentLadder uniform = moments_descending(
      LadderExponent::descending(1.0, 1.0, JumpSpec::none()), 12);
  double residual =
      mellin_recursion_check(uniform, make_exponent(neg_drift));
  CHECK(residual < 1e-13);
}
