// Special functions, Laplace exponent evaluation, and the killed-to-unkilled
// exponent transform, checked against closed forms.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <optional>

#include "levyfn/errors.hpp"
#include "levyfn/exponent.hpp"
#include "levyfn/jumps.hpp"
#include "levyfn/ladders.hpp"
#include "levyfn/special.hpp"
#include "levyfn/transform.hpp"

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

// Gaussian part, kill, and one exponential jump component per side; all
// ladder quantities have closed forms through the quartic root split.
LevyModel rational_fixture() {
  LevyModel m;
  m.drift = -0.3;
  m.gaussian = 0.25;
  m.kill = 2.0;
  m.jumps = JumpSpec::exponential_two_sided(0.5, 6.0, 1.0, 2.0);
  return m;
}

LevyModel drift_subordinator() {
  LevyModel m;
  m.drift = 1.0;
  m.kill = 1.0;
  return m;
}

}  // namespace

TEST_CASE("signed log gamma and reciprocal gamma") {
  const double sqrt_pi = std::sqrt(M_PI);

  SignedLogGamma half = lgamma_signed(0.5);
  CHECK(half.sign == 1);
  CHECK(half.log == doctest::Approx(std::log(sqrt_pi)).epsilon(1e-14));

  SignedLogGamma neg_half = lgamma_signed(-0.5);
  CHECK(neg_half.sign == -1);
  CHECK(neg_half.log == doctest::Approx(std::log(2 * sqrt_pi)).epsilon(1e-14));

  CHECK(lgamma_signed(-1.0).sign == 0);
  CHECK(lgamma_signed(0.0).sign == 0);

  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(code_of([] { gamma_fn(-2.0); }) == ErrorCode::ParameterViolation);

  CHECK(reciprocal_gamma(-2.0) == 0.0);
  CHECK(reciprocal_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(reciprocal_gamma(0.5) == doctest::Approx(1 / sqrt_pi).epsilon(1e-14));

  // Gamma(3)/Gamma(2) = 2 and Gamma(1.5)/Gamma(-0.5) = -1/4.
  CHECK(gamma_ratio(3.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gamma_ratio(1.5, -0.5) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("exponential integral frozen values") {
  CHECK(expint_e1(0.1) == doctest::Approx(1.8229239584193907).epsilon(1e-14));
  CHECK(expint_e1(0.5) == doctest::Approx(0.55977359477616081).epsilon(1e-14));
  CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-14));
  CHECK(expint_e1(2.0) == doctest::Approx(0.04890051070806112).epsilon(1e-14));
}

TEST_CASE("kolmogorov tail and log1p helper") {
  // p > 0.01 corresponds to lambda < 1.628.
  CHECK(kolmogorov_q(1.628) < 0.01);
  CHECK(kolmogorov_q(1.627) > 0.0099);
  CHECK(kolmogorov_q(0.5) > 0.95);

  CHECK(log1p_minus_x(0.5) ==
        doctest::Approx(std::log(1.5) - 0.5).epsilon(1e-14));
  CHECK(log1p_minus_x(1e-8) == doctest::Approx(-0.5e-16).epsilon(1e-6));
}

TEST_CASE("polynomial roots") {
  // x^3 - 7x + 6 = (x-1)(x-2)(x+3)
  auto roots = real_poly_roots({6.0, -7.0, 0.0, 1.0});
  REQUIRE(roots.size() == 3);
  double sum = 0, prod = 1;
  for (const auto& r : roots) {
    CHECK(std::abs(r.imag()) < 1e-12);
    sum += r.real();
    prod *= r.real();
  }
  CHECK(sum == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(prod == doctest::Approx(-6.0).epsilon(1e-10));
}

TEST_CASE("exponent closed forms") {
  LevyModel drift = drift_subordinator();
  CHECK(eval_exponent(drift, 0.7) == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(eval_exponent(drift, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));

  LevyModel bm;
  bm.drift = -0.5;
  bm.gaussian = 1.0;
  bm.kill = 3.0;
  CHECK(eval_exponent(bm, 2.0) == doctest::Approx(-2.0).epsilon(1e-14));
  // (1/2)(s-3)(s+2)
  CHECK(eval_exponent(bm, 5.0) == doctest::Approx(7.0).epsilon(1e-14));

  LevyModel rat = rational_fixture();
  CHECK(eval_exponent(rat, 0.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(eval_exponent(rat, 3.0) ==
        doctest::Approx(-1.2296709582555910).epsilon(1e-12));
  CHECK(rat.jumps.compensation() ==
        doctest::Approx(-0.21510968058146967).epsilon(1e-12));
}

TEST_CASE("exponent strip guard and mean") {
  LaplaceExponent psi = make_exponent(rational_fixture());
  CHECK(psi.theta_min() == doctest::Approx(-2.0));
  CHECK(psi.theta_max() == doctest::Approx(6.0));
  CHECK(psi(5.9) > 0);
  CHECK(code_of([&] { psi(6.0); }) == ErrorCode::StripViolation);
  CHECK(code_of([&] { psi(-2.0); }) == ErrorCode::StripViolation);

  // mean = b - c1 + lambda+/eta+ - lambda-/eta-
  double mean = -0.3 + 0.21510968058146967 + 0.5 / 6.0 - 0.5;
  CHECK(psi.mean() == doctest::Approx(mean).epsilon(1e-8));

  LevyModel bad;
  bad.gaussian = -1.0;
  CHECK(code_of([&] { validate_model(bad); }) == ErrorCode::ParameterViolation);
}

TEST_CASE("transform composition law") {
  LaplaceExponent psi = make_exponent(rational_fixture());
  LaplaceExponent t1 = tbeta_transform(psi, 0.8);
  LaplaceExponent t12 = tbeta_transform(t1, 0.7);
  LaplaceExponent direct = tbeta_transform(psi, 1.5);
  for (double s : {0.3, 1.1, 2.5}) {
    CHECK(t12(s) == doctest::Approx(direct(s)).epsilon(1e-13));
  }
  // Transformed exponents are unkilled.
  CHECK(std::abs(direct(0.0)) < 1e-12);
  CHECK(t1.kill() == 0.0);
}

TEST_CASE("transform mean identity") {
  LaplaceExponent psi = make_exponent(rational_fixture());
  double beta = 1.5;
  LaplaceExponent t = tbeta_transform(psi, beta);
  CHECK(t.mean() == doctest::Approx(psi(beta) / beta).epsilon(1e-6));

  CHECK(code_of([&] { tbeta_transform(psi, -1.0); }) == ErrorCode::BadBeta);
  CHECK(code_of([&] { tbeta_transform(psi, 100.0); }) == ErrorCode::BadBeta);
}

TEST_CASE("transform of the drift subordinator in triplet form") {
  // T_{1/2} of Psi_q(s) = s - 1 equals s - s/(s+1/2): natural drift 1 plus
  // one negative exponential component of mass 1 and rate 1/2.
  LevyModel t = tbeta_model(drift_subordinator(), 0.5);
  CHECK(t.kill == 0.0);
  CHECK(t.gaussian == 0.0);
  REQUIRE(t.jumps.exp_minus().size() == 1);
  CHECK(t.jumps.exp_plus().empty());
  CHECK(t.jumps.exp_minus()[0].mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.jumps.exp_minus()[0].rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.drift == doctest::Approx(0.81959197913790026).epsilon(1e-12));

  LaplaceExponent ref = tbeta_transform(make_exponent(drift_subordinator()), 0.5);
  for (double s : {0.3, 1.0, 2.0}) {
    CHECK(eval_exponent(t, s) == doctest::Approx(ref(s)).epsilon(1e-12));
  }
  CHECK(make_exponent(t).mean() == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("transform acts factor-wise on the ladder pair") {
  LevyModel model = rational_fixture();
  RationalFactors rf = rational_factors(model);
  LaplaceExponent psi = make_exponent(model);
  double beta = 1.5;
  TransformedLadder tl = tbeta_on_ladder(rf.phi_minus, rf.phi_plus, beta);
  LaplaceExponent ref = tbeta_transform(psi, beta);
  for (double s : {0.2, 0.8, 1.6, 2.3}) {
    double composed = -tl.transformed_minus(s) * tl.shifted_plus(s);
    CHECK(composed == doctest::Approx(ref(s)).epsilon(1e-10));
  }
  // The transformed descending factor is again unkilled.
  CHECK(std::abs(tl.transformed_minus(0.0)) < 1e-12);
  CHECK(tl.transformed_minus(1.0) < 0);
}

TEST_CASE("largest admissible shift") {
  LaplaceExponent psi = make_exponent(rational_fixture());
  BetaStarResult bs = beta_star(psi, 6.0);
  CHECK_FALSE(bs.no_solution);
  CHECK(bs.value == doctest::Approx(4.0038646278030851).epsilon(1e-9));

  // Unkilled subordinator: Psi(s) = s >= 0 on (0, inf), no admissible shift.
  LevyModel unkilled;
  unkilled.drift = 1.0;
  BetaStarResult none = beta_star(make_exponent(unkilled), 10.0);
  CHECK(none.no_solution);
}
