// Monte Carlo engine: counter-based RNG golden vectors, determinism, path
// schemes against closed-form laws, discretization refinement, and the
// factor right-hand-side shortcut samplers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "levyfn/errors.hpp"
#include "levyfn/exponent.hpp"
#include "levyfn/jumps.hpp"
#include "levyfn/rng.hpp"
#include "levyfn/sampler.hpp"
#include "levyfn/stats.hpp"

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

std::vector<double> reciprocals(const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(1.0 / x);
  return out;
}

}  // namespace

TEST_CASE("philox golden vectors") {
  const uint64_t seed_a[8] = {
      0x0263ae33c1d1dbfaULL, 0x492ffc4bb2717853ULL, 0x3c0c32720395cc2dULL,
      0xf6e8d84b056ac9cdULL, 0x3358e36a21a6ed11ULL, 0xc13438f96f873498ULL,
      0x293ed599eb072ee3ULL, 0x2fa1c6a144911a44ULL};
  Rng a(0xC0FFEE);
  for (uint64_t v : seed_a) CHECK(a.next_u64() == v);

  const uint64_t seed_b[8] = {
      0xbbbdd8b79e38a558ULL, 0xa5a5568001b38d01ULL, 0x2d783f6b10ef9316ULL,
      0x12a41038fd66523cULL, 0x22e9579e3afe64d1ULL, 0xbd3aa0867f73fc5bULL,
      0x10950917a5877882ULL, 0x0b0253471dc2a3f0ULL};
  Rng b(0xC0FFEE, 1);
  for (uint64_t v : seed_b) CHECK(b.next_u64() == v);

  const uint64_t seed_c[8] = {
      0xd3856507eb9785f2ULL, 0x70ba2d239d43acfbULL, 0x603897a48a69dbd0ULL,
      0x9db57d79d495041bULL, 0x5316a57cb8709b19ULL, 0x898a53ef3f08b4c5ULL,
      0x00fee8d0bac2901cULL, 0x4a6454d17447ff5aULL};
  Rng c(123456789);
  for (uint64_t v : seed_c) CHECK(c.next_u64() == v);
}

TEST_CASE("generator distributions and determinism") {
  Rng r1(42), r2(42);
  for (int i = 0; i < 1000; ++i) CHECK(r1.next_u64() == r2.next_u64());

  Rng r(7);
  double sum = 0, sum2 = 0, esum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    double z = r.normal();
    sum += z;
    sum2 += z * z;
    esum += r.exponential();
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
  CHECK(std::abs(esum / n - 1.0) < 0.02);

  double psum = 0;
  for (int i = 0; i < 20000; ++i) psum += r.poisson(3.5);
  CHECK(std::abs(psum / 20000 - 3.5) < 0.08);
}

TEST_CASE("scheme names round trip") {
  CHECK(scheme_name(Scheme::ExactJumpTimes) ==
        std::string("exact-jump-times"));
  CHECK(scheme_from_name("euler-grid") == Scheme::EulerGrid);
  CHECK(scheme_from_name("small-jump-substitution") ==
        Scheme::SmallJumpSubstitution);
  CHECK_FALSE(scheme_from_name("bogus").has_value());
  CHECK(scheme_label(Scheme::EulerGrid, 0.001, 0.0) == "euler-grid(0.001)");
}

TEST_CASE("draws are bit-identical for identical configurations") {
  LevyModel m;
  m.drift = 1.0;
  m.kill = 1.0;
  SampleSet a = sample_functional(m, 2000, 0xC0FFEE);
  SampleSet b = sample_functional(m, 2000, 0xC0FFEE);
  REQUIRE(a.n() == b.n());
  for (size_t i = 0; i < a.n(); ++i) CHECK(a.draws[i] == b.draws[i]);
  CHECK(a.seed == 0xC0FFEE);
  CHECK(a.scheme == Scheme::ExactJumpTimes);

  SampleSet c = sample_functional(m, 2000, 0xC0FFEF);
  int differing = 0;
  for (size_t i = 0; i < c.n(); ++i) differing += (a.draws[i] != c.draws[i]);
  CHECK(differing > 1900);
}

TEST_CASE("killed drift subordinator matches its closed-form law") {
  LevyModel m;
  m.drift = 1.0;
  m.kill = 1.0;  // P(I <= x) = x/(1+x)
  SampleSet ss = sample_functional(m, 20000, 1);
  for (double x : ss.draws) CHECK(x > 0);
  KsResult ks =
      ks_one_sample(ss.draws, [](double x) { return x / (1.0 + x); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("killed downward drift uses the bounded closed form") {
  LevyModel m;
  m.drift = -2.0;
  m.kill = 1.0;  // I = (1 - e^{-2 e_1})/2, P(I <= x) = 1 - sqrt(1-2x)
  SampleSet ss = sample_functional(m, 10000, 2);
  for (double x : ss.draws) {
    CHECK(x > 0);
    CHECK(x < 0.5);
  }
  KsResult ks = ks_one_sample(
      ss.draws, [](double x) { return 1.0 - std::sqrt(1.0 - 2.0 * x); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("brownian functional with negative drift, plain and chained") {
  LevyModel m;
  m.drift = -0.5;
  m.gaussian = 1.0;  // 1/I ~ Exp(2): P(I <= x) = e^{-2/x}
  auto cdf = [](double x) { return std::exp(-2.0 / x); };

  SampleSet plain = sample_functional(m, 5000, 3);
  CHECK(ks_one_sample(plain.draws, cdf).p_value > 0.01);

  SampleSet chained = sample_functional(m, 20000, 4);
  CHECK(ks_one_sample(chained.draws, cdf).p_value > 0.01);

  MomentStat inv = moment_vs_value(reciprocals(chained.draws), 1.0, 0.5);
  CHECK(inv.z < 3.5);

  // Plain and chained batches sample the same law.
  SampleSet plain2 = sample_functional(m, 8000, 5);
  KsResult cross = ks_two_sample(plain2.draws, chained.draws);
  CHECK(cross.p_value > 0.01);
  MomentStat cross_m =
      moment_two_sample(reciprocals(plain2.draws), reciprocals(chained.draws),
                        1.0);
  CHECK(cross_m.z < 3.5);
}

TEST_CASE("halving the brownian grid leaves the mean unchanged") {
  LevyModel m = rational_fixture();
  const double mean_target = 0.45594985205694283;
  const double var = 0.47500203182915951 - mean_target * mean_target;

  SamplerOptions coarse;
  coarse.dt = 1e-3;
  SamplerOptions fine;
  fine.dt = 5e-4;
  SampleSet a = sample_functional(m, 20000, 11, coarse);
  SampleSet b = sample_functional(m, 20000, 12, fine);

  MomentStat ma = sample_moment(a.draws, 1.0);
  MomentStat mb = sample_moment(b.draws, 1.0);
  double se = std::sqrt(ma.se * ma.se + mb.se * mb.se);
  CHECK(std::abs(ma.value - mb.value) < 2 * se);

  double se_one = std::sqrt(var / 20000);
  CHECK(std::abs(ma.value - mean_target) < 3.5 * se_one);
  CHECK(std::abs(mb.value - mean_target) < 3.5 * se_one);
}

TEST_CASE("halving the substitution cutoff leaves the mean unchanged") {
  LevyModel m;
  m.drift = 0.3;
  m.kill = 1.0;
  m.jumps = JumpSpec::tilted_stable_tail(0.2, 0.5, 2.0);
  double mean_target = -1.0 / eval_exponent(m, 1.0);
  REQUIRE(mean_target > 0);

  SamplerOptions coarse;
  coarse.eps = 1e-3;
  SamplerOptions fine;
  fine.eps = 5e-4;
  SampleSet a = sample_functional(m, 20000, 21, coarse);
  SampleSet b = sample_functional(m, 20000, 22, fine);
  CHECK(a.scheme == Scheme::SmallJumpSubstitution);

  MomentStat ma = sample_moment(a.draws, 1.0);
  MomentStat mb = sample_moment(b.draws, 1.0);
  double se = std::sqrt(ma.se * ma.se + mb.se * mb.se);
  CHECK(std::abs(ma.value - mb.value) < 2 * se);
  CHECK(moment_vs_value(a.draws, 1.0, mean_target).z < 3.5);
  CHECK(moment_vs_value(b.draws, 1.0, mean_target).z < 3.5);
}

TEST_CASE("exact and euler schemes agree in law") {
  LevyModel m;
  m.drift = 1.0;
  m.kill = 1.0;
  m.jumps = JumpSpec::compound_poisson({{1.0, 3.0}}, {});

  SamplerOptions exact;
  exact.scheme = Scheme::ExactJumpTimes;
  SamplerOptions euler;
  euler.scheme = Scheme::EulerGrid;
  SampleSet a = sample_functional(m, 20000, 31, exact);
  SampleSet b = sample_functional(m, 20000, 32, euler);
  CHECK(ks_two_sample(a.draws, b.draws).p_value > 0.01);
  CHECK(moment_two_sample(a.draws, b.draws, 1.0).z < 3.5);
}

TEST_CASE("right-hand-side sampler: exponential minus factor") {
  // e_1 x I_{s(s-1)}: the plus functional is an inverse unit exponential,
  // so the product has the drift-model law x/(1+x).
  RhsPlan plan;
  plan.minus_kind = MinusKind::ExponentialQ;
  plan.minus_param = 1.0;
  plan.plus_model.drift = -1.0;
  plan.plus_model.gaussian = 2.0;
  SampleSet rhs = sample_factor_rhs(plan, 20000, 41);
  KsResult ks =
      ks_one_sample(rhs.draws, [](double x) { return x / (1.0 + x); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("right-hand-side sampler: beta minus factor") {
  // Beta(1,2) x I_{s(s-3)/2} has mean 1/3. Higher moments diverge, so only
  // the mean is testable with a z statistic.
  RhsPlan plan;
  plan.minus_kind = MinusKind::BetaOneGamma;
  plan.minus_param = 2.0;
  plan.plus_model.drift = -1.5;
  plan.plus_model.gaussian = 1.0;
  SampleSet rhs = sample_factor_rhs(plan, 20000, 42);
  CHECK(moment_vs_value(rhs.draws, 1.0, 1.0 / 3.0).z < 3.5);
}

TEST_CASE("sampler rejects inadmissible configurations") {
  LevyModel diverging;
  diverging.drift = 1.0;  // q = 0 with nonnegative mean
  CHECK(code_of([&] { sample_functional(diverging, 100, 1); }) ==
        ErrorCode::UnkilledNonDrifting);

  LevyModel m;
  m.drift = -0.5;
  m.gaussian = 1.0;
  SamplerOptions bad_dt;
  bad_dt.dt = 0.1;
  CHECK(code_of([&] { sample_functional(m, 100, 1, bad_dt); }) ==
        ErrorCode::ParameterViolation);
  bad_dt.dt = 0.0;
  CHECK(code_of([&] { sample_functional(m, 100, 1, bad_dt); }) ==
        ErrorCode::ParameterViolation);

  LevyModel infinite;
  infinite.drift = 0.3;
  infinite.kill = 1.0;
  infinite.jumps = JumpSpec::tilted_stable_tail(0.2, 0.5, 2.0);
  SamplerOptions exact;
  exact.scheme = Scheme::ExactJumpTimes;
  CHECK(code_of([&] { sample_functional(infinite, 100, 1, exact); }) ==
        ErrorCode::ParameterViolation);
}

TEST_CASE("sample metadata reflects the resolved configuration") {
  LevyModel m;
  m.drift = -0.5;
  m.gaussian = 1.0;
  SamplerOptions opt;
  opt.scheme = Scheme::EulerGrid;
  opt.dt = 5e-4;
  SampleSet ss = sample_functional(m, 500, 9, opt);
  CHECK(ss.scheme == Scheme::EulerGrid);
  CHECK(ss.dt == 5e-4);
  CHECK(ss.seed == 9);
  CHECK(ss.n() == 500);
}
