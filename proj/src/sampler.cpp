#include "levyfn/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyfn/errors.hpp"
#include "levyfn/io.hpp"
#include "levyfn/quadrature.hpp"
#include "levyfn/rng.hpp"
#include "levyfn/special.hpp"

namespace levyfn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream partitioning: the three roles of a batch (direct draws, rhs minus
// factor, rhs plus factor) get disjoint stream ranges under one seed.
constexpr uint64_t kStreamMinus = uint64_t{1} << 40;
constexpr uint64_t kStreamPlus = uint64_t{2} << 40;

// First-passage chain parameters: paths stop at relative level kChainLevel
// (in log scale) and are completed from a pool smaller by the factor
// kPoolMargin * e^{2 kChainLevel} (~0.25), sized so that pool reuse inflates
// the completion variance share by at most 1/kPoolMargin.
constexpr double kChainLevel = -1.25;
constexpr double kPoolMargin = 3.0;
constexpr size_t kPoolFloor = 2000;
constexpr size_t kChainThreshold = 10000;

// exp(d) for |d| <= 0.1 by a degree-6 Taylor polynomial; relative error is
// below 3e-11, which keeps the accumulated path weight bias far below the
// Monte Carlo standard error at 1e-3 step widths.
inline double fast_exp_step(double d) {
  if (d > 0.1 || d < -0.1) return std::exp(d);
  return 1.0 +
         d * (1.0 +
              d * (0.5 +
                   d * (1.0 / 6 +
                        d * (1.0 / 24 + d * (1.0 / 120 + d * (1.0 / 720))))));
}

// One jump source with its Poisson rate and sampling recipe.
struct JumpSource {
  enum class Kind { ExpPlus, ExpMinus, Tilted, LampertiPlus, LampertiMinus };
  Kind kind;
  double rate;
  // ExpPlus/ExpMinus: p1 = eta, p2 = offset (truncation point).
  // Tilted: p1 = c, p2 = alpha, p3 = gamma, p4 = shift, p5 = eps cut.
  // Lamperti: p1 = alpha, p2 = C (its side), p3 = tail at the cut.
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0, p5 = 0;
  double sign = 1.0;
  double mean_abs = 0.0;  // E[|Y|] of one jump from this source
};

double sample_jump(Rng& rng, const JumpSource& src) {
  switch (src.kind) {
    case JumpSource::Kind::ExpPlus:
      return src.p2 + rng.exponential() / src.p1;
    case JumpSource::Kind::ExpMinus:
      return -(src.p2 + rng.exponential() / src.p1);
    case JumpSource::Kind::Tilted: {
      // Density e^{by}(pi_raw(y) - b Pibar_raw(y)) on [eps, inf), dominated
      // by C y^{-a-1} e^{-(g-b) y}; two-stage rejection from a Pareto.
      const double c = src.p1, a = src.p2, g = src.p3, b = src.p4,
                   eps = src.p5;
      for (;;) {
        double y = eps * std::pow(rng.uniform(), -1.0 / a);
        if (rng.uniform() > std::exp(-(g - b) * (y - eps))) continue;
        if (b > 0.0) {
          double pi_raw = c * a / gamma_fn(1.0 - a) * std::pow(y, -a - 1.0) *
                          std::exp(-g * y);
          double ratio = b * jump_detail::tilted_tail(c, a, g, y) / pi_raw;
          if (rng.uniform() < ratio) continue;
        }
        return src.sign * y;
      }
    }
    case JumpSource::Kind::LampertiPlus: {
      // Tail (C/a)(e^{y/a}-1)^{-a} inverts in closed form.
      const double a = src.p1, c = src.p2;
      double t = rng.uniform() * src.p3;
      return a * std::log1p(std::pow(a * t / c, -1.0 / a));
    }
    case JumpSource::Kind::LampertiMinus: {
      // Tail (C/a)((1-e^{y/a})^{-a} - 1) on y < 0.
      const double a = src.p1, c = src.p2;
      double t = rng.uniform() * src.p3;
      return a * std::log1p(-std::pow(1.0 + a * t / c, -1.0 / a));
    }
  }
  return 0.0;
}

struct Kernel {
  double a = 0.0;       // path drift per unit time
  double sig = 0.0;     // sqrt of effective Gaussian coefficient
  double q = 0.0;       // kill rate
  double dt = 1e-3;
  double tail_rel = 1e-6;
  double mean = 0.0;    // E[xi_1] of the simulated dynamics
  std::vector<JumpSource> jumps;
  std::vector<double> cum_rate;
  double total_rate = 0.0;

  bool deterministic() const { return sig == 0.0 && jumps.empty(); }
};

// Mean absolute jump of a source, E[|Y|] = cut * tail(cut) + int tail, via
// the closed-form tails (used only for the stopping proxy, so quadrature
// accuracy is uncritical).
double truncated_tail_mean(const std::function<double(double)>& tail,
                           double cut, double rate) {
  if (rate <= 0.0) return 0.0;
  QuadratureOptions opt;
  opt.rel_tol = 1e-8;
  double integral = integrate_to_inf(tail, cut, opt);
  return cut + integral / rate;
}

Kernel build_kernel(const LevyModel& model, Scheme scheme,
                    const SamplerOptions& opt) {
  Kernel k;
  k.q = model.kill;
  k.dt = opt.dt;
  k.tail_rel = opt.tail_rel;
  if (!(opt.dt > 0.0) || opt.dt > 1e-3)
    fail(ErrorCode::ParameterViolation,
         "sampler: dt must lie in (0, 1e-3]");
  if (!(opt.eps > 0.0))
    fail(ErrorCode::ParameterViolation, "sampler: eps must be positive");

  const JumpSpec& j = model.jumps;
  const bool substitute = scheme == Scheme::SmallJumpSubstitution ||
                          (scheme == Scheme::EulerGrid && !j.finite_activity());
  if (scheme == Scheme::ExactJumpTimes && !j.finite_activity())
    fail(ErrorCode::ParameterViolation,
         "sampler: exact-jump-times requires finite activity; "
         "use small-jump-substitution");

  const double eps = substitute ? opt.eps : 0.0;
  double gaussian = model.gaussian;
  double a = model.drift - j.compensation();
  if (substitute) {
    a += j.mean_inside(eps);
    gaussian += j.variance_inside(eps);
  }
  k.a = a;
  k.sig = std::sqrt(gaussian);

  double jump_mean = 0.0;
  auto push = [&](JumpSource src) {
    if (src.rate <= 0.0) return;
    jump_mean += src.sign * src.rate * src.mean_abs;
    k.total_rate += src.rate;
    k.jumps.push_back(src);
    k.cum_rate.push_back(k.total_rate);
  };

  for (const ExpComponent& c : j.exp_plus()) {
    JumpSource s{JumpSource::Kind::ExpPlus,
                 c.mass * std::exp(-c.rate * eps)};
    s.p1 = c.rate;
    s.p2 = eps;
    s.mean_abs = eps + 1.0 / c.rate;
    push(s);
  }
  for (const ExpComponent& c : j.exp_minus()) {
    JumpSource s{JumpSource::Kind::ExpMinus,
                 c.mass * std::exp(-c.rate * eps)};
    s.p1 = c.rate;
    s.p2 = eps;
    s.sign = -1.0;
    s.mean_abs = eps + 1.0 / c.rate;
    push(s);
  }
  for (const TiltedTail& t : j.tilted()) {
    if (!substitute)
      fail(ErrorCode::ParameterViolation,
           "sampler: tilted tails have infinite activity");
    double tail_eps =
        std::exp(t.shift * eps) * jump_detail::tilted_tail(t.c, t.alpha,
                                                           t.gamma, eps);
    JumpSource s{JumpSource::Kind::Tilted, tail_eps};
    s.p1 = t.c;
    s.p2 = t.alpha;
    s.p3 = t.gamma;
    s.p4 = t.shift;
    s.p5 = eps;
    s.sign = t.side >= 0 ? 1.0 : -1.0;
    auto tail = [&t](double y) {
      return std::exp(t.shift * y) *
             jump_detail::tilted_tail(t.c, t.alpha, t.gamma, y);
    };
    s.mean_abs = truncated_tail_mean(tail, eps, tail_eps);
    push(s);
  }
  if (j.lamperti()) {
    if (!substitute)
      fail(ErrorCode::ParameterViolation,
           "sampler: first-passage measure has infinite activity");
    const LampertiTail& l = *j.lamperti();
    if (l.c_plus > 0.0) {
      double tail_eps = j.tail_plus(eps);
      JumpSource s{JumpSource::Kind::LampertiPlus, tail_eps};
      s.p1 = l.alpha;
      s.p2 = l.c_plus;
      s.p3 = tail_eps;
      auto tail = [&j](double y) { return j.tail_plus(y); };
      s.mean_abs = truncated_tail_mean(tail, eps, tail_eps);
      push(s);
    }
    if (l.c_minus > 0.0) {
      double tail_eps = j.tail_minus(-eps);
      JumpSource s{JumpSource::Kind::LampertiMinus, tail_eps};
      s.p1 = l.alpha;
      s.p2 = l.c_minus;
      s.p3 = tail_eps;
      s.sign = -1.0;
      auto tail = [&j](double y) { return j.tail_minus(-y); };
      s.mean_abs = truncated_tail_mean(tail, eps, tail_eps);
      push(s);
    }
  }
  k.mean = k.a + jump_mean;
  return k;
}

int pick_source(Rng& rng, const Kernel& k) {
  double u = rng.uniform() * k.total_rate;
  auto it = std::upper_bound(k.cum_rate.begin(), k.cum_rate.end(), u);
  size_t i = static_cast<size_t>(it - k.cum_rate.begin());
  return static_cast<int>(std::min(i, k.jumps.size() - 1));
}

enum class StopRule { KilledTime, Level, TailProxy };

struct PathResult {
  double integral = 0.0;
  double weight = 1.0;
};

// Core path walk. limit means: KilledTime -> lifetime T; Level -> stop once
// the weight e^{xi} falls to wstop or below; TailProxy -> stop once
// weight < limit * integral (limit = tail_rel * |mean|).
PathResult run_path(Rng& rng, const Kernel& k, StopRule rule, double limit) {
  double I = 0.0, w = 1.0;
  double remaining = rule == StopRule::KilledTime ? limit : kInf;
  // Drift-only unkilled paths with no jumps never reach this function.
  for (;;) {
    double seg = k.total_rate > 0.0 ? rng.exponential() / k.total_rate : kInf;
    bool jump_at_end = true;
    if (seg >= remaining) {
      seg = remaining;
      jump_at_end = false;
    }
    if (k.sig == 0.0) {
      // Closed-form drift segment.
      if (rule == StopRule::Level && k.a < 0.0) {
        double w_end = w * std::exp(k.a * seg);
        if (w_end <= limit) {
          // Exact passage: integrate up to the crossing of the level.
          I += (limit - w) / k.a;
          return {I, limit};
        }
      }
      if (std::isinf(seg)) {
        // No jumps, no noise: the tail integral is exact.
        if (k.a >= 0.0)
          fail(ErrorCode::UnkilledNonDrifting,
               "sampler: deterministic path does not drift to -inf");
        I += -w / k.a;
        return {I, 0.0};
      }
      double g = std::exp(k.a * seg);
      I += k.a != 0.0 ? w * (g - 1.0) / k.a : w * seg;
      w *= g;
    } else {
      double chunk_cap = 8192.0 * k.dt;
      double left = seg;
      bool stopped = false;
      while (left > 0.0) {
        double chunk = std::min(left, chunk_cap);
        long n = std::max(1L, static_cast<long>(std::ceil(chunk / k.dt)));
        double h = chunk / n;
        double ah = k.a * h, sh = k.sig * std::sqrt(h), half_h = 0.5 * h;
        for (long i = 0; i < n; ++i) {
          double e = fast_exp_step(ah + sh * rng.normal());
          double wn = w * e;
          I += half_h * (w + wn);
          w = wn;
          if (rule == StopRule::Level) {
            if (w <= limit) {
              stopped = true;
              break;
            }
          } else if (rule == StopRule::TailProxy) {
            if (w < limit * I) {
              stopped = true;
              break;
            }
          }
        }
        if (stopped) break;
        left -= chunk;
      }
      if (stopped) return {I, w};
    }
    if (!jump_at_end) return {I, w};
    if (rule == StopRule::KilledTime) remaining -= seg;
    w *= std::exp(sample_jump(rng, k.jumps[pick_source(rng, k)]));
    if (rule == StopRule::Level && w <= limit) return {I, w};
    if (rule == StopRule::TailProxy && w < limit * I && I > 0.0) return {I, w};
  }
}

double run_killed(Rng& rng, const Kernel& k) {
  double T = rng.exponential() / k.q;
  if (k.deterministic()) {
    if (k.a == 0.0) return T;
    return std::expm1(k.a * T) / k.a;
  }
  return run_path(rng, k, StopRule::KilledTime, T).integral;
}

double run_unkilled_plain(Rng& rng, const Kernel& k) {
  if (k.deterministic()) {
    if (k.a >= 0.0)
      fail(ErrorCode::UnkilledNonDrifting,
           "sampler: q = 0 and the path does not drift to -inf");
    return -1.0 / k.a;
  }
  return run_path(rng, k, StopRule::TailProxy, k.tail_rel * std::fabs(k.mean))
      .integral;
}

double run_euler(Rng& rng, const Kernel& k) {
  // Left-endpoint accumulation on a fixed grid; jumps bundled per cell.
  double I = 0.0, w = 1.0;
  const double h = k.dt;
  const double sh = k.sig * std::sqrt(h);
  const double stop = k.q == 0.0 ? k.tail_rel * std::fabs(k.mean) : 0.0;
  double T = k.q > 0.0 ? rng.exponential() / k.q : kInf;
  double t = 0.0;
  while (t < T) {
    double step_h = std::min(h, T - t);
    I += w * step_h;
    double d = k.a * step_h + sh * std::sqrt(step_h / h) * rng.normal();
    uint64_t m = k.total_rate > 0.0 ? rng.poisson(k.total_rate * step_h) : 0;
    for (uint64_t i = 0; i < m; ++i)
      d += sample_jump(rng, k.jumps[pick_source(rng, k)]);
    w *= std::exp(d);
    t += step_h;
    if (k.q == 0.0 && w < stop * I) break;
  }
  return I;
}

std::vector<double> chain_sample(const Kernel& k, size_t n, uint64_t seed,
                                 uint64_t stream_base) {
  std::vector<size_t> sizes{n};
  double shrink = kPoolMargin * std::exp(2.0 * kChainLevel);
  while (sizes.back() > kPoolFloor) {
    size_t next = static_cast<size_t>(
        std::ceil(static_cast<double>(sizes.back()) * shrink));
    sizes.push_back(std::max(next, kPoolFloor));
  }
  // Stream indices are assigned bottom level first so pool sizes do not
  // perturb the streams of deeper levels.
  std::vector<uint64_t> bases(sizes.size());
  uint64_t next_base = stream_base;
  for (size_t lvl = sizes.size(); lvl-- > 0;) {
    bases[lvl] = next_base;
    next_base += sizes[lvl];
  }

  const double wstop = std::exp(kChainLevel);
  std::vector<double> pool(sizes.back());
  for (size_t i = 0; i < pool.size(); ++i) {
    Rng rng(seed, bases.back() + i);
    pool[i] = run_unkilled_plain(rng, k);
  }
  for (size_t lvl = sizes.size() - 1; lvl-- > 0;) {
    std::vector<double> level(sizes[lvl]);
    size_t m = pool.size();
    for (size_t i = 0; i < level.size(); ++i) {
      Rng rng(seed, bases[lvl] + i);
      PathResult r = run_path(rng, k, StopRule::Level, wstop);
      level[i] = r.integral + r.weight * pool[i % m];
    }
    pool.swap(level);
  }
  return pool;
}

std::vector<double> sample_kernel(const Kernel& k, Scheme scheme, size_t n,
                                  uint64_t seed, uint64_t stream_base) {
  std::vector<double> draws(n);
  if (k.q > 0.0) {
    for (size_t i = 0; i < n; ++i) {
      Rng rng(seed, stream_base + i);
      draws[i] = scheme == Scheme::EulerGrid ? run_euler(rng, k)
                                             : run_killed(rng, k);
    }
    return draws;
  }
  if (k.mean >= 0.0)
    fail(ErrorCode::UnkilledNonDrifting,
         "sampler: q = 0 requires a negative mean, got mean >= 0");
  if (scheme != Scheme::EulerGrid && k.sig > 0.0 && n >= kChainThreshold)
    return chain_sample(k, n, seed, stream_base);
  for (size_t i = 0; i < n; ++i) {
    Rng rng(seed, stream_base + i);
    draws[i] = scheme == Scheme::EulerGrid ? run_euler(rng, k)
                                           : run_unkilled_plain(rng, k);
  }
  return draws;
}

Scheme resolve_scheme(const LevyModel& model, const SamplerOptions& opt) {
  if (opt.scheme) return *opt.scheme;
  return model.jumps.finite_activity() ? Scheme::ExactJumpTimes
                                       : Scheme::SmallJumpSubstitution;
}

SampleSet finish(std::vector<double> draws, Scheme scheme,
                 const SamplerOptions& opt, uint64_t seed) {
  SampleSet out;
  out.draws = std::move(draws);
  out.scheme = scheme;
  out.dt = opt.dt;
  out.eps = scheme == Scheme::SmallJumpSubstitution ? opt.eps : 0.0;
  out.seed = seed;
  return out;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::ExactJumpTimes: return "exact-jump-times";
    case Scheme::EulerGrid: return "euler-grid";
    case Scheme::SmallJumpSubstitution: return "small-jump-substitution";
  }
  return "unknown";
}

std::string scheme_label(Scheme s, double dt, double eps) {
  switch (s) {
    case Scheme::ExactJumpTimes: return "exact-jump-times";
    case Scheme::EulerGrid:
      return "euler-grid(" + format_double(dt) + ")";
    case Scheme::SmallJumpSubstitution:
      return "small-jump-substitution(" + format_double(eps) + ")";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  if (name == "exact-jump-times") return Scheme::ExactJumpTimes;
  if (name == "euler-grid") return Scheme::EulerGrid;
  if (name == "small-jump-substitution") return Scheme::SmallJumpSubstitution;
  return std::nullopt;
}

SampleSet sample_functional(const LevyModel& model, size_t n, uint64_t seed,
                            const SamplerOptions& opt) {
  validate_model(model);
  Scheme scheme = resolve_scheme(model, opt);
  Kernel k = build_kernel(model, scheme, opt);
  return finish(sample_kernel(k, scheme, n, seed, 0), scheme, opt, seed);
}

SampleSet sample_factor_rhs(const RhsPlan& plan, size_t n, uint64_t seed,
                            const SamplerOptions& opt) {
  std::vector<double> minus(n);
  Scheme scheme = Scheme::ExactJumpTimes;
  switch (plan.minus_kind) {
    case MinusKind::ExponentialQ: {
      if (!(plan.minus_param > 0.0))
        fail(ErrorCode::ParameterViolation, "rhs: q_- must be positive");
      for (size_t i = 0; i < n; ++i) {
        Rng rng(seed, kStreamMinus + i);
        minus[i] = rng.exponential() / plan.minus_param;
      }
      break;
    }
    case MinusKind::BetaOneGamma: {
      if (!(plan.minus_param > 0.0))
        fail(ErrorCode::ParameterViolation, "rhs: gamma_q must be positive");
      for (size_t i = 0; i < n; ++i) {
        Rng rng(seed, kStreamMinus + i);
        // Beta(1, gamma): F(x) = 1 - (1-x)^gamma.
        minus[i] = -std::expm1(std::log(rng.uniform()) / plan.minus_param);
      }
      break;
    }
    case MinusKind::PathModel: {
      if (!plan.minus_model)
        fail(ErrorCode::ParameterViolation, "rhs: missing minus model");
      validate_model(*plan.minus_model);
      Scheme ms = resolve_scheme(*plan.minus_model, opt);
      Kernel mk = build_kernel(*plan.minus_model, ms, opt);
      minus = sample_kernel(mk, ms, n, seed, kStreamMinus);
      break;
    }
  }

  validate_model(plan.plus_model);
  scheme = resolve_scheme(plan.plus_model, opt);
  Kernel pk = build_kernel(plan.plus_model, scheme, opt);
  std::vector<double> plus = sample_kernel(pk, scheme, n, seed, kStreamPlus);

  for (size_t i = 0; i < n; ++i) plus[i] *= minus[i];
  return finish(std::move(plus), scheme, opt, seed);
}

}  // namespace levyfn
