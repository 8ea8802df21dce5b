#include "levyfn/series.hpp"

#include <cmath>
#include <limits>

#include "levyfn/errors.hpp"

namespace levyfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr size_t kRawCap = 10000;
constexpr size_t kEulerCap = 2500;
constexpr double kTermTol = 1e-14;

}  // namespace

double truncated_series_sum(const std::function<double(size_t)>& term,
                            size_t nmax, size_t* used) {
  double s = 0.0, peak = 0.0;
  int small_streak = 0;
  for (size_t n = 0; n < nmax; ++n) {
    double t = term(n);
    s += t;
    double a = std::abs(t);
    peak = std::max(peak, a);
    small_streak = (a <= kTermTol * std::abs(s)) ? small_streak + 1 : 0;
    if (small_streak >= 2 && a < peak) {
      if (used) *used = n + 1;
      return s;
    }
  }
  if (used) *used = nmax;
  return s;
}

double DensitySeries::coefficient(size_t n) const {
  if (n >= log_abs.size()) {
    fail(ErrorCode::ParameterViolation, "coefficient index beyond stored terms");
  }
  return sign[n] * std::exp(log_abs[n]);
}

double DensitySeries::eval(double x) const { return eval(x, nullptr); }

double DensitySeries::eval(double x, size_t* terms_used) const {
  if (x < 0.0) fail(ErrorCode::ParameterViolation, "density argument must be >= 0");
  switch (mode) {
    case SeriesMode::Raw: {
      if (x >= radius) {
        fail(ErrorCode::RadiusViolation, "raw series only converges below 1/b");
      }
      if (x == 0.0) {
        if (terms_used) *terms_used = 1;
        return coefficient(0);
      }
      double lx = std::log(x);
      auto term = [&](size_t n) {
        if (sign[n] == 0) return 0.0;
        double parity = (n % 2 == 0) ? 1.0 : -1.0;
        return sign[n] * parity *
               std::exp(log_abs[n] + n * lx - std::lgamma(n + 1.0));
      };
      // For entire series (infinite radius) large x drives the alternating
      // summands to e^{~x} while the true density stays below a0, so the
      // computed sum degenerates to rounding noise.  Each summand is built
      // as exp(arg) with arg accurate to ~eps*|arg|, so the noise scale is
      // eps * max|arg| * sum|summands|.  Values below that, and sums whose
      // peak summand cannot even be represented, honestly round to zero.
      double lpeak = -kInf, prev_arg = -kInf;
      size_t n_top = 0;
      for (size_t n = 0; n < log_abs.size(); ++n) {
        if (sign[n] == 0) continue;
        double arg = log_abs[n] + n * lx - std::lgamma(n + 1.0);
        lpeak = std::max(lpeak, arg);
        n_top = n;
        if (lpeak > 690.0) break;
        if (arg < prev_arg && arg < lpeak - 60.0) break;
        prev_arg = arg;
      }
      if (lpeak > 690.0) {
        if (terms_used) *terms_used = 0;
        return 0.0;
      }
      double sumexp = 0.0, amax = 0.0;
      for (size_t n = 0; n <= n_top; ++n) {
        if (sign[n] == 0) continue;
        double arg = log_abs[n] + n * lx - std::lgamma(n + 1.0);
        sumexp += std::exp(arg - lpeak);
        if (arg > lpeak - 60.0) amax = std::max(amax, std::abs(arg));
      }
      size_t used = 0;
      double s = truncated_series_sum(term, log_abs.size(), &used);
      if (terms_used) *terms_used = used;
      double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                     (1.0 + amax) * sumexp * std::exp(lpeak);
      return std::abs(s) <= noise ? 0.0 : s;
    }
    case SeriesMode::Euler: {
      double u = scale_b * x / (1.0 + scale_b * x);
      if (x == 0.0) {
        if (terms_used) *terms_used = 1;
        return coefficient(0);
      }
      double lu = std::log(u);
      auto term = [&](size_t m) {
        if (sign[m] == 0) return 0.0;
        return sign[m] * std::exp(log_abs[m] + m * lu);
      };
      // 1/(1+bx) is the complement of u; computing it directly keeps full
      // relative accuracy when u rounds to 1 for large x.
      double omu = 1.0 / (1.0 + scale_b * x);
      return omu * truncated_series_sum(term, log_abs.size(), terms_used);
    }
    case SeriesMode::GammaSmallX: {
      if (x == 0.0) {
        if (terms_used) *terms_used = 1;
        return coefficient(0);
      }
      double lv = std::log(scale_b * x);
      auto term = [&](size_t n) {
        if (sign[n] == 0) return 0.0;
        return sign[n] * std::exp(log_abs[n] + n * lv - std::lgamma(n + 1.0));
      };
      return truncated_series_sum(term, log_abs.size(), terms_used);
    }
    case SeriesMode::GammaLargeX: {
      if (x <= 0.0) fail(ErrorCode::ParameterViolation, "tail series needs x > 0");
      double lw = -tail_l * std::log(x);
      double s = 0.0, best = 0.0, min_abs = kInf;
      size_t n = 0;
      for (; n < log_abs.size(); ++n) {
        double parity = (n % 2 == 0) ? 1.0 : -1.0;
        double t = parity * std::exp(log_abs[n] + n * lw - std::lgamma(n + 1.0));
        double a = std::abs(t);
        if (a < min_abs) {
          min_abs = a;
          best = s + 0.5 * t;  // optimal truncation with half-term correction
        }
        s += t;
        if (n > 3 && a > 10.0 * min_abs) break;
      }
      if (terms_used) *terms_used = n;
      return tail_l * std::pow(x, -tail_l - 1.0) * best;
    }
  }
  fail(ErrorCode::ParameterViolation, "unknown series mode");
}

DensitySeries density_series_subordinator(
    const std::function<double(double)>& psi_q, double b, SeriesMode mode) {
  if (mode != SeriesMode::Raw && mode != SeriesMode::Euler) {
    fail(ErrorCode::ParameterViolation, "subordinator series is raw or euler");
  }
  if (b < 0.0) fail(ErrorCode::ParameterViolation, "drift must be nonnegative");
  double q = -psi_q(0.0);
  if (!(q > 0.0)) fail(ErrorCode::ParameterViolation, "need a killed exponent, q > 0");
  if (mode == SeriesMode::Euler && !(b > 0.0)) {
    fail(ErrorCode::ParameterViolation, "Euler mode needs positive drift b");
  }

  size_t raw_n = (mode == SeriesMode::Raw) ? kRawCap : kEulerCap;
  std::vector<double> la;
  std::vector<int> sg;
  la.reserve(raw_n);
  sg.reserve(raw_n);
  la.push_back(std::log(q));
  sg.push_back(1);
  for (size_t n = 1; n < raw_n; ++n) {
    double v = -psi_q(-static_cast<double>(n));
    if (v == 0.0) break;  // series terminates
    sg.push_back(sg.back() * (v > 0 ? 1 : -1));
    la.push_back(la[n - 1] + std::log(std::abs(v)));
  }

  DensitySeries out;
  out.scale_b = b;
  out.radius = b > 0 ? 1.0 / b : kInf;
  if (mode == SeriesMode::Raw) {
    out.mode = SeriesMode::Raw;
    out.log_abs = std::move(la);
    out.sign = std::move(sg);
    return out;
  }

  // Euler transform: a~_m = m! sum_k (-1)^k a_k b^{-k} / ((k!)^2 (m-k)!),
  // accumulated in log space against the largest summand.  The alternating
  // sum cancels down from summands of size ~2^m, so once |a~_m| sinks below
  // the rounding noise of the largest summand the computed value carries no
  // information: such coefficients are recorded as exact zeros, and three
  // zeros in a row end the expansion (the true sequence decays
  // monotonically, so it cannot resurface above a floor that keeps growing).
  out.mode = SeriesMode::Euler;
  double lb = std::log(b);
  size_t M = kEulerCap;
  out.log_abs.reserve(M);
  out.sign.reserve(M);
  int floored_streak = 0;
  for (size_t m = 0; m < M; ++m) {
    double lmax = -kInf;
    size_t kmax = std::min(m, la.size() - 1);
    std::vector<double> L(kmax + 1);
    for (size_t k = 0; k <= kmax; ++k) {
      L[k] = std::lgamma(m + 1.0) + la[k] - static_cast<double>(k) * lb -
             2.0 * std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
      lmax = std::max(lmax, L[k]);
    }
    double acc = 0.0;
    for (size_t k = 0; k <= kmax; ++k) {
      double parity = (k % 2 == 0) ? 1.0 : -1.0;
      acc += sg[k] * parity * std::exp(L[k] - lmax);
    }
    double noise_floor = 32.0 * static_cast<double>(kmax + 1) *
                         std::numeric_limits<double>::epsilon();
    if (std::abs(acc) <= noise_floor || !std::isfinite(lmax)) {
      out.sign.push_back(0);
      out.log_abs.push_back(-kInf);
      if (++floored_streak >= 3) break;
    } else {
      floored_streak = 0;
      out.sign.push_back(acc > 0 ? 1 : -1);
      out.log_abs.push_back(lmax + std::log(std::abs(acc)));
    }
  }
  return out;
}

DensitySeries density_series_subordinator(const LevyModel& model,
                                          SeriesMode mode) {
  validate_model(model);
  const JumpSpec& j = model.jumps;
  bool one_sided = j.exp_minus().empty() && !j.lamperti();
  for (const auto& t : j.tilted()) one_sided = one_sided && t.side > 0;
  if (model.gaussian != 0.0 || !one_sided) {
    fail(ErrorCode::ParameterViolation,
         "series form needs a subordinator: no Gaussian part, no negative jumps");
  }
  if (!j.density_nonincreasing_positive()) {
    fail(ErrorCode::NotPhilanthropic, "jump density is not non-increasing");
  }
  double b = model.drift - j.compensation();
  if (b < 0.0 && b > -1e-12) b = 0.0;
  if (b < 0.0) {
    fail(ErrorCode::ParameterViolation, "natural drift must be nonnegative");
  }
  LaplaceExponent psi = make_exponent(model);
  return density_series_subordinator([psi](double s) { return psi(s); }, b, mode);
}

}  // namespace levyfn
