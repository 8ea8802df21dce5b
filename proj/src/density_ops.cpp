#include "levyfn/density_ops.hpp"

#include <cmath>
#include <limits>

#include "levyfn/errors.hpp"
#include "levyfn/moments.hpp"
#include "levyfn/quadrature.hpp"
#include "levyfn/special.hpp"

namespace levyfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<double> density_product(const std::function<double(double)>& m1,
                                    const std::function<double(double)>& m2,
                                    const std::vector<double>& x_grid) {
  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    auto f = [&](double t) {
      double y = std::exp(t);
      return m1(x / y) * m2(y);
    };
    double prev = std::numeric_limits<double>::quiet_NaN();
    double cur = 0.0;
    for (double T = 2.0; T <= 64.0; T *= 2.0) {
      cur = integrate_with_breaks(f, {-T, 0.0, T}, opt);
      if (std::isfinite(prev) &&
          std::abs(cur - prev) <= 1e-8 * std::max(std::abs(cur), 1e-300)) {
        break;
      }
      prev = cur;
    }
    out.push_back(cur);
  }
  return out;
}

SpectralNegDensity density_spectrally_negative(
    const std::function<double(double)>& m_minus, double gamma_q,
    const std::vector<double>& x_grid) {
  if (!(gamma_q > 0.0)) {
    fail(ErrorCode::ParameterViolation, "tail index gamma_q must be positive");
  }
  SpectralNegDensity out;
  double moment;
  try {
    moment = mellin_by_quadrature(m_minus, gamma_q);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::QuadratureFailure) {
      fail(ErrorCode::MomentDivergence,
           "moment of order gamma_q does not converge");
    }
    throw;
  }
  if (!std::isfinite(moment)) {
    fail(ErrorCode::MomentDivergence, "moment of order gamma_q is not finite");
  }
  double g = gamma_fn(gamma_q);
  out.tail_constant = moment / g;
  out.reciprocal_completely_monotone = gamma_q <= 1.0;

  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  auto density_at = [&](double x) {
    auto f = [&](double y) {
      return std::exp(-y / x) * std::pow(y, gamma_q) * m_minus(y);
    };
    double head = integrate_with_breaks(f, {0.0, 1.0}, opt);
    double tail = integrate_to_inf(f, 1.0, opt);
    return std::pow(x, -gamma_q - 1.0) / g * (head + tail);
  };
  out.values.reserve(x_grid.size());
  for (double x : x_grid) out.values.push_back(density_at(x));

  bool ok = true;
  for (double x : {1e3, 1e4}) {
    double ratio = std::pow(x, gamma_q + 1.0) * density_at(x);
    ok = ok && std::abs(ratio - out.tail_constant) <= 0.01 * out.tail_constant;
  }
  out.tail_limit_ok = ok;
  return out;
}

namespace {

void check_gamma_family_params(double alpha, double gamma, double alpha_prime) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(ErrorCode::ParameterViolation, "alpha must lie in (0,1)");
  }
  if (!(gamma > 0.0) || std::abs(gamma - std::round(gamma)) < 1e-9) {
    fail(ErrorCode::ParameterViolation, "gamma must be positive and non-integer");
  }
  if (!(alpha_prime > 0.0 && alpha_prime < 1.0 - alpha)) {
    fail(ErrorCode::ParameterViolation,
         "alpha' must lie in (0, 1-alpha) for absolute convergence");
  }
}

}  // namespace

DensitySeries gamma_family_series(double alpha, double gamma, double alpha_prime,
                                  GammaRegime regime) {
  check_gamma_family_params(alpha, gamma, alpha_prime);
  DensitySeries s;
  if (regime == GammaRegime::SmallX) {
    s.mode = SeriesMode::GammaSmallX;
    s.scale_b = alpha_prime;
    s.radius = kInf;
    const size_t N = 600;
    double lg1 = std::lgamma(gamma + 1.0);
    double sin_pg = std::sin(M_PI * gamma);
    int sin_sign = sin_pg > 0 ? 1 : -1;
    double log_sin = std::log(std::abs(sin_pg)) - std::log(M_PI);
    for (size_t n = 0; n < N; ++n) {
      double base = std::lgamma(alpha_prime * (n + 1.0) + 1.0) + alpha * lg1;
      double dn = gamma - static_cast<double>(n);
      if (dn > 0.0) {
        // 1/Gamma(g-n) is plain here; the sign of (-a'x)^n stays with the term.
        s.log_abs.push_back(base - alpha * std::lgamma(dn));
        s.sign.push_back(n % 2 == 0 ? 1 : -1);
      } else {
        // Reflection 1/Gamma(g-n) = (-1)^n Gamma(n+1-g) sin(pi g)/pi with the
        // sign factored out before raising to alpha; (-1)^n cancels the
        // alternation, leaving sign(sin(pi g)).
        s.log_abs.push_back(base + alpha * (std::lgamma(n + 1.0 - gamma) + log_sin));
        s.sign.push_back(sin_sign);
      }
    }
    return s;
  }
  s.mode = SeriesMode::GammaLargeX;
  double l = 1.0 / alpha_prime;
  s.tail_l = l;
  s.radius = kInf;
  const size_t N = 200;
  double lg1 = std::lgamma(gamma + 1.0);
  for (size_t n = 0; n < N; ++n) {
    double arg = l * (n + 1.0) + 1.0;
    s.log_abs.push_back(std::lgamma(arg) + alpha * (lg1 - std::lgamma(arg + gamma)));
    s.sign.push_back(1);
  }
  return s;
}

std::vector<double> gamma_family_densities(double alpha, double gamma,
                                           double alpha_prime,
                                           const std::vector<double>& x_grid,
                                           GammaRegime regime) {
  DensitySeries s = gamma_family_series(alpha, gamma, alpha_prime, regime);
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) out.push_back(s.eval(x));
  return out;
}

double gamma_family_complete_density(double alpha, double gamma, double x) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(gamma > 0.0)) {
    fail(ErrorCode::ParameterViolation, "need alpha in (0,1] and gamma > 0");
  }
  if (x < 0.0) fail(ErrorCode::ParameterViolation, "x must be nonnegative");
  if (x == 0.0) return std::pow(gamma, alpha);
  if (alpha == 1.0) {
    // The series becomes the binomial expansion of gamma*(1+x)^{-gamma-1},
    // which only converges for x < 1; the closed form continues it.
    return gamma * std::pow(1.0 + x, -gamma - 1.0);
  }
  double lg1 = std::lgamma(gamma + 1.0);
  double lx = std::log(x);
  double lpref = alpha * std::log(gamma);
  auto term = [&](size_t n) {
    double parity = (n % 2 == 0) ? 1.0 : -1.0;
    return parity * std::exp(lpref + alpha * (std::lgamma(n + gamma + 1.0) - lg1) +
                             n * lx - std::lgamma(n + 1.0));
  };
  return truncated_series_sum(term, 10000, nullptr);
}

}  // namespace levyfn
