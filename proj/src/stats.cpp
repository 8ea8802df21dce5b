#include "levyfn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levyfn/errors.hpp"
#include "levyfn/special.hpp"

namespace levyfn {
namespace {

KsResult scaled(double d, double n1, double n2) {
  KsResult r;
  r.d = d;
  r.n_eff1 = n1;
  r.n_eff2 = n2;
  double scale = n2 > 0.0 ? std::sqrt(n1 * n2 / (n1 + n2)) : std::sqrt(n1);
  r.lambda = d * scale;
  r.p_value = kolmogorov_q(r.lambda);
  return r;
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    fail(ErrorCode::ParameterViolation, "ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  size_t i = 0, j = 0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return scaled(d, na, nb);
}

KsResult ks_one_sample(std::vector<double> a,
                       const std::function<double(double)>& cdf) {
  if (a.empty()) fail(ErrorCode::ParameterViolation, "ks: empty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double f = cdf(a[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return scaled(d, n, 0.0);
}

KsResult ks_weighted_two_sample(std::vector<double> a,
                                std::vector<double> weights,
                                std::vector<double> b) {
  if (a.empty() || b.empty())
    fail(ErrorCode::ParameterViolation, "ks: empty sample");
  if (a.size() != weights.size())
    fail(ErrorCode::ParameterViolation, "ks: weight length mismatch");
  std::vector<size_t> order(a.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&a](size_t x, size_t y) { return a[x] < a[y]; });
  double wsum = 0.0, wsq = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      fail(ErrorCode::ParameterViolation, "ks: negative weight");
    wsum += w;
    wsq += w * w;
  }
  if (wsum <= 0.0) fail(ErrorCode::ParameterViolation, "ks: zero weights");
  std::sort(b.begin(), b.end());

  const double nb = static_cast<double>(b.size());
  double d = 0.0, acc = 0.0;
  size_t j = 0;
  for (size_t idx : order) {
    double x = a[idx];
    while (j < b.size() && b[j] <= x) ++j;
    acc += weights[idx];
    d = std::max(d,
                 std::fabs(acc / wsum - static_cast<double>(j) / nb));
  }
  double n_eff = wsum * wsum / wsq;
  return scaled(d, n_eff, nb);
}

MomentStat sample_moment(const std::vector<double>& a, double order) {
  if (a.empty()) fail(ErrorCode::ParameterViolation, "moment: empty sample");
  double s = 0.0, s2 = 0.0;
  for (double x : a) {
    double t = std::pow(x, order);
    s += t;
    s2 += t * t;
  }
  const double n = static_cast<double>(a.size());
  MomentStat m;
  m.order = order;
  m.value = s / n;
  double var = std::max(0.0, s2 / n - m.value * m.value);
  m.se = std::sqrt(var / n);
  return m;
}

MomentStat moment_vs_value(const std::vector<double>& a, double order,
                           double target) {
  MomentStat m = sample_moment(a, order);
  m.target = target;
  m.z = m.se > 0.0 ? std::fabs(m.value - target) / m.se
                   : (m.value == target ? 0.0 : INFINITY);
  return m;
}

MomentStat moment_two_sample(const std::vector<double>& a,
                             const std::vector<double>& b, double order) {
  MomentStat ma = sample_moment(a, order);
  MomentStat mb = sample_moment(b, order);
  MomentStat m;
  m.order = order;
  m.value = ma.value;
  m.target = mb.value;
  m.se = std::sqrt(ma.se * ma.se + mb.se * mb.se);
  m.z = m.se > 0.0 ? std::fabs(ma.value - mb.value) / m.se
                   : (ma.value == mb.value ? 0.0 : INFINITY);
  return m;
}

DensityEstimate histogram_density(const std::vector<double>& draws, double x,
                                  double halfwidth) {
  if (draws.empty() || !(halfwidth > 0.0))
    fail(ErrorCode::ParameterViolation, "histogram: bad inputs");
  size_t count = 0;
  for (double v : draws)
    if (v >= x - halfwidth && v < x + halfwidth) ++count;
  const double n = static_cast<double>(draws.size());
  const double p = static_cast<double>(count) / n;
  DensityEstimate e;
  e.x = x;
  e.value = p / (2.0 * halfwidth);
  e.se = std::sqrt(std::max(0.0, p * (1.0 - p) / n)) / (2.0 * halfwidth);
  return e;
}

}  // namespace levyfn
