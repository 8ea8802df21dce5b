#include "levyfn/ladders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyfn/errors.hpp"
#include "levyfn/quadrature.hpp"
#include "levyfn/special.hpp"

namespace levyfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEdgeGuard = 1e-9;

void check_positive_halfline(const JumpSpec& m) {
  bool ok = m.exp_minus().empty() && !m.lamperti();
  for (const auto& t : m.tilted()) ok = ok && t.side > 0;
  if (!ok) {
    fail(ErrorCode::ParameterViolation,
         "ladder measure must live on the positive half-line");
  }
}

// Coefficient-array helpers for the rational factorization.
std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<double> poly_add(std::vector<double> a, const std::vector<double>& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

}  // namespace

LadderExponent LadderExponent::ascending(double kill, double delta,
                                         JumpSpec measure) {
  if (kill < 0 || delta < 0) {
    fail(ErrorCode::ParameterViolation, "ladder kill and drift must be nonnegative");
  }
  check_positive_halfline(measure);
  LadderExponent l;
  l.side_ = Side::Ascending;
  l.kill_ = kill;
  l.delta_ = delta;
  l.measure_ = std::move(measure);
  l.has_triplet_ = true;
  l.p_flag_ = l.measure_.density_nonincreasing_positive();
  l.theta_min_ = -kInf;
  l.theta_max_ = l.measure_.theta_max();
  return l;
}

LadderExponent LadderExponent::descending(double kill, double delta,
                                          JumpSpec measure) {
  LadderExponent l = ascending(kill, delta, std::move(measure));
  l.side_ = Side::Descending;
  l.theta_min_ = -l.measure_.theta_max();
  l.theta_max_ = kInf;
  return l;
}

LadderExponent LadderExponent::custom(Side side, double kill,
                                      std::function<double(double)> eval,
                                      double theta_min, double theta_max,
                                      bool p_flag) {
  LadderExponent l;
  l.side_ = side;
  l.kill_ = kill;
  l.has_triplet_ = false;
  l.p_flag_ = p_flag;
  l.eval_ = std::move(eval);
  l.theta_min_ = theta_min;
  l.theta_max_ = theta_max;
  return l;
}

double LadderExponent::operator()(double s) const {
  bool inside = (!std::isfinite(theta_min_) || s > theta_min_ + kEdgeGuard) &&
                (!std::isfinite(theta_max_) || s < theta_max_ - kEdgeGuard);
  if (!inside) {
    fail(ErrorCode::StripViolation, "ladder factor outside its strip");
  }
  if (!has_triplet_) return eval_(s);
  if (side_ == Side::Ascending) {
    return -kill_ + delta_ * s + measure_.natural_integral(s);
  }
  return -kill_ - delta_ * s + measure_.natural_integral(-s);
}

double PotentialMeasure::density(double r) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.coef * std::exp(-t.rate * r);
  return v;
}

double PotentialMeasure::laplace(double s) const {
  double v = atom0;
  for (const auto& t : terms) v += t.coef / (s + t.rate);
  return v;
}

PotentialMeasure potential_measure(const LadderExponent& phi_minus) {
  if (phi_minus.side() != LadderExponent::Side::Descending || !phi_minus.has_triplet()) {
    fail(ErrorCode::ParameterViolation,
         "potential measure needs a descending triplet factor");
  }
  const JumpSpec& m = phi_minus.measure();
  if (!m.tilted().empty()) {
    fail(ErrorCode::ParameterViolation,
         "potential measure supports exponential-mixture ladder measures only");
  }
  double q = phi_minus.kill();
  double delta = phi_minus.delta();
  const auto& comps = m.exp_plus();

  PotentialMeasure p;
  p.total_mass = q > 0 ? 1.0 / q : kInf;

  // -1/phi_-(s) = N(s)/D(s) with N = prod(eta_i + s) and
  // D = (q + delta s) N + s sum_i w_i prod_{j != i}(eta_j + s).
  std::vector<double> N{1.0};
  for (const auto& c : comps) N = poly_mul(N, {c.rate, 1.0});
  std::vector<double> D = poly_mul({q, delta}, N);
  for (size_t i = 0; i < comps.size(); ++i) {
    std::vector<double> other{comps[i].mass};  // mass * prod over j != i
    for (size_t j = 0; j < comps.size(); ++j) {
      if (j != i) other = poly_mul(other, {comps[j].rate, 1.0});
    }
    D = poly_add(D, poly_mul({0.0, 1.0}, other));
  }
  while (D.size() > 1 && D.back() == 0.0) D.pop_back();

  if (D.size() == 1) {  // pure kill: phi_- = -q, all mass in the atom
    p.atom0 = 1.0 / q;
    return p;
  }
  if (D.size() == N.size()) {
    // No drift: finite-jump ladder, atom of size 1/(q + total mass).
    p.atom0 = N.back() / D.back();
  }
  std::vector<double> Dp(D.size() - 1);  // derivative, for residues
  for (size_t i = 1; i < D.size(); ++i) Dp[i - 1] = D[i] * static_cast<double>(i);

  auto roots = real_poly_roots(D);
  for (const auto& z : roots) {
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real())) || z.real() > 1e-12) {
      fail(ErrorCode::NoRoot, "potential transform has non-real or unstable poles");
    }
    double rho = -z.real();
    double coef = poly_eval(N, -rho) / poly_eval(Dp, -rho);
    p.terms.push_back({coef, rho});
  }
  return p;
}

LaplaceExponent compose_factors(const LadderExponent& phi_plus,
                                const LadderExponent& phi_minus) {
  if (phi_plus.side() != LadderExponent::Side::Ascending ||
      phi_minus.side() != LadderExponent::Side::Descending) {
    fail(ErrorCode::ParameterViolation, "compose needs an (ascending, descending) pair");
  }
  if (!phi_plus.p_flag() || !phi_minus.p_flag()) {
    fail(ErrorCode::NotPhilanthropic,
         "factor measure lacks a non-increasing density certificate");
  }
  double q = phi_plus.kill() * phi_minus.kill();
  bool unkilled_drifting = phi_plus.kill() > 0 && phi_minus.kill() == 0;
  if (!(q > 0) && !unkilled_drifting) {
    fail(ErrorCode::ParameterViolation,
         "need q_+ q_- > 0, or q_+ > 0 with q_- = 0");
  }
  LadderExponent up = phi_plus, down = phi_minus;
  auto fn = [up, down](double s) { return -up(s) * down(s); };
  return LaplaceExponent(fn, std::max(up.theta_min(), down.theta_min()),
                         std::min(up.theta_max(), down.theta_max()),
                         Provenance::Factors, q);
}

double positive_convex_root(const std::function<double(double)>& f,
                            double upper_limit) {
  double cap = std::isfinite(upper_limit) ? upper_limit : 1e12;
  if (!(cap > 0)) fail(ErrorCode::NoRoot, "empty search interval");

  // Grow the bracket until the (convex) function turns positive.
  double hi = std::min(1.0, cap / 2.0);
  int tries = 0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi >= cap) {
      hi = cap * (1.0 - 1e-12);
      if (f(hi) <= 0.0) fail(ErrorCode::NoRoot, "no sign change below the cap");
      break;
    }
    if (++tries > 60) fail(ErrorCode::NoRoot, "no sign change below the cap");
  }

  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  // Reject the degenerate shrink to zero (f >= 0 throughout, e.g. unkilled
  // process with nonnegative mean).
  if (root < 1e-10 || !(f(root / 2.0) < 0.0)) {
    fail(ErrorCode::NoRoot, "no positive root (unkilled with nonnegative mean?)");
  }
  return root;
}

OneSidedFactors spectrally_onesided_factors(const LevyModel& model) {
  validate_model(model);
  const JumpSpec& j = model.jumps;
  if (j.lamperti()) {
    fail(ErrorCode::ParameterViolation, "unsupported jump family for root factors");
  }
  bool has_pos = !j.exp_plus().empty();
  bool has_neg = !j.exp_minus().empty();
  for (const auto& t : j.tilted()) (t.side > 0 ? has_pos : has_neg) = true;
  if (has_pos && has_neg) {
    fail(ErrorCode::ParameterViolation, "model has jumps on both sides");
  }

  LaplaceExponent psi = make_exponent(model);
  auto try_positive = [&]() -> OneSidedFactors {
    // Spectrally positive: gamma solves Psi_q(-s) = 0; descending factor is
    // the unit-drift killed subordinator -(s + gamma).
    double upper = std::isfinite(psi.theta_min()) ? -psi.theta_min() - 3e-9 : kInf;
    double gamma = positive_convex_root([&](double s) { return psi(-s); }, upper);
    LadderExponent down = LadderExponent::descending(gamma, 1.0, JumpSpec::none());
    LaplaceExponent base = psi;
    auto up_eval = [base, gamma](double s) {
      if (std::abs(s + gamma) < 1e-12) {
        // Removable singularity: derivative of Psi_q at the root.
        double h = 1e-6;
        return (base(s + h) - base(s - h)) / (2.0 * h);
      }
      return base(s) / (s + gamma);
    };
    LadderExponent up =
        LadderExponent::custom(LadderExponent::Side::Ascending, model.kill / gamma,
                               up_eval, psi.theta_min(), psi.theta_max(), true);
    return {up, down, gamma, OneSidedCase::SpectrallyPositive};
  };
  auto try_negative = [&]() -> OneSidedFactors {
    // Spectrally negative: gamma solves Psi_q(s) = 0; ascending factor is
    // the pure-drift form s - gamma (upward creeping).
    double upper = std::isfinite(psi.theta_max()) ? psi.theta_max() - 3e-9 : kInf;
    double gamma = positive_convex_root([&](double s) { return psi(s); }, upper);
    LadderExponent up = LadderExponent::ascending(gamma, 1.0, JumpSpec::none());
    LaplaceExponent base = psi;
    auto down_eval = [base, gamma](double s) {
      if (std::abs(s - gamma) < 1e-12) {
        double h = 1e-6;
        return -(base(s + h) - base(s - h)) / (2.0 * h);
      }
      return -base(s) / (s - gamma);
    };
    LadderExponent down =
        LadderExponent::custom(LadderExponent::Side::Descending, model.kill / gamma,
                               down_eval, psi.theta_min(), psi.theta_max(), true);
    return {up, down, gamma, OneSidedCase::SpectrallyNegative};
  };

  if (has_neg) return try_negative();
  if (has_pos) return try_positive();
  // No jumps at all: both conventions apply; prefer the spectrally positive
  // one (it carries the Beta(1, gamma) sampling shortcut) and fall back to
  // the mirrored case when the root lies on the other side.
  try {
    return try_positive();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoRoot) throw;
    return try_negative();
  }
}

double vigon_check(const std::function<double(double)>& pi_bar_plus,
                   const PotentialMeasure& potential,
                   const std::function<double(double)>& mu_bar_plus,
                   const std::vector<double>& y_grid) {
  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  double worst = 0.0;
  for (double y : y_grid) {
    double smoothed = potential.atom0 * pi_bar_plus(y);
    if (!potential.terms.empty()) {
      smoothed += integrate_to_inf(
          [&](double r) { return pi_bar_plus(r + y) * potential.density(r); }, 0.0,
          opt);
    }
    worst = std::max(worst, std::abs(mu_bar_plus(y) - smoothed));
  }
  return worst;
}

TransformedLadder tbeta_on_ladder(const LadderExponent& phi_minus,
                                  const LadderExponent& phi_plus, double beta) {
  if (!(beta > 0)) fail(ErrorCode::BadBeta, "shift must be positive");
  if (phi_minus.side() != LadderExponent::Side::Descending ||
      phi_plus.side() != LadderExponent::Side::Ascending) {
    fail(ErrorCode::ParameterViolation, "factor sides are swapped");
  }
  LadderExponent down = phi_minus, up = phi_plus;
  TransformedLadder t;
  t.transformed_minus = [down, beta](double s) {
    if (s == 0.0) return 0.0;
    return s / (s + beta) * down(s + beta);
  };
  t.shifted_plus = [up, beta](double s) { return up(s + beta); };
  return t;
}

RationalFactors rational_factors(const LevyModel& model) {
  validate_model(model);
  const JumpSpec& j = model.jumps;
  if (!(model.gaussian > 0) || !(model.kill > 0) || j.exp_plus().size() != 1 ||
      j.exp_minus().size() != 1 || !j.tilted().empty() || j.lamperti()) {
    fail(ErrorCode::ParameterViolation,
         "rational split needs a Gaussian part, kill, and one exponential "
         "component per side");
  }
  double lp = j.exp_plus()[0].mass, ep = j.exp_plus()[0].rate;
  double lm = j.exp_minus()[0].mass, em = j.exp_minus()[0].rate;
  double half_sig = 0.5 * model.gaussian;
  double b_eff = model.drift - j.compensation();
  double q = model.kill;

  // Psi_q(s) (eta_+ - s)(eta_- + s) is a quartic with leading -sigma^2/2.
  std::vector<double> quad = poly_mul({ep, -1.0}, {em, 1.0});
  std::vector<double> P = poly_mul({-q, b_eff, half_sig}, quad);
  P = poly_add(P, poly_mul({0.0, lp}, {em, 1.0}));
  P = poly_add(P, poly_mul({0.0, -lm}, {ep, -1.0}));

  std::vector<double> pos, neg;
  for (const auto& z : real_poly_roots(P)) {
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) {
      fail(ErrorCode::NoRoot, "quartic has complex roots; no rational split");
    }
    (z.real() > 0 ? pos : neg).push_back(z.real());
  }
  if (pos.size() != 2 || neg.size() != 2) {
    fail(ErrorCode::NoRoot, "expected two roots on each side of the origin");
  }
  std::sort(pos.begin(), pos.end());
  double b1 = pos[0], b2 = pos[1];
  std::sort(neg.begin(), neg.end());
  double r1 = -neg[1], r2 = -neg[0];
  if (!(b1 < ep && ep < b2 && r1 < em && em < r2)) {
    fail(ErrorCode::NoRoot, "root interlacing with the jump rates failed");
  }

  double a = std::sqrt(half_sig);

  double qp = a * b1 * b2 / ep;
  double wp = a / ep * (ep - b1) * (b2 - ep);
  LadderExponent phi_plus = LadderExponent::ascending(
      qp, a, JumpSpec::hyper_exponential({{wp, ep}}, {}));

  double qm = a * r1 * r2 / em;
  double wm = a / em * (em - r1) * (r2 - em);
  LadderExponent phi_minus = LadderExponent::descending(
      qm, a, JumpSpec::hyper_exponential({{wm, em}}, {}));

  if (std::abs(qp * qm - q) > 1e-8 * q) {
    fail(ErrorCode::InconsistentFactors, "kill rates do not multiply back to q");
  }
  return RationalFactors{std::move(phi_plus), std::move(phi_minus),
                         b1, b2, r1, r2, a, a};
}

LevyModel psi_plus_model(const LadderExponent& phi_plus) {
  if (phi_plus.side() != LadderExponent::Side::Ascending || !phi_plus.has_triplet() ||
      !phi_plus.measure().tilted().empty() || phi_plus.measure().lamperti()) {
    fail(ErrorCode::ParameterViolation,
         "psi-model needs an ascending triplet with exponential measure");
  }
  // s phi_+(s): Gaussian 2 delta, positive exponential jumps with mass w eta,
  // natural drift -(q + sum w).
  LevyModel m;
  m.gaussian = 2.0 * phi_plus.delta();
  m.kill = 0.0;
  double natural = -phi_plus.kill();
  std::vector<ExpComponent> comps;
  for (const auto& c : phi_plus.measure().exp_plus()) {
    comps.push_back({c.mass * c.rate, c.rate});
    natural -= c.mass;
  }
  m.jumps = comps.empty() ? JumpSpec::none() : JumpSpec::hyper_exponential(comps, {});
  m.drift = natural + m.jumps.compensation();
  return m;
}

LevyModel descending_model(const LadderExponent& phi_minus) {
  if (phi_minus.side() != LadderExponent::Side::Descending || !phi_minus.has_triplet() ||
      !phi_minus.measure().tilted().empty() || phi_minus.measure().lamperti()) {
    fail(ErrorCode::ParameterViolation,
         "descending model needs a triplet with exponential measure");
  }
  LevyModel m;
  m.gaussian = 0.0;
  m.kill = phi_minus.kill();
  std::vector<ExpComponent> comps;
  for (const auto& c : phi_minus.measure().exp_plus()) comps.push_back(c);
  m.jumps = comps.empty() ? JumpSpec::none() : JumpSpec::hyper_exponential({}, comps);
  m.drift = -phi_minus.delta() + m.jumps.compensation();
  return m;
}

}  // namespace levyfn
