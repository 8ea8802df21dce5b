#pragma once
// Wiener-Hopf ladder factors of killed Lévy processes:
//   Psi_q(z) = -phi_+(z) phi_-(z)
// with phi_+ the exponent of the ascending ladder-height subordinator and
// phi_- the exponent of the negative of the descending one.  Includes the
// killed Vigon identity, root-based factors for spectrally one-sided models,
// and rational factors for exponential-two-sided jumps.

#include <functional>
#include <optional>

#include "levyfn/exponent.hpp"
#include "levyfn/jumps.hpp"

namespace levyfn {

class LadderExponent {
 public:
  enum class Side { Ascending, Descending };

  // Subordinator-triplet forms (measure restricted to the positive half-line):
  //   ascending:  phi(s) = -q + delta s + int (e^{sy}-1) mu(dy)
  //   descending: phi(s) = -q - delta s - int (1-e^{-sy}) mu(dy)
  static LadderExponent ascending(double kill, double delta, JumpSpec measure);
  static LadderExponent descending(double kill, double delta, JumpSpec measure);

  // Quotient factors (e.g. Psi_q(s)/(s+gamma)) that have no parametric
  // triplet; the caller supplies the evaluator and strip.
  static LadderExponent custom(Side side, double kill,
                               std::function<double(double)> eval,
                               double theta_min, double theta_max, bool p_flag);

  double operator()(double s) const;

  Side side() const { return side_; }
  double kill() const { return kill_; }
  double delta() const { return delta_; }
  bool has_triplet() const { return has_triplet_; }
  const JumpSpec& measure() const { return measure_; }
  bool p_flag() const { return p_flag_; }
  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }

 private:
  LadderExponent() = default;

  Side side_ = Side::Ascending;
  double kill_ = 0.0;
  double delta_ = 0.0;
  JumpSpec measure_ = JumpSpec::none();
  bool has_triplet_ = false;
  bool p_flag_ = true;
  std::function<double(double)> eval_;
  double theta_min_ = 0.0;
  double theta_max_ = 0.0;
};

// Occupation measure of the descending ladder height.  Laplace transform
// -1/phi_-(s) (positive since phi_- < 0 on [0, inf)); total mass 1/q_-.
// Closed-form density: an atom at 0 plus a mixture of exponentials, which
// covers all factor families shipped here.
struct ExpTerm {
  double coef;  // density contribution coef * e^{-rate * r}
  double rate;
};

struct PotentialMeasure {
  double atom0 = 0.0;
  std::vector<ExpTerm> terms;
  double total_mass = 0.0;
  double density(double r) const;
  double laplace(double s) const;  // includes the atom
};

// Potential measure of a descending factor; supported for triplet factors
// with an exponential-mixture measure (partial fractions of -1/phi_-).
PotentialMeasure potential_measure(const LadderExponent& phi_minus);

// -phi_+ * phi_-; throws NotPhilanthropic when a measure flag is missing and
// ParameterViolation when sides or kill rates are inconsistent.
LaplaceExponent compose_factors(const LadderExponent& phi_plus,
                                const LadderExponent& phi_minus);

enum class OneSidedCase { SpectrallyPositive, SpectrallyNegative };

struct OneSidedFactors {
  LadderExponent phi_plus;
  LadderExponent phi_minus;
  double gamma_q;
  OneSidedCase which;
};

// Root-based factors for spectrally one-sided models.  Spectrally positive:
// gamma_q solves Psi_q(-s) = 0, phi_-(s) = -(s+gamma_q) and
// phi_+(s) = Psi_q(s)/(s+gamma_q).  Spectrally negative: mirrored, with the
// ascending factor s - gamma_q.  Throws NoRoot when no bracket exists
// (q = 0 with nonnegative mean).
OneSidedFactors spectrally_onesided_factors(const LevyModel& model);

// Unique positive root of f, convex with f(0) <= 0, by bracket doubling and
// safeguarded Newton/bisection to 1e-12.  hint bounds the initial bracket.
double positive_convex_root(const std::function<double(double)>& f,
                            double upper_limit);

// max_y | mu_bar_plus(y) - int_0^inf pi_bar_plus(r+y) U(dr) | over the grid.
double vigon_check(const std::function<double(double)>& pi_bar_plus,
                   const PotentialMeasure& potential,
                   const std::function<double(double)>& mu_bar_plus,
                   const std::vector<double>& y_grid);

struct TransformedLadder {
  // (s/(s+beta)) phi_-(s+beta): an unkilled descending factor.
  std::function<double(double)> transformed_minus;
  // phi_+(s+beta): a killed ascending factor.
  std::function<double(double)> shifted_plus;
};

TransformedLadder tbeta_on_ladder(const LadderExponent& phi_minus,
                                  const LadderExponent& phi_plus, double beta);

// Rational Wiener-Hopf split for models with Gaussian part and two-sided
// exponential jumps: Psi_q has a quartic numerator whose roots give
//   phi_+(s) = -a_+ (b1-s)(b2-s)/(eta_+ - s),
//   phi_-(s) = -a_- (r1+s)(r2+s)/(eta_- + s),
// with a_+ a_- = sigma^2/2; the split a_+ = a_- = sigma/sqrt(2) is recorded
// in the metadata of the result.
struct RationalFactors {
  LadderExponent phi_plus;
  LadderExponent phi_minus;
  double b1, b2;      // positive roots (b1 < eta_+ < b2)
  double r1, r2;      // negated negative roots (r1 < eta_- < r2)
  double a_plus, a_minus;
};

RationalFactors rational_factors(const LevyModel& model);

// Lévy model of the spectrally positive process with exponent
// psi(s) = s phi_+(s); requires a triplet phi_+ with exponential-mixture
// measure.  Used to sample the second product factor.
LevyModel psi_plus_model(const LadderExponent& phi_plus);

// Model of the negative of the descending ladder subordinator, killed at
// q_-; its exponential functional has exponent phi_-.
LevyModel descending_model(const LadderExponent& phi_minus);

}  // namespace levyfn
