#pragma once
// Parametric jump measures with closed-form tails and exponent integrals.
//
// A JumpSpec is an additive combination of parts:
//   * exponential mixture components on either half-line (finite activity),
//   * exponentially tilted stable tails y^{-a-1}e^{-g y} on one side, with an
//     optional exponential shift that represents the measure obtained from a
//     killed-exponent transform (density (-e^{by} Pibar(y))' on y>0),
//   * the hypergeometric-type measure arising from the stable first-passage
//     construction (closed-form tails on both sides).
// Arbitrary user-supplied densities are rejected by design: every downstream
// formula needs Pibar_+/Pibar_- and the exponent integral in closed form.

#include <optional>
#include <string>
#include <vector>

namespace levyfn {

// Exponential component: density mass*rate*e^{-rate*y} on its half-line.
struct ExpComponent {
  double mass;
  double rate;
};

// One-sided tilted stable tail.  side=+1: density
//   c*a/Gamma(1-a) * e^{-g y} y^{-a-1} on y>0  (shift=0)
// or, with shift b>0, the transformed measure (-e^{by} Pibar(y))' dy whose
// tail is e^{by} Pibar(y).  side=-1 mirrors the measure to y<0 (shift must
// be 0 there).
struct TiltedTail {
  int side;      // +1 or -1
  double c;      // scale c > 0
  double alpha;  // stability index in (0,1)
  double gamma;  // tilt g > 0
  double shift;  // exponential shift b in [0, gamma)
};

// Two-sided measure behind the stable first-passage exponent, scaled so the
// jump variable is a*(log-coordinate): density
//   (1/a) c_plus  e^{y/a}(e^{y/a}-1)^{-a-1}  on y>0,
//   (1/a) c_minus e^{y/a}(1-e^{y/a})^{-a-1}  on y<0.
// Both tails invert in closed form, which the sampler relies on.
struct LampertiTail {
  double alpha;
  double c_plus;
  double c_minus;
};

class JumpSpec {
 public:
  // Factories (validate parameters, set the family tag used by the JSON I/O).
  static JumpSpec none();
  static JumpSpec exponential_two_sided(double lambda_plus, double eta_plus,
                                        double lambda_minus, double eta_minus);
  static JumpSpec compound_poisson(std::vector<ExpComponent> plus,
                                   std::vector<ExpComponent> minus);
  static JumpSpec hyper_exponential(std::vector<ExpComponent> plus,
                                    std::vector<ExpComponent> minus);
  static JumpSpec tilted_stable_tail(double c, double alpha, double gamma);
  static JumpSpec spectrally_negative_parametric(double c, double alpha,
                                                 double gamma);
  static JumpSpec lamperti_stable(double alpha, double c_plus, double c_minus);
  // Arbitrary combination of exponential components and (possibly shifted)
  // tilted tails; primarily the deserialization target for measures produced
  // by the exponent transform.
  static JumpSpec composite(std::vector<ExpComponent> plus,
                            std::vector<ExpComponent> minus,
                            std::vector<TiltedTail> tilted);

  const std::string& family() const { return family_; }
  bool is_none() const;

  // Upper / lower tails: Pibar_+(y) = Pi((y, inf)) for y>0 and
  // Pibar_-(y) = Pi((-inf, y)) for y<0.
  double tail_plus(double y) const;
  double tail_minus(double y) const;

  // Lebesgue density of the measure at y != 0.
  double density(double y) const;

  // integral (e^{sy} - 1) Pi(dy), in closed form per part (quadrature only
  // for the first-passage measure, which has no elementary antiderivative).
  double natural_integral(double s) const;

  // Compensation constant int_{|y|<1} y Pi(dy); cached after first use.
  double compensation() const;

  // integral (e^{sy} - 1 - sy 1{|y|<1}) Pi(dy).
  double exponent_integral(double s) const;

  // Open finiteness strip of the exponent integral.
  double theta_min() const;
  double theta_max() const;

  // True when the restriction to (0,inf) admits a non-increasing density,
  // the condition the factorization routines require of upward jumps.  All
  // constructible families here satisfy it; carried as an explicit flag so
  // factor composition can gate on it.
  bool density_nonincreasing_positive() const { return nonincreasing_; }

  // Small-jump summaries for the substitution sampling scheme:
  // mass of |y|>=eps, and mean / variance of the |y|<eps remainder.
  double mass_outside(double eps) const;
  double mean_inside(double eps) const;
  double variance_inside(double eps) const;

  // Structural accessors for the sampler.
  const std::vector<ExpComponent>& exp_plus() const { return plus_; }
  const std::vector<ExpComponent>& exp_minus() const { return minus_; }
  const std::vector<TiltedTail>& tilted() const { return tilted_; }
  const std::optional<LampertiTail>& lamperti() const { return lamperti_; }
  bool finite_activity() const;

 private:
  JumpSpec() = default;

  std::string family_ = "none";
  std::vector<ExpComponent> plus_;
  std::vector<ExpComponent> minus_;
  std::vector<TiltedTail> tilted_;
  std::optional<LampertiTail> lamperti_;
  bool nonincreasing_ = true;
  mutable std::optional<double> compensation_cache_;

  friend JumpSpec transformed_jumps_internal(const JumpSpec&, double, double);
};

// Action of the exponent transform on a jump measure: exponential reweighting
// of every component plus the kill-rate compound Poisson part on (-inf, 0).
JumpSpec transformed_jumps_internal(const JumpSpec& j, double beta, double q);

// Closed-form pieces shared with the transform module.
namespace jump_detail {
// integral_0^inf (e^{uy}-1) c a/Gamma(1-a) e^{-g y} y^{-a-1} dy
//   = c (g^a - (g-u)^a), valid for u <= g.
double tilted_natural(double c, double alpha, double gamma, double u);
// Pibar(y) = c a/Gamma(1-a) * g^a Gamma(-a, g y) for the same measure.
double tilted_tail(double c, double alpha, double gamma, double y);
}  // namespace jump_detail

}  // namespace levyfn
