#pragma once
// Killed Lévy processes and their Laplace exponents on the real finiteness
// strip:  Psi_q(s) = b s + (sigma^2/2) s^2 + jump integral - q.

#include <functional>

#include "levyfn/jumps.hpp"

namespace levyfn {

struct LevyModel {
  double drift = 0.0;     // b, per unit process time (with |y|<1 compensation)
  double gaussian = 0.0;  // sigma^2 >= 0
  double kill = 0.0;      // q >= 0
  JumpSpec jumps = JumpSpec::none();
};

// Validates admissibility (nonnegative gaussian/kill); throws ParameterViolation.
void validate_model(const LevyModel& model);

enum class Provenance { Triplet, Factors, Transformed };

class LaplaceExponent {
 public:
  LaplaceExponent(std::function<double(double)> fn, double theta_min,
                  double theta_max, Provenance provenance, double kill);

  // Strip-guarded evaluation; throws StripViolation within 1e-9 of an
  // endpoint (exponents blow up at the abscissa of convergence).
  double operator()(double s) const;

  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }
  Provenance provenance() const { return provenance_; }
  double kill() const { return kill_; }

  // Derivative at 0 of the unkilled part (the process mean), by Richardson
  // finite differences well inside the strip.
  double mean() const;

 private:
  std::function<double(double)> fn_;
  double theta_min_, theta_max_;
  Provenance provenance_;
  double kill_;
};

double eval_exponent(const LevyModel& model, double s);

LaplaceExponent make_exponent(const LevyModel& model);

}  // namespace levyfn
