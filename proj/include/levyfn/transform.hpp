#pragma once
// The killed-to-unkilled exponent transform
//   (T_b Psi_q)(s) = s/(s+b) * Psi_q(s+b)
// together with its closed-form action on model triplets and the largest
// admissible shift.

#include "levyfn/exponent.hpp"

namespace levyfn {

// Exponent-level transform.  Strip becomes (-beta, theta_max - beta); the
// result is unkilled (value 0 at s = 0).  Throws BadBeta for shifts outside
// (0, theta_max).
LaplaceExponent tbeta_transform(const LaplaceExponent& psi, double beta);

// Triplet-level transform: returns the unkilled model whose exponent equals
// tbeta_transform of the input model's exponent.  Gaussian part is carried
// over; the jump measure picks up an exponential reweighting, the killing
// rate turns into a negative exponential jump component (mass q, rate beta),
// and the drift shifts by sigma^2 beta / 2 plus the change in the
// compensation constant.  Supported for exponential-mixture and tilted
// stable-tail jumps.
LevyModel tbeta_model(const LevyModel& model, double beta);

struct BetaStarResult {
  double value;       // sup{ b > 0 : Psi_q(b) < 0 }, capped at beta_plus
  bool no_solution;   // true when Psi_q >= 0 on all of (0, beta_plus)
};

// Largest shift with negative transformed mean, by bisection to 1e-12
// (200 iterations max, lower bracket returned on non-convergence).
BetaStarResult beta_star(const LaplaceExponent& psi_q, double beta_plus);

}  // namespace levyfn
