#pragma once

#include <functional>
#include <vector>

#include "levyfn/exponent.hpp"
#include "levyfn/ladders.hpp"

namespace levyfn {

enum class MomentSource {
  SubordinatorFormula,
  SpectrallyPositiveFormula,
  MonteCarlo,
};

// Ladder of moments E[I^m] (or E[I^{-m}] when negative_orders is set),
// stored 1-based: values[m-1] is the order-m entry.
struct MomentLadder {
  std::vector<double> values;
  MomentSource source = MomentSource::SubordinatorFormula;
  bool negative_orders = false;

  int size() const { return static_cast<int>(values.size()); }
  double moment(int m) const;  // moment(0) == 1
  // Cauchy-Schwarz: M_m^2 <= M_{m-1} M_{m+1}, with a small relative slack.
  bool log_convex(double rel_slack = 1e-12) const;
};

// E[I^m] = Gamma(m+1) / prod_{k=1..m} (-phi(k)) for a descending factor,
// evaluated in log space.
MomentLadder moments_descending(const LadderExponent& phi_minus, int N);

// E[I^{-m}] = -psi'(0) prod_{k=1..m-1} psi(-k) / Gamma(m) for the exponent
// of an unkilled spectrally positive process with negative mean.
MomentLadder negative_moments_spectrally_positive(const LaplaceExponent& psi, int N);

// Residual of the Mellin recursion E[I^z] = -(z / Psi_q(z)) E[I^{z-1}].
// Ladder variant checks integer orders; density variant computes E[I^z] by
// quadrature on a caller-supplied grid. Both return the largest relative
// residual (NaN entries are skipped and reported as NaN only if all are).
double mellin_recursion_check(const MomentLadder& ladder,
                              const LaplaceExponent& psi_q);
double mellin_recursion_check(const std::function<double(double)>& density,
                              const LaplaceExponent& psi_q,
                              const std::vector<double>& z_grid);
// Empirical variant over raw draws: returns the largest residual measured in
// standard-error units (so "< 3" means within a 3-sigma band everywhere).
double mellin_recursion_check(const std::vector<double>& draws,
                              const LaplaceExponent& psi_q,
                              const std::vector<double>& z_grid);

// E[I^z] for a density on (0, infinity) by adaptive quadrature.
double mellin_by_quadrature(const std::function<double(double)>& density, double z);

}  // namespace levyfn
