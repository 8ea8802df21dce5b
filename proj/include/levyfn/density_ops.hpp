#pragma once

#include <functional>
#include <vector>

#include "levyfn/series.hpp"

namespace levyfn {

// Density of the product of two independent positive random variables:
// m(x) = int_0^inf m1(x/y) m2(y) dy/y, by adaptive quadrature after the
// substitution y = e^t with doubling windows, 1e-8 relative per point.
std::vector<double> density_product(const std::function<double(double)>& m1,
                                    const std::function<double(double)>& m2,
                                    const std::vector<double>& x_grid);

struct SpectralNegDensity {
  std::vector<double> values;
  // E[I_-^gamma] / Gamma(gamma), the limit of x^{gamma+1} m(x) at infinity.
  double tail_constant = 0.0;
  // x^{gamma+1} m(x) matches the constant at x = 1e3 and 1e4 within 1%.
  bool tail_limit_ok = false;
  // gamma_q <= 1 implies the density of 1/I is completely monotone.
  bool reciprocal_completely_monotone = false;
};

// Density of the functional for a spectrally negative model, from the
// descending-factor density: m(x) = x^{-g-1}/Gamma(g) int e^{-y/x} y^g m_-(y) dy.
SpectralNegDensity density_spectrally_negative(
    const std::function<double(double)>& m_minus, double gamma_q,
    const std::vector<double>& x_grid);

enum class GammaRegime { SmallX, LargeX };

// Two-regime expansions for the tilted-stable worked family.
// SmallX: Gamma^a(g+1) sum_n Gamma(a'(n+1)+1)/Gamma^a(g-n) (-a'x)^n/n!, with
// the reciprocal Gamma at negative arguments resolved by reflection and the
// sign carried outside the power. LargeX: the asymptotic tail series in
// x^{-l}, l = 1/a', under optimal truncation.
DensitySeries gamma_family_series(double alpha, double gamma, double alpha_prime,
                                  GammaRegime regime);
std::vector<double> gamma_family_densities(double alpha, double gamma,
                                           double alpha_prime,
                                           const std::vector<double>& x_grid,
                                           GammaRegime regime);

// Entire-series density (g^a/Gamma^a(g+1)) sum_n Gamma^a(n+g+1) (-x)^n/n!,
// valid for alpha in (0,1]; at alpha = 1 it sums to g (1+x)^{-g-1}.
double gamma_family_complete_density(double alpha, double gamma, double x);

}  // namespace levyfn
