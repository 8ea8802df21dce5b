#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "levyfn/exponent.hpp"

namespace levyfn {

enum class SeriesMode {
  Raw,          // sum a_n (-x)^n / n!, valid for x < radius
  Euler,        // (1-u) sum a~_m u^m with u = b x / (1 + b x), valid for x > 0
  GammaSmallX,  // sum c_n sign_n (scale x)^n / n!, convergent expansion near 0
  GammaLargeX,  // l x^{-l-1} sum c_n (-1)^n x^{-l n} / n!, asymptotic, optimally
                // truncated with a half-term correction
};

// Power-series representation of a density. Coefficients are held as
// log-magnitude plus sign so factorial-rate growth never overflows.
struct DensitySeries {
  SeriesMode mode = SeriesMode::Raw;
  std::vector<double> log_abs;
  std::vector<int> sign;
  double radius = 0.0;   // raw-mode convergence radius (inf when b == 0)
  double scale_b = 0.0;  // Euler map scale b, or the GammaSmallX variable scale
  double tail_l = 0.0;   // GammaLargeX tail exponent l

  double coefficient(size_t n) const;
  double eval(double x) const;
  double eval(double x, size_t* terms_used) const;
};

// Density of the exponential functional of a killed subordinator:
// m(x) = sum a_n (-x)^n / n! with a_n = q prod_{k=1..n} (-Psi_q(-k)).
// The model variant validates subordinator shape (no Gaussian part, no
// negative jumps, nonnegative natural drift, q > 0, non-increasing jump
// density) and reads the drift b off the model; the callable variant trusts
// the caller to pass the exponent of a killed subordinator and its drift.
DensitySeries density_series_subordinator(const LevyModel& model, SeriesMode mode);
DensitySeries density_series_subordinator(const std::function<double(double)>& psi_q,
                                          double b, SeriesMode mode);

// Shared truncation rule for convergent (eventually decaying) series: stop
// once the term magnitude is past its peak and two successive partial sums
// agree to 1e-14 relative; hard cap at nmax terms.
double truncated_series_sum(const std::function<double(size_t)>& term,
                            size_t nmax, size_t* used);

}  // namespace levyfn
