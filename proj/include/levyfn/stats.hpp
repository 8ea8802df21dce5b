#pragma once
// Statistics for comparing sample sets with each other or with analytic
// distributions: Kolmogorov-Smirnov tests (two-sample, one-sample, weighted
// two-sample with effective sample size), moment z-scores, and histogram
// density estimates with standard errors.

#include <cstddef>
#include <functional>
#include <vector>

namespace levyfn {

struct KsResult {
  double d = 0.0;        // sup-distance between the distribution functions
  double lambda = 0.0;   // scaled statistic fed to the Kolmogorov tail
  double p_value = 0.0;  // asymptotic Q(lambda)
  double n_eff1 = 0.0;   // effective sizes entering the scaling
  double n_eff2 = 0.0;
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

KsResult ks_one_sample(std::vector<double> a,
                       const std::function<double(double)>& cdf);

// Two-sample test where sample a carries nonnegative weights; its side enters
// the scaling through the effective size (sum w)^2 / sum w^2.
KsResult ks_weighted_two_sample(std::vector<double> a,
                                std::vector<double> weights,
                                std::vector<double> b);

struct MomentStat {
  double order = 0.0;
  double value = 0.0;  // sample moment (or difference of sample moments)
  double target = 0.0;
  double se = 0.0;
  double z = 0.0;  // |value - target| / se
};

// Sample moment E[x^order] with its standard error.
MomentStat sample_moment(const std::vector<double>& a, double order);

// z-score of a sample moment against an analytic target.
MomentStat moment_vs_value(const std::vector<double>& a, double order,
                           double target);

// Two-sample z-score for E[a^order] - E[b^order] with combined SE.
MomentStat moment_two_sample(const std::vector<double>& a,
                             const std::vector<double>& b, double order);

struct DensityEstimate {
  double x = 0.0;
  double value = 0.0;
  double se = 0.0;
};

// Central histogram bin [x-h, x+h] estimate of the density at x.
DensityEstimate histogram_density(const std::vector<double>& draws, double x,
                                  double halfwidth);

}  // namespace levyfn
