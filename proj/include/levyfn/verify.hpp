#pragma once
// Independent verification of factorization identities by simulation.  The
// library computes ladder factors analytically; this module re-derives the
// distributional consequences (law of the exponential functional as an
// independent product, and the length-biased action of the exponent
// transform) from Monte Carlo draws, so that a wrong factor pair is caught
// by sample statistics rather than by the algebra that produced it.

#include <string>
#include <vector>

#include "levyfn/ladders.hpp"
#include "levyfn/sampler.hpp"

namespace levyfn {

struct Factorization {
  LadderExponent phi_plus;
  LadderExponent phi_minus;
  RhsPlan rhs;
  bool rhs_supported = false;
  double gamma_q = 0.0;  // set for root-based one-sided factorizations
  std::string route;     // subordinator | rational | onesided-positive |
                         // onesided-negative
};

// Chooses a factorization route from the model shape:
//   * killed subordinator: phi_- = -q, phi_+ = Psi_q(s)/q rearranged as an
//     ascending triplet; product law e_q x I_{s phi_+};
//   * Gaussian + two-sided exponential jumps: rational split;
//   * spectrally one-sided: root-based factors (Beta(1, gamma_q) minus law
//     in the spectrally positive case).
// Throws when no route applies.
Factorization build_factorization(const LevyModel& model);

// Max scaled deviation between -phi_+ phi_- and the model exponent over an
// interior grid of the common strip intersected with [-5, 5].
double factor_consistency(const LevyModel& model, const Factorization& f,
                          int grid_points = 21);

struct TestEntry {
  std::string statistic;  // "factor-consistency", "ks", "moment-z-<m>"
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct TestReport {
  std::vector<TestEntry> entries;
  bool pass = false;
  size_t n = 0;
  uint64_t seed = 0;
  double consistency = 0.0;
};

// Simulates both sides of the product identity and compares them with a
// two-sample KS test (asymptotic p > 0.01) and moment z-scores (|z| < 3) for
// integer orders below the positive root of Psi_q.  The analytic consistency
// gate runs first and throws InconsistentFactors unless force is set; force
// exists so deliberately perturbed factors can demonstrate detection.
TestReport test_factorization(const LevyModel& model, const Factorization& f,
                              size_t n, uint64_t seed,
                              const SamplerOptions& opt = {},
                              bool force = false);

// Convenience overload building the factorization internally.
TestReport test_factorization(const LevyModel& model, size_t n, uint64_t seed,
                              const SamplerOptions& opt = {});

// Length-biased identity: draws of the transformed model reweighted by
// x^{-beta} must reproduce the law of the original functional.  Entries:
// weighted KS p-value and a z-score for the weight normalization against
// the sample estimate of E[I^beta].
TestReport test_length_bias(const LevyModel& model, double beta, size_t n,
                            uint64_t seed, const SamplerOptions& opt = {});

}  // namespace levyfn
