#pragma once
// Monte Carlo draws of the exponential functional
//   I = int_0^{e_q} e^{xi_t} dt   (e_q independent exponential, or t -> inf
//                                  when q = 0 and the process drifts to -inf).
//
// Schemes:
//   * exact-jump-times: jump arrivals simulated exactly; drift-only segments
//     integrated in closed form; Brownian segments on a sub-grid of width at
//     most dt with trapezoidal accumulation. Finite-activity models only.
//   * small-jump-substitution: jumps with |y| < eps replaced by an extra
//     Brownian term with matched mean and variance, remaining jumps exact.
//   * euler-grid: fixed grid of width dt, left-endpoint accumulation, jumps
//     bundled per cell. Kept as a convergence cross-check.
//
// Killed models draw e_q before the path, so the lifetime is exact. Unkilled
// drifting models stop when the remaining tail proxy e^{xi_t}/|mean| falls
// below tail_rel times the accumulated integral. Large unkilled Brownian
// batches use a first-passage chain: each path stops at a fixed negative
// level and is completed by an independent draw from a geometrically smaller
// pool, which preserves the law exactly (strong Markov at the passage time)
// and cuts the simulated depth per path by roughly a factor of ten.
//
// Determinism: draw i of a batch uses the counter-based stream (seed,
// stream_base + i), so identical (model, n, scheme, seed) inputs give
// bit-identical outputs on the same build.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levyfn/exponent.hpp"

namespace levyfn {

enum class Scheme { ExactJumpTimes, EulerGrid, SmallJumpSubstitution };

// Stable labels used in sidecar metadata and CSV headers, e.g.
// "exact-jump-times", "euler-grid(0.001)", "small-jump-substitution(0.001)".
const char* scheme_name(Scheme s);
std::string scheme_label(Scheme s, double dt, double eps);
std::optional<Scheme> scheme_from_name(const std::string& name);

struct SamplerOptions {
  std::optional<Scheme> scheme;  // default: exact when finite activity,
                                 // small-jump substitution otherwise
  double dt = 1e-3;
  double eps = 1e-3;
  double tail_rel = 1e-6;
};

struct SampleSet {
  std::vector<double> draws;
  Scheme scheme = Scheme::ExactJumpTimes;
  double dt = 0.0;
  double eps = 0.0;
  uint64_t seed = 0;
  uint64_t model_hash = 0;  // filled by the I/O layer when known
  size_t n() const { return draws.size(); }
};

SampleSet sample_functional(const LevyModel& model, size_t n, uint64_t seed,
                            const SamplerOptions& opt = {});

// Right-hand side of the factorization identity: independent product
// I_minus x I_plus where I_minus follows the law tied to the descending
// factor and I_plus is the functional of the spectrally positive process
// with exponent s phi_+(s).
enum class MinusKind {
  ExponentialQ,  // phi_- = -q_-: I_minus = e_{q_-}
  BetaOneGamma,  // spectrally positive case: I_minus ~ Beta(1, gamma_q)
  PathModel,     // general descending subordinator, sampled as a path
};

struct RhsPlan {
  MinusKind minus_kind = MinusKind::ExponentialQ;
  double minus_param = 0.0;  // q_- or gamma_q
  std::optional<LevyModel> minus_model;
  LevyModel plus_model;
};

SampleSet sample_factor_rhs(const RhsPlan& plan, size_t n, uint64_t seed,
                            const SamplerOptions& opt = {});

}  // namespace levyfn
