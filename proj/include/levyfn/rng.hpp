#pragma once

#include <array>
#include <cstdint>

namespace levyfn {

// Counter-based Philox4x64-10 generator with numpy-compatible output order
// (the counter is incremented before each block, so the first block is
// counter 1). Distinct (seed, stream) pairs give independent streams, which
// keeps parallel or chained sampling bit-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  uint64_t next_u64();
  double uniform();      // (0,1), top 53 bits, never exactly 0 or 1
  double normal();       // standard normal via 128-layer ziggurat
  double exponential();  // rate 1 by inversion
  // Poisson count by Knuth's product method (intended for small means).
  uint64_t poisson(double mean);

  uint64_t seed_value() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  static constexpr int kBlocks = 64;  // philox blocks per refill
  void refill();

  uint64_t seed_, stream_;
  std::array<uint64_t, 4> ctr_;
  std::array<uint64_t, 2> key_;
  std::array<uint64_t, 4 * kBlocks> buf_;
  int pos_;
};

inline double Rng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace levyfn
