#include "levyfn/rng.hpp"

#include <cmath>

namespace levyfn {
namespace {

constexpr uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr uint64_t kWey0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kWey1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(uint64_t a, uint64_t b, uint64_t& hi, uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<uint64_t>(p >> 64);
  lo = static_cast<uint64_t>(p);
}

inline void philox_block(const std::array<uint64_t, 4>& ctr,
                         const std::array<uint64_t, 2>& key, uint64_t* out) {
  uint64_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
  uint64_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c0, hi0, lo0);
    mulhilo(kMul1, c2, hi1, lo1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
    k0 += kWey0;
    k1 += kWey1;
  }
  out[0] = c0;
  out[1] = c1;
  out[2] = c2;
  out[3] = c3;
}

// Ziggurat tables for the standard normal, 128 layers of equal area
// V = 9.91256303526217e-3 with tail cutoff R = 3.442619855899. The accept
// test uses integer thresholds k[i] so the hot path is one compare and one
// multiply; borderline mantissas fall through to the exact wedge check, so
// rounding in k[i] cannot bias the distribution.
struct ZigguratTables {
  double x[129];
  double f[129];
  double w[128];    // x[i] * 2^-53
  uint64_t k[128];  // accept if (mantissa) < k[i]
  ZigguratTables() {
    const double r = 3.442619855899;
    const double v = 9.91256303526217e-3;
    auto pdf = [](double t) { return std::exp(-0.5 * t * t); };
    x[0] = v / pdf(r);
    x[1] = r;
    for (int i = 1; i < 128; ++i) {
      double arg = -2.0 * std::log(v / x[i] + pdf(x[i]));
      x[i + 1] = arg > 0.0 ? std::sqrt(arg) : 0.0;
    }
    x[128] = 0.0;
    for (int i = 0; i <= 128; ++i) f[i] = pdf(x[i]);
    for (int i = 0; i < 128; ++i) {
      w[i] = x[i] * 0x1.0p-53;
      double t = std::floor(0x1.0p53 * x[i + 1] / x[i] - 0.5);
      k[i] = t > 0.0 ? static_cast<uint64_t>(t) : 0;
    }
  }
};

const ZigguratTables g_zig;

}  // namespace

Rng::Rng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), ctr_{0, 0, 0, 0}, key_{seed, stream} {
  pos_ = static_cast<int>(buf_.size());
}

void Rng::refill() {
  std::array<uint64_t, 4> c = ctr_;
  const std::array<uint64_t, 2> k = key_;
  for (int b = 0; b < kBlocks; ++b) {
    // Increment with carry before generating, matching the reference stream.
    if (++c[0] == 0) {
      if (++c[1] == 0 && ++c[2] == 0) ++c[3];
    }
    philox_block(c, k, buf_.data() + 4 * b);
  }
  ctr_ = c;
  pos_ = 0;
}

uint64_t Rng::next_u64() {
  if (pos_ == static_cast<int>(buf_.size())) refill();
  return buf_[pos_++];
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
  const ZigguratTables& t = g_zig;
  for (;;) {
    uint64_t u = next_u64();
    int i = static_cast<int>(u & 127u);
    uint64_t m = u >> 11;
    if (m < t.k[i]) {
      double val = (static_cast<double>(m) + 0.5) * t.w[i];
      return (u & 128u) ? -val : val;
    }
    double sign = (u & 128u) ? -1.0 : 1.0;
    double x = (static_cast<double>(m) + 0.5) * t.w[i];
    if (x < t.x[i + 1]) return sign * x;
    if (i == 0) {
      // Tail beyond R by Marsaglia's exponential rejection.
      const double r = t.x[1];
      double ex, ey;
      do {
        ex = -std::log(uniform()) / r;
        ey = -std::log(uniform());
      } while (2.0 * ey < ex * ex);
      return sign * (r + ex);
    }
    double fy = t.f[i] + uniform() * (t.f[i + 1] - t.f[i]);
    if (fy < std::exp(-0.5 * x * x)) return sign * x;
  }
}

uint64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  double limit = std::exp(-mean);
  uint64_t k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

}  // namespace levyfn
