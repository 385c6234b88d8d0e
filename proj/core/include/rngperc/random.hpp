#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

namespace rngperc {

// 64-bit mixer used for every seed/stream derivation in the project. The exact
// mapping is part of the serialized-format contract: outputs reproduce
// bit-for-bit only if this function is unchanged. See docs/reproducibility.md.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child stream seed for (master seed, stream label).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) noexcept {
  return splitmix64(splitmix64(master) + label);
}

// Well-known stream labels. Kept small and stable; new labels append only.
namespace stream {
inline constexpr std::uint64_t kPoissonCount = 1;
inline constexpr std::uint64_t kPoissonPosition = 2;
inline constexpr std::uint64_t kSiteMarks = 3;
inline constexpr std::uint64_t kBondMarks = 4;
inline constexpr std::uint64_t kReplica = 5;
inline constexpr std::uint64_t kBootstrap = 6;
inline constexpr std::uint64_t kMcArea = 7;
}  // namespace stream

// Stable identity of a point, derived from the coordinate bit patterns.
// Marks keyed by this value are invariant under reordering of the point list.
inline std::uint64_t point_key(double x, double y) noexcept {
  const auto bx = std::bit_cast<std::uint64_t>(x);
  const auto by = std::bit_cast<std::uint64_t>(y);
  return splitmix64(splitmix64(bx) + by);
}

inline std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(a) + b);
}

// Map to a double in [0, 1) using the top 53 bits.
inline double to_unit_double(std::uint64_t u) noexcept { return (u >> 11) * 0x1.0p-53; }

// xoshiro256++, seeded through splitmix64.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x = splitmix64(x);
      w = x;
    }
    // splitmix64 never yields four zeros from distinct inputs, but keep the
    // generator well-defined for any seed.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ULL;
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform() noexcept { return to_unit_double(next()); }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  double exponential() noexcept { return -std::log1p(-uniform()); }

  // Poisson count via exponential spacings; exact for any mean, O(mean).
  std::uint64_t poisson(double mean) noexcept {
    std::uint64_t n = 0;
    double acc = exponential();
    while (acc <= mean) {
      ++n;
      acc += exponential();
    }
    return n;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace rngperc
