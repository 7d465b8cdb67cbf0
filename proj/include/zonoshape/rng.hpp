#pragma once

#include <cstdint>

namespace zonoshape {

/// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the n-th output is
/// mix(seed + n * 0x9E3779B97F4A7C15), so streams are reproducible on every
/// platform. Uniform doubles use the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1]; never returns 0 so log() is always finite.
  double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Replica i of a run seeded with `base` uses seed base + i.
inline std::uint64_t replica_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

}  // namespace zonoshape
