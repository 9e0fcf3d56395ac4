#pragma once

#include <cstdint>
#include <optional>

namespace utie {

// SplitMix64 viewed as a counter-based generator: the k-th output (k = 1, 2,
// ...) is mix(seed + k * 0x9E3779B97F4A7C15). Outputs are fully determined
// by (seed, k), independent of platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n) by rejection (no modulo bias). n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::uint64_t state_;
};

// Box-Muller over consecutive SplitMix64 draws (u1, u2) with
// u1 in (0, 1], u2 in [0, 1). Each pair yields r*cos(2*pi*u2) first, then
// r*sin(2*pi*u2) on the following call.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) noexcept : rng_(seed) {}

  double next() noexcept;
  SplitMix64& uniform_source() noexcept { return rng_; }

 private:
  SplitMix64 rng_;
  std::optional<double> spare_;
};

}  // namespace utie
