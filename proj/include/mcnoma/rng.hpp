#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mcnoma {

// 64-bit finalizer (splitmix64 step), used to derive stream seeds.
inline constexpr std::uint64_t hash_mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable, splittable pseudo-random stream.
//
// Every stochastic routine takes one of these explicitly. split() derives an
// independent child stream from the root seed and up to three labels; the
// derivation ignores how much the parent has been consumed, so realization
// and block streams can be addressed deterministically regardless of
// evaluation order. Uniform and exponential variates come from 53-bit raw
// uniforms through inverse CDFs, keeping sample streams identical across
// platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(hash_mix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng split(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    std::uint64_t h = hash_mix64(seed_ ^ 0x5851f42d4c957f2dULL);
    h = hash_mix64(h + a);
    h = hash_mix64(h + b);
    h = hash_mix64(h + c);
    return Rng(h);
  }

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1) with 53-bit resolution
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // inverse-CDF exponential sample with the given rate
  double exponential(double rate) { return -std::log1p(-next_double()) / rate; }

  // unbiased integer in [0, n)
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace mcnoma
