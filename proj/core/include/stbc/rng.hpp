#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "stbc/numerics.hpp"

namespace stbc {

/// Finalizer of SplitMix64; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream for (point, trial): seed ^ hash(point, trial).
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t point,
                                       std::uint64_t trial) noexcept {
  return seed ^ mix64(mix64(point + 0x9e3779b97f4a7c15ULL) ^ trial);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator, so it plugs into
/// <random> distributions, but the samplers below avoid those so streams are
/// identical across standard library implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(SplitMix64& gen) noexcept {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// CN(0, 1) sample: E|z|^2 = 1, via the Box-Muller transform.
inline Complex complex_gaussian(SplitMix64& gen) noexcept {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  const double r = std::sqrt(-std::log(u1));
  const double phase = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phase), r * std::sin(phase)};
}

}  // namespace stbc
