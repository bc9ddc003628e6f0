// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_RNG_HPP
#define CRSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace crsim {

// Deterministic substream generator: xoshiro256** seeded through SplitMix64
// from a (seed, stream) pair. Trial t of a Monte Carlo run always uses
// stream t, independent of scheduling, which gives exact reproducibility and
// common random numbers across parameter grid points. Gaussian variates use
// an explicit Box-Muller so results do not depend on the standard library's
// distribution implementation.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull);
    for (auto& word : state_) word = splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log argument.
  double next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Circular complex Gaussian with E|z|^2 = 1.
  std::complex<double> next_cnormal() {
    const double radius = std::sqrt(-std::log(next_open_double()));
    const double angle = 2.0 * std::numbers::pi * next_double();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  // Real standard normal. Consumes two uniforms.
  double next_normal() {
    const double radius = std::sqrt(-2.0 * std::log(next_open_double()));
    return radius * std::cos(2.0 * std::numbers::pi * next_double());
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace crsim

#endif  // CRSIM_RNG_HPP
