#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace prepart {

// splitmix64: the project's single source of randomness. Everything that
// draws random numbers (synthetic workloads, the random placement baseline,
// test instance generators) goes through this so results are reproducible
// bit-for-bit across runs and platforms, unlike the distributions in
// <random> whose output is implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 usable bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). Plain modulo: the bias is ~n / 2^64, irrelevant for
  // the small ranges used here.
  std::uint64_t next_below(std::uint64_t n) { return n ? next() % n : 0; }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Box-Muller transform; consumes exactly two uniforms per draw (no
  // caching, so the stream position stays predictable).
  double next_normal(double mean, double stddev) {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log() finite
    const double u2 = next_double();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * mag * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace prepart
