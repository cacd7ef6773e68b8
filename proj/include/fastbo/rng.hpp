// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_RNG_HPP
#define FASTBO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace fastbo {

// Seeded random source. mt19937_64 is bit-reproducible by the standard; the
// variate mappings below are hand-rolled because std::uniform_*_distribution
// is implementation-defined and would break run-to-run reproducibility across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return k >= n ? n - 1 : k;
  }

  // Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Standard normal via Box-Muller. Consumes exactly two uniforms per draw;
  // the second variate is discarded so the stream layout stays simple.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  std::uint64_t next_raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fastbo

#endif  // FASTBO_RNG_HPP
