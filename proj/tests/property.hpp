#pragma once

// Seeded generators for property tests. Every failure message carries the
// seed so a case can be replayed.

#include <cstdint>
#include <random>
#include <string>

#include "cyclic3/eisenstein.hpp"

namespace cyclic3::testing {

inline constexpr std::uint64_t kSeed = 0xC0FFEE123ULL;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : seed_(seed), rng_(seed) {}

  i64 uniform(i64 lo, i64 hi) { return lo + static_cast<i64>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  EisensteinInteger eisenstein(i64 bound) { return {uniform(-bound, bound), uniform(-bound, bound)}; }

  EisensteinInteger nonzero_eisenstein(i64 bound) {
    for (;;) {
      EisensteinInteger z = eisenstein(bound);
      if (!z.is_zero()) return z;
    }
  }

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::string where() const { return "seed=" + std::to_string(seed_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace cyclic3::testing
