#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wclab {

// Bit-reproducible generator: mt19937_64 seeded by a splitmix64 mix of
// (base, stream, seed). Uniform draws use the top 53 bits directly rather
// than std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+splitmix64/v1";

  Rng(std::uint64_t base, std::uint64_t stream, std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wclab
