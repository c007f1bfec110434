#pragma once

#include <cstdint>
#include <random>

namespace prorata {

/// splitmix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

/// Seed of trial `trial` in an experiment seeded with `seed`. The same trial
/// index gets the same stream regardless of which other parameters vary.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

/// Seeded generator with a portable uniform draw. std::uniform_real_distribution
/// is implementation-defined, which would break byte-identical outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double open_unit() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on (lo, hi). Returns lo when the interval is empty.
  double uniform(double lo, double hi) noexcept {
    if (!(hi > lo)) return lo;
    return lo + (hi - lo) * open_unit();
  }

  std::uint64_t next() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prorata
