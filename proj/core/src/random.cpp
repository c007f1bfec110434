#include "prorata/random.hpp"

namespace prorata {

std::uint64_t mix_seed(std::uint64_t value) noexcept {
  std::uint64_t z = value + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return mix_seed(seed ^ mix_seed(trial + 0x632BE59BD9B4E019ULL));
}

}  // namespace prorata
