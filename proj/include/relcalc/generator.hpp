#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "relcalc/system.hpp"

namespace relcalc {

/// Uniform double in [0, 1) from the top 53 bits of one engine draw. Unlike
/// std::uniform_real_distribution the sequence is identical on every
/// standard library.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// splitmix64 finaliser; derives independent sub-seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct GeneratorConfig {
  std::size_t components = 10;
  /// Chance that each slot of an implementation reuses an already used
  /// component instead of a fresh one.
  double sharing = 0.3;
  std::size_t min_set_size = 1;
  std::size_t max_set_size = 3;
  double min_reliability = 0.05;
  double max_reliability = 0.95;
};

/// Seeded random instance of the given shape. Deterministic for a fixed
/// seed and config; the result always passes validate_system.
///
/// Throws InputError when z < n, sharing is outside [0,1] or the set-size
/// range is empty, and when the shape is infeasible (some function needs
/// more distinct component sets than `components` can provide).
SystemSpec generate_random_system(const FamilyShape& shape, const GeneratorConfig& config,
                                  std::uint64_t seed);

}  // namespace relcalc
