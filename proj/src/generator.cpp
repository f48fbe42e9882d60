#include "relcalc/generator.hpp"

#include <algorithm>
#include <limits>

#include "relcalc/errors.hpp"

namespace relcalc {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InputError("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr int kMaxAttempts = 1000;

BigInt distinct_sets_available(std::size_t z, std::size_t lo, std::size_t hi) {
  BigInt total = 0;
  for (std::size_t s = lo; s <= hi; ++s) {
    BigInt c = 1;
    for (std::size_t i = 0; i < s; ++i) c = c * (z - i) / (i + 1);
    total += c;
  }
  return total;
}

}  // namespace

SystemSpec generate_random_system(const FamilyShape& shape, const GeneratorConfig& config,
                                  std::uint64_t seed) {
  const std::size_t z = config.components;
  if (z < shape.n()) throw InputError("need at least as many components as functions");
  if (z > kMaxComponents) {
    throw InputError("at most " + std::to_string(kMaxComponents) + " components supported");
  }
  if (!(config.sharing >= 0.0 && config.sharing <= 1.0)) {
    throw InputError("sharing must lie in [0,1]");
  }
  if (config.min_set_size == 0 || config.min_set_size > config.max_set_size) {
    throw InputError("implementation size range must satisfy 1 <= min <= max");
  }
  if (config.min_set_size > z) throw InputError("minimum implementation size exceeds component count");
  const std::size_t max_size = std::min(config.max_set_size, z);
  if (distinct_sets_available(z, config.min_set_size, max_size) < shape.max_size()) {
    throw InputError("infeasible shape: " + std::to_string(z) +
                     " components cannot give every function distinct implementations");
  }

  std::mt19937_64 rng(seed);
  SystemSpec spec;
  spec.name = "random" + shape.label() + "-z" + std::to_string(z) + "-seed" + std::to_string(seed);
  spec.seed = seed;
  for (std::size_t c = 0; c < z; ++c) {
    const double a = config.min_reliability +
                     (config.max_reliability - config.min_reliability) * unit_uniform(rng);
    spec.components.push_back({static_cast<ComponentId>(c), a, "c" + std::to_string(c)});
  }

  // Fresh components are handed out in a seeded random order.
  std::vector<ComponentId> fresh(z);
  for (std::size_t c = 0; c < z; ++c) fresh[c] = static_cast<ComponentId>(c);
  for (std::size_t i = z; i > 1; --i) std::swap(fresh[i - 1], fresh[uniform_below(rng, i)]);
  std::size_t next_fresh = 0;
  std::vector<ComponentId> used;
  std::vector<bool> is_used(z, false);

  auto pick_from = [&](const std::vector<ComponentId>& pool, const ComponentSet& exclude)
      -> std::optional<ComponentId> {
    std::vector<ComponentId> options;
    for (ComponentId c : pool) {
      if (!exclude.contains(c)) options.push_back(c);
    }
    if (options.empty()) return std::nullopt;
    return options[uniform_below(rng, options.size())];
  };

  for (std::size_t i = 0; i < shape.n(); ++i) {
    std::vector<Implementation> family;
    for (std::size_t j = 0; j < shape.size(i); ++j) {
      ComponentSet set;
      bool placed = false;
      for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
        set = ComponentSet{};
        const std::size_t size =
            config.min_set_size + uniform_below(rng, max_size - config.min_set_size + 1);
        for (std::size_t slot = 0; slot < size; ++slot) {
          std::optional<ComponentId> pick;
          const bool share = !used.empty() && unit_uniform(rng) < config.sharing;
          if (share) pick = pick_from(used, set);
          if (!pick && next_fresh < z) pick = fresh[next_fresh++];
          if (!pick) pick = pick_from(fresh, set);
          set.insert(*pick);
        }
        placed = std::none_of(family.begin(), family.end(),
                              [&](const Implementation& other) { return other.components == set; });
      }
      if (!placed) {
        throw InputError("could not draw distinct implementations for function " + std::to_string(i));
      }
      set.for_each([&](ComponentId c) {
        if (!is_used[c]) {
          is_used[c] = true;
          used.push_back(c);
        }
      });
      family.push_back({i, j, "F" + std::to_string(i + 1) + "." + std::to_string(j + 1), set});
    }
    spec.functions.push_back(std::move(family));
  }
  return spec;
}

}  // namespace relcalc
