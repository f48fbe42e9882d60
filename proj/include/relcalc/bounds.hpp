#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relcalc/generator.hpp"
#include "relcalc/system.hpp"

namespace relcalc {

/// First two Bonferroni sums of the implementations A_k of a single
/// function: s1 = sum P(A_k), s2 = sum_{i<j} P(A_i cap A_j).
struct PairwiseSums {
  double s1 = 0.0;
  double s2 = 0.0;
};

struct BoundSummary {
  double s1 = 0.0;
  double s2 = 0.0;
  /// Fractional part of 2 s2 / s1, in [0, 1).
  double theta = 0.0;
  double bound_full = 0.0;
  /// theta = 0 relaxation: s1^2 / (2 s2 + s1).
  double bound_relaxed = 0.0;
};

/// Throws InputError unless `spec` is valid and has exactly one function.
PairwiseSums pairwise_sums(const SystemSpec& spec);

/// Sums over raw events given as component sets. Unlike implementations of
/// one function, these may repeat a set.
PairwiseSums pairwise_sums(std::span<const ComponentSet> events, std::span<const double> reliabilities);

/// Dawson-Sankoff lower bound on the union probability and its relaxation.
/// Throws InputError unless s1 > 0 and s2 >= 0.
BoundSummary dawson_sankoff_bound(double s1, double s2);

inline BoundSummary dawson_sankoff_bound(const PairwiseSums& sums) {
  return dawson_sankoff_bound(sums.s1, sums.s2);
}

/// The relaxed bound depends only on (s1, s2) through this expression of
/// theta; exposed so callers can inspect the full curve.
double dawson_sankoff_curve(double s1, double s2, double theta);

struct NonmonotoneSearchConfig {
  std::size_t events = 3;
  GeneratorConfig generator{5, 0.5, 1, 3, 0.05, 0.95};
};

/// A pair whose exact reliabilities and relaxed bounds are ordered
/// oppositely: exact(lower) < exact(higher) but bound(lower) > bound(higher).
struct NonmonotoneWitness {
  std::uint64_t trial = 0;
  SystemSpec lower;
  SystemSpec higher;
  double exact_lower = 0.0;
  double exact_higher = 0.0;
  double bound_lower = 0.0;
  double bound_higher = 0.0;
};

/// True when (x, y) or (y, x) inverts the ordering. Exact values come from
/// the simplified evaluator.
bool is_nonmonotone_pair(const SystemSpec& x, const SystemSpec& y);

/// Samples `trials` pairs of single-function systems, derived from `seed`,
/// and returns every inverting pair in trial order.
std::vector<NonmonotoneWitness> nonmonotonicity_search(const NonmonotoneSearchConfig& config,
                                                       std::uint64_t trials, std::uint64_t seed);

}  // namespace relcalc
