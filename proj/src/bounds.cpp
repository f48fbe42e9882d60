#include "relcalc/bounds.hpp"

#include <cmath>

#include "relcalc/errors.hpp"
#include "relcalc/evaluators.hpp"

namespace relcalc {

PairwiseSums pairwise_sums(const SystemSpec& spec) {
  require_valid(spec);
  if (spec.functions.size() != 1) {
    throw InputError("the bound applies to a single union of events; system '" + spec.name + "' has " +
                     std::to_string(spec.functions.size()) + " functions");
  }
  std::vector<ComponentSet> events;
  for (const auto& impl : spec.functions.front()) events.push_back(impl.components);
  const auto rel = spec.reliabilities();
  return pairwise_sums(events, rel);
}

PairwiseSums pairwise_sums(std::span<const ComponentSet> events, std::span<const double> reliabilities) {
  PairwiseSums sums;
  for (std::size_t i = 0; i < events.size(); ++i) {
    sums.s1 += product_over(events[i], reliabilities);
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      sums.s2 += product_over(events[i] | events[j], reliabilities);
    }
  }
  return sums;
}

double dawson_sankoff_curve(double s1, double s2, double theta) {
  const double sq = s1 * s1;
  return theta * sq / (2.0 * s2 + (2.0 - theta) * s1) + (1.0 - theta) * sq / (2.0 * s2 + (1.0 - theta) * s1);
}

BoundSummary dawson_sankoff_bound(double s1, double s2) {
  if (!(s1 > 0.0)) throw InputError("Dawson-Sankoff bound needs s1 > 0");
  if (!(s2 >= 0.0)) throw InputError("Dawson-Sankoff bound needs s2 >= 0");
  BoundSummary out;
  out.s1 = s1;
  out.s2 = s2;
  const double ratio = 2.0 * s2 / s1;
  out.theta = ratio - std::floor(ratio);
  out.bound_full = dawson_sankoff_curve(s1, s2, out.theta);
  out.bound_relaxed = s1 * s1 / (2.0 * s2 + s1);
  return out;
}

namespace {

struct Scored {
  double exact;
  double bound;
};

Scored score(const SystemSpec& spec) {
  return {reliability_simplified(spec).reliability, dawson_sankoff_bound(pairwise_sums(spec)).bound_relaxed};
}

}  // namespace

bool is_nonmonotone_pair(const SystemSpec& x, const SystemSpec& y) {
  const Scored a = score(x);
  const Scored b = score(y);
  return (a.exact < b.exact && a.bound > b.bound) || (b.exact < a.exact && b.bound > a.bound);
}

std::vector<NonmonotoneWitness> nonmonotonicity_search(const NonmonotoneSearchConfig& config,
                                                       std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("search needs at least one trial");
  const FamilyShape shape({config.events});
  std::vector<NonmonotoneWitness> witnesses;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SystemSpec x = generate_random_system(shape, config.generator, mix_seed(seed, 2 * trial));
    SystemSpec y = generate_random_system(shape, config.generator, mix_seed(seed, 2 * trial + 1));
    Scored sx = score(x);
    Scored sy = score(y);
    if (sy.exact < sx.exact) {
      std::swap(x, y);
      std::swap(sx, sy);
    }
    if (sx.exact < sy.exact && sx.bound > sy.bound) {
      witnesses.push_back({trial, std::move(x), std::move(y), sx.exact, sy.exact, sx.bound, sy.bound});
    }
  }
  return witnesses;
}

}  // namespace relcalc
