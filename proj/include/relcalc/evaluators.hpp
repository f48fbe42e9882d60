#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "relcalc/bigint.hpp"
#include "relcalc/component_set.hpp"
#include "relcalc/limits.hpp"
#include "relcalc/system.hpp"

namespace relcalc {

enum class Method { kClassical, kSimplified, kMonteCarlo };

std::string_view to_string(Method method);
/// Accepts "classical", "simplified", "monte-carlo". Throws InputError.
Method parse_method(std::string_view text);

/// One signed summand: coefficient * prod_{c in component_mask} a_c.
struct TermEvent {
  ComponentSet component_mask;
  std::int64_t coefficient = 0;
};

struct EvaluationReport {
  Method method = Method::kSimplified;
  /// Raw signed sum; never clamped.
  double reliability = 0.0;
  BigInt term_count = 0;
  std::size_t distinct_product_count = 0;
  double wall_time = 0.0;
  /// Monte Carlo only.
  std::optional<double> standard_error;
  std::uint64_t samples = 0;

  /// reliability clamped to [0, 1] for printing.
  [[nodiscard]] double display_reliability() const;
};

struct EvaluationOptions {
  Limits limits{};
  /// Worker threads. The result is bit-identical for every value.
  unsigned threads = 1;
  /// Wall-clock budget; exceeded budgets raise TimeoutError.
  std::optional<std::chrono::duration<double>> time_budget;
};

/// Exact reliability as the alternating sum over covering selections C_k,
/// k = n..m, each term the product of a_c over the selection's component
/// union. Throws InputError for invalid specs and CapExceeded when
/// prod (2^t_i - 1) exceeds `limits.simplified_terms`.
EvaluationReport reliability_simplified(const SystemSpec& spec, const EvaluationOptions& options = {});

/// Exact reliability by inclusion-exclusion over every non-empty subset of
/// the product space W. Throws CapExceeded when |W| exceeds
/// `limits.classical_width`, TimeoutError when the budget runs out.
EvaluationReport reliability_classical(const SystemSpec& spec, const EvaluationOptions& options = {});

/// Independent sampling estimate with its standard error. Deterministic for
/// a fixed seed.
EvaluationReport reliability_monte_carlo(const SystemSpec& spec, std::uint64_t samples,
                                         std::uint64_t seed);

/// Dispatch on `method`; Monte Carlo uses `samples` and `seed`.
EvaluationReport evaluate(const SystemSpec& spec, Method method, const EvaluationOptions& options = {},
                          std::uint64_t samples = 1'000'000, std::uint64_t seed = 1);

/// Streams every signed term of the chosen exact expansion in canonical
/// order. Monte Carlo is rejected with InputError.
void term_stream(const SystemSpec& spec, Method method,
                 const std::function<void(const TermEvent&)>& visit, const Limits& limits = {});

using TermMap = std::unordered_map<ComponentSet, std::int64_t>;

/// Coefficients of term_stream summed per component mask, zero entries
/// dropped.
TermMap aggregate_terms(const SystemSpec& spec, Method method, const Limits& limits = {});

/// sum coefficient * prod a_c over an aggregated map, in ascending mask
/// order.
double evaluate_terms(const TermMap& terms, std::span<const double> reliabilities);

}  // namespace relcalc
