#include "relcalc/evaluators.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_set>

#include "relcalc/combinatorics.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/generator.hpp"

namespace relcalc {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kClassical:
      return "classical";
    case Method::kSimplified:
      return "simplified";
    case Method::kMonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "classical") return Method::kClassical;
  if (text == "simplified") return Method::kSimplified;
  if (text == "monte-carlo" || text == "monte_carlo") return Method::kMonteCarlo;
  throw InputError("unknown method '" + std::string(text) + "'");
}

double EvaluationReport::display_reliability() const { return std::clamp(reliability, 0.0, 1.0); }

namespace {

using Clock = std::chrono::steady_clock;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.compensation_);
  }
  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class ProductCache {
 public:
  explicit ProductCache(std::span<const double> reliabilities) : reliabilities_(reliabilities) {}

  double operator()(const ComponentSet& set) {
    auto [it, inserted] = products_.try_emplace(set, 0.0);
    if (inserted) it->second = product_over(set, reliabilities_);
    return it->second;
  }

  [[nodiscard]] const std::unordered_map<ComponentSet, double>& entries() const { return products_; }

 private:
  std::span<const double> reliabilities_;
  std::unordered_map<ComponentSet, double> products_;
};

struct ReductionResult {
  double value = 0.0;
  std::size_t distinct_products = 0;
};

// Runs `units` independent work units, each summed on its own, and folds
// the partial sums in unit order. The unit split never depends on the
// thread count, so neither does the result.
template <class RunUnit>
ReductionResult reduce_units(std::size_t units, unsigned threads, std::span<const double> reliabilities,
                             std::optional<Clock::time_point> deadline, RunUnit run_unit) {
  std::vector<CompensatedSum> partials(units);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(units, 1)));
  std::vector<ProductCache> caches(workers, ProductCache(reliabilities));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> timed_out{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t u = next.fetch_add(1);
        if (u >= units) return;
        if (deadline && Clock::now() > *deadline) {
          timed_out = true;
          stop = true;
          return;
        }
        partials[u] = run_unit(u, caches[w]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  if (timed_out) throw TimeoutError("evaluation exceeded its time budget");

  CompensatedSum total;
  for (const auto& p : partials) total.add(p);

  ReductionResult result{total.value(), 0};
  if (workers == 1) {
    result.distinct_products = caches[0].entries().size();
  } else {
    std::unordered_set<ComponentSet> keys;
    for (const auto& cache : caches) {
      for (const auto& [key, value] : cache.entries()) keys.insert(key);
    }
    result.distinct_products = keys.size();
  }
  return result;
}

std::optional<Clock::time_point> deadline_from(const EvaluationOptions& options, Clock::time_point start) {
  if (!options.time_budget) return std::nullopt;
  return start + std::chrono::duration_cast<Clock::duration>(*options.time_budget);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<ComponentSet> label_masks(const SystemSpec& spec) {
  std::vector<ComponentSet> masks;
  std::size_t m = 0;
  for (const auto& family : spec.functions) m += family.size();
  masks.reserve(m);
  for (const auto& family : spec.functions) {
    for (const auto& impl : family) masks.push_back(impl.components);
  }
  return masks;
}

BigInt checked_simplified_terms(const FamilyShape& shape, const Limits& limits) {
  BigInt terms = count_terms_simplified(shape);
  if (terms > limits.simplified_terms) {
    throw CapExceeded("simplified expansion of shape " + shape.label() + " has " + terms.str() +
                      " terms, above cap " + std::to_string(limits.simplified_terms));
  }
  return terms;
}

// Expansions up to this many terms run as one unit; splitting them costs
// more than it saves.
constexpr unsigned kSingleUnitTerms = 4096;

// Unions B_w for every w in W, in lexicographic order.
std::vector<ComponentSet> product_space_masks(const SystemSpec& spec, const Limits& limits) {
  const auto shape = spec.shape();
  const auto w = shape.product_space_size();
  if (w > limits.classical_width || w > 62) {
    throw CapExceeded("classical expansion of shape " + shape.label() + " needs 2^" + w.str() +
                      " - 1 terms; |W| cap is " + std::to_string(std::min(limits.classical_width, 62U)));
  }
  Limits enumeration = limits;
  enumeration.product_space_points = std::max<std::uint64_t>(limits.product_space_points, 64);
  std::vector<ComponentSet> b;
  b.reserve(w.convert_to<std::size_t>());
  for_each_product_point(
      shape,
      [&](const ProductPoint& point) {
        ComponentSet u;
        for (std::size_t i = 0; i < point.size(); ++i) u |= spec.functions[i][point[i]].components;
        b.push_back(u);
      },
      enumeration);
  return b;
}

constexpr unsigned kLowBits = 16;

// detail::extend_covering, carrying the union of the chosen masks instead
// of the labels. `remaining` labels are still to be picked after `last`.
template <class Visit>
void walk_unions(const LabelLayout& layout, std::span<const ComponentSet> masks, std::size_t remaining,
                 std::size_t last, const ComponentSet& joint, Visit& visit) {
  const std::size_t n = layout.n();
  const std::size_t m = layout.m();
  const std::size_t f = layout.function_of(last);
  if (remaining == 0) {
    if (f == n - 1) visit(joint);
    return;
  }
  const std::size_t end = f + 1 < n ? layout.first_label(f + 2) : m;
  for (std::size_t y = last + 1; y < end; ++y) {
    if (remaining - 1 > m - 1 - y) break;
    if (remaining - 1 < n - 1 - layout.function_of(y)) continue;
    walk_unions(layout, masks, remaining - 1, y, joint | masks[y], visit);
  }
}

}  // namespace

EvaluationReport reliability_simplified(const SystemSpec& spec, const EvaluationOptions& options) {
  const auto start = Clock::now();
  require_valid(spec);
  const auto shape = spec.shape();
  BigInt terms = checked_simplified_terms(shape, options.limits);

  const LabelLayout layout(shape);
  const auto masks = label_masks(spec);
  const auto reliabilities = spec.reliabilities();
  const std::size_t n = shape.n();
  const std::size_t first_count = shape.size(0);
  // One unit per (k, first label), or a single unit for small expansions.
  // Either way the split depends only on the shape.
  const bool single = terms <= kSingleUnitTerms;
  const std::size_t units = single ? 1 : (shape.m() - n + 1) * first_count;

  const std::size_t m = shape.m();
  auto add_unit = [&](std::size_t k, std::size_t first, ProductCache& cache, CompensatedSum& sum) {
    if (k - 1 > m - 1 - first) return;
    const double sign = (k - n) % 2 == 0 ? 1.0 : -1.0;
    auto visit = [&](const ComponentSet& joint) { sum.add(sign * cache(joint)); };
    walk_unions(layout, masks, k - 1, first, masks[first], visit);
  };
  auto run_unit = [&](std::size_t u, ProductCache& cache) {
    CompensatedSum sum;
    if (single) {
      for (std::size_t k = n; k <= m; ++k) {
        for (std::size_t first = 0; first < first_count; ++first) add_unit(k, first, cache, sum);
      }
    } else {
      add_unit(n + u / first_count, u % first_count, cache, sum);
    }
    return sum;
  };
  const auto reduced =
      reduce_units(units, options.threads, reliabilities, deadline_from(options, start), run_unit);

  EvaluationReport report;
  report.method = Method::kSimplified;
  report.reliability = reduced.value;
  report.term_count = std::move(terms);
  report.distinct_product_count = reduced.distinct_products;
  report.wall_time = seconds_since(start);
  return report;
}

EvaluationReport reliability_classical(const SystemSpec& spec, const EvaluationOptions& options) {
  const auto start = Clock::now();
  require_valid(spec);
  const auto b = product_space_masks(spec, options.limits);
  const auto reliabilities = spec.reliabilities();
  const unsigned w = static_cast<unsigned>(b.size());

  // Subsets I of W are the binary counters 1 .. 2^|W|-1. The low bits of a
  // counter index a precomputed union table; the high bits are fixed for
  // a whole unit.
  const unsigned low_bits = std::min(w, kLowBits);
  const std::uint64_t low_span = std::uint64_t{1} << low_bits;
  std::vector<ComponentSet> low_union(low_span);
  for (std::uint64_t l = 1; l < low_span; ++l) {
    low_union[l] = low_union[l & (l - 1)] | b[static_cast<std::size_t>(std::countr_zero(l))];
  }
  const std::uint64_t total = std::uint64_t{1} << w;
  const std::size_t units = static_cast<std::size_t>(total / low_span);

  auto run_unit = [&](std::size_t u, ProductCache& cache) {
    const std::uint64_t high = static_cast<std::uint64_t>(u);
    ComponentSet high_union;
    for (std::uint64_t rest = high; rest != 0; rest &= rest - 1) {
      high_union |= b[low_bits + static_cast<std::size_t>(std::countr_zero(rest))];
    }
    const int high_count = std::popcount(high);
    CompensatedSum sum;
    for (std::uint64_t l = (high == 0 ? 1 : 0); l < low_span; ++l) {
      const int size = high_count + std::popcount(l);
      const double p = cache(high_union | low_union[l]);
      sum.add(size % 2 == 1 ? p : -p);
    }
    return sum;
  };
  const auto reduced =
      reduce_units(units, options.threads, reliabilities, deadline_from(options, start), run_unit);

  EvaluationReport report;
  report.method = Method::kClassical;
  report.reliability = reduced.value;
  report.term_count = count_terms_classical(spec.shape());
  report.distinct_product_count = reduced.distinct_products;
  report.wall_time = seconds_since(start);
  return report;
}

EvaluationReport reliability_monte_carlo(const SystemSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  const auto start = Clock::now();
  require_valid(spec);
  if (samples == 0) throw InputError("Monte Carlo needs at least one sample");
  const auto reliabilities = spec.reliabilities();
  std::mt19937_64 rng(seed);

  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    ComponentSet up;
    for (std::size_t c = 0; c < reliabilities.size(); ++c) {
      if (unit_uniform(rng) < reliabilities[c]) up.insert(static_cast<ComponentId>(c));
    }
    const bool works = std::all_of(spec.functions.begin(), spec.functions.end(), [&](const auto& family) {
      return std::any_of(family.begin(), family.end(),
                         [&](const Implementation& impl) { return impl.components.is_subset_of(up); });
    });
    if (works) ++hits;
  }

  const double n = static_cast<double>(samples);
  const double mean = static_cast<double>(hits) / n;
  EvaluationReport report;
  report.method = Method::kMonteCarlo;
  report.reliability = mean;
  report.standard_error = std::sqrt(mean * (1.0 - mean) / n);
  report.samples = samples;
  report.term_count = samples;
  report.wall_time = seconds_since(start);
  return report;
}

EvaluationReport evaluate(const SystemSpec& spec, Method method, const EvaluationOptions& options,
                          std::uint64_t samples, std::uint64_t seed) {
  switch (method) {
    case Method::kClassical:
      return reliability_classical(spec, options);
    case Method::kSimplified:
      return reliability_simplified(spec, options);
    case Method::kMonteCarlo:
      return reliability_monte_carlo(spec, samples, seed);
  }
  throw InputError("unknown method");
}

void term_stream(const SystemSpec& spec, Method method, const std::function<void(const TermEvent&)>& visit,
                 const Limits& limits) {
  require_valid(spec);
  if (method == Method::kSimplified) {
    const auto shape = spec.shape();
    checked_simplified_terms(shape, limits);
    const LabelLayout layout(shape);
    const auto masks = label_masks(spec);
    for (std::size_t k = shape.n(); k <= shape.m(); ++k) {
      const std::int64_t sign = (k - shape.n()) % 2 == 0 ? 1 : -1;
      for_each_covering_selection(layout, k, [&](std::span<const std::size_t> labels) {
        TermEvent term{ComponentSet{}, sign};
        for (std::size_t x : labels) term.component_mask |= masks[x];
        visit(term);
      });
    }
  } else if (method == Method::kClassical) {
    const auto b = product_space_masks(spec, limits);
    const std::uint64_t total = std::uint64_t{1} << b.size();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      TermEvent term{ComponentSet{}, std::popcount(mask) % 2 == 1 ? 1 : -1};
      for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
        term.component_mask |= b[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      visit(term);
    }
  } else {
    throw InputError("Monte Carlo has no term expansion");
  }
}

TermMap aggregate_terms(const SystemSpec& spec, Method method, const Limits& limits) {
  TermMap terms;
  term_stream(spec, method, [&](const TermEvent& t) { terms[t.component_mask] += t.coefficient; }, limits);
  std::erase_if(terms, [](const auto& entry) { return entry.second == 0; });
  return terms;
}

double evaluate_terms(const TermMap& terms, std::span<const double> reliabilities) {
  std::vector<std::pair<ComponentSet, std::int64_t>> sorted(terms.begin(), terms.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CompensatedSum sum;
  for (const auto& [mask, coefficient] : sorted) {
    sum.add(static_cast<double>(coefficient) * product_over(mask, reliabilities));
  }
  return sum.value();
}

}  // namespace relcalc
