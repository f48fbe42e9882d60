#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "relcalc/bigint.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/limits.hpp"
#include "relcalc/system.hpp"

namespace relcalc {

/// A point w of W = {0..t_1-1} x ... x {0..t_n-1}.
using ProductPoint = std::vector<std::size_t>;

/// One member of C_k: k distinct implementations, every function hit at
/// least once. `chosen` is sorted.
struct CoveringSelection {
  std::vector<ImplementationRef> chosen;

  [[nodiscard]] std::size_t k() const noexcept { return chosen.size(); }
  friend bool operator==(const CoveringSelection&, const CoveringSelection&) = default;
};

/// Implementations of a shape numbered 0..m-1 in (function, impl) order.
class LabelLayout {
 public:
  explicit LabelLayout(const FamilyShape& shape);

  [[nodiscard]] std::size_t n() const noexcept { return first_.size() - 1; }
  [[nodiscard]] std::size_t m() const noexcept { return function_of_.size(); }
  [[nodiscard]] std::size_t function_of(std::size_t label) const { return function_of_[label]; }
  /// First label of `function`; first_label(n()) == m().
  [[nodiscard]] std::size_t first_label(std::size_t function) const { return first_[function]; }
  [[nodiscard]] ImplementationRef ref(std::size_t label) const {
    return {function_of_[label], label - first_[function_of_[label]]};
  }

 private:
  std::vector<std::size_t> function_of_;
  std::vector<std::size_t> first_;
};

namespace detail {

// Extends `chosen` (non-empty, sorted labels) in lexicographic order. A
// successor may only come from the current function or the next one, so no
// function is ever skipped; the two bounds on the remaining count prune
// every branch that cannot reach a full selection.
template <class Visit>
void extend_covering(const LabelLayout& layout, std::size_t k, std::vector<std::size_t>& chosen,
                     Visit& visit) {
  const std::size_t n = layout.n();
  const std::size_t m = layout.m();
  const std::size_t last = chosen.back();
  const std::size_t f = layout.function_of(last);
  if (chosen.size() == k) {
    if (f == n - 1) visit(std::span<const std::size_t>(chosen));
    return;
  }
  const std::size_t end = f + 1 < n ? layout.first_label(f + 2) : m;
  const std::size_t remaining = k - chosen.size() - 1;
  for (std::size_t y = last + 1; y < end; ++y) {
    if (remaining > m - 1 - y) break;
    if (remaining < n - 1 - layout.function_of(y)) continue;
    chosen.push_back(y);
    extend_covering(layout, k, chosen, visit);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Visits every member of C_k whose smallest label is `first` (a label of
/// function 0), in canonical order. `visit` receives the sorted labels.
template <class Visit>
void for_each_covering_selection_from(const LabelLayout& layout, std::size_t k, std::size_t first,
                                      Visit&& visit) {
  const std::size_t n = layout.n();
  const std::size_t m = layout.m();
  if (layout.function_of(first) != 0 || k < n || k > m) return;
  if (k - 1 < n - 1 || k - 1 > m - 1 - first) return;
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  chosen.push_back(first);
  detail::extend_covering(layout, k, chosen, visit);
}

/// Visits every member of C_k exactly once, lexicographically ordered by
/// sorted (function, impl) pairs. Work is proportional to |C_k| * m.
/// Throws InputError unless n <= k <= m.
template <class Visit>
void for_each_covering_selection(const LabelLayout& layout, std::size_t k, Visit&& visit) {
  if (k < layout.n() || k > layout.m()) {
    throw InputError("selection size " + std::to_string(k) + " outside [" +
                     std::to_string(layout.n()) + ", " + std::to_string(layout.m()) + "]");
  }
  for (std::size_t first = 0; first < layout.first_label(1); ++first) {
    for_each_covering_selection_from(layout, k, first, visit);
  }
}

/// Materialised C_k. Throws CapExceeded when the family is larger than
/// `limits.simplified_terms`.
std::vector<CoveringSelection> enumerate_covering_selections(const FamilyShape& shape, std::size_t k,
                                                             const Limits& limits = {});

/// Visits every point of W once in lexicographic order. Throws CapExceeded
/// when |W| exceeds `limits.product_space_points`.
template <class Visit>
void for_each_product_point(const FamilyShape& shape, Visit&& visit, const Limits& limits = {}) {
  if (shape.product_space_size() > limits.product_space_points) {
    throw CapExceeded("product space of shape " + shape.label() + " exceeds enumeration cap " +
                      std::to_string(limits.product_space_points));
  }
  ProductPoint w(shape.n(), 0);
  while (true) {
    visit(static_cast<const ProductPoint&>(w));
    std::size_t i = shape.n();
    while (i > 0) {
      --i;
      if (++w[i] < shape.size(i)) break;
      w[i] = 0;
      if (i == 0) return;
    }
  }
}

std::vector<ProductPoint> enumerate_product_space(const FamilyShape& shape, const Limits& limits = {});

/// Number of summands of inclusion-exclusion over W: 2^|W| - 1.
BigInt count_terms_classical(const FamilyShape& shape);

/// Number of summands of the covering-selection formula: prod (2^t_i - 1).
BigInt count_terms_simplified(const FamilyShape& shape);

/// |C_k| for every k (index k, entries below n are zero), by coefficient
/// extraction from prod ((1+x)^t_i - 1).
std::vector<BigInt> covering_counts_by_size(const FamilyShape& shape);

/// Exact binomial coefficient; zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Subset of the abstract universe A, one bit per element id (< 64).
using ElementSet = std::uint64_t;

/// Pairwise-disjoint non-empty blocks A_1..A_n over element ids 0..63.
class DisjointFamily {
 public:
  /// Throws InputError on an empty block, an overlap or an id >= 64.
  explicit DisjointFamily(std::vector<std::vector<unsigned>> blocks);

  /// Blocks of the given sizes over consecutive element ids.
  static DisjointFamily from_sizes(std::span<const std::size_t> sizes);

  [[nodiscard]] std::size_t n() const noexcept { return masks_.size(); }
  /// k = |A|
  [[nodiscard]] std::size_t k() const noexcept;
  [[nodiscard]] std::span<const ElementSet> block_masks() const noexcept { return masks_; }
  [[nodiscard]] ElementSet universe() const noexcept;
  /// |D| = prod |A_i|
  [[nodiscard]] std::uint64_t tuple_count() const;

 private:
  std::vector<ElementSet> masks_;
};

/// p(I, A) = prod |A_i intersect I|. Throws InputError if I is not within A.
std::uint64_t subset_product_size(const DisjointFamily& family, ElementSet subset);

/// c(A, t): number of t-subsets of D = A_1 x ... x A_n whose coordinates
/// cover A, from the alternating sum over subsets I of A. Throws
/// InputError for t == 0.
BigInt coefficient_count(const DisjointFamily& family, std::size_t t);

/// Oracle for coefficient_count: walks every subset of D. Throws
/// CapExceeded when |D| > limits.bruteforce_tuples.
BigInt coefficient_count_bruteforce(const DisjointFamily& family, std::size_t t,
                                    const Limits& limits = {});

/// All brute-force counts at once, indexed by t in 0..|D|.
std::vector<std::uint64_t> coefficient_counts_bruteforce(const DisjointFamily& family,
                                                         const Limits& limits = {});

/// sum_{t=1}^{|D|} (-1)^(t-1) c(A, t).
BigInt alternating_coefficient_sum(const DisjointFamily& family);

}  // namespace relcalc
