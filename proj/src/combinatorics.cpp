#include "relcalc/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace relcalc {

LabelLayout::LabelLayout(const FamilyShape& shape) {
  first_.reserve(shape.n() + 1);
  function_of_.reserve(shape.m());
  for (std::size_t i = 0; i < shape.n(); ++i) {
    first_.push_back(function_of_.size());
    function_of_.insert(function_of_.end(), shape.size(i), i);
  }
  first_.push_back(function_of_.size());
}

std::vector<CoveringSelection> enumerate_covering_selections(const FamilyShape& shape, std::size_t k,
                                                             const Limits& limits) {
  const LabelLayout layout(shape);
  if (k >= shape.n() && k <= shape.m()) {
    if (covering_counts_by_size(shape)[k] > limits.simplified_terms) {
      throw CapExceeded("|C_" + std::to_string(k) + "| for shape " + shape.label() +
                        " exceeds term cap " + std::to_string(limits.simplified_terms));
    }
  }
  std::vector<CoveringSelection> out;
  for_each_covering_selection(layout, k, [&](std::span<const std::size_t> labels) {
    CoveringSelection sel;
    sel.chosen.reserve(labels.size());
    for (std::size_t x : labels) sel.chosen.push_back(layout.ref(x));
    out.push_back(std::move(sel));
  });
  return out;
}

std::vector<ProductPoint> enumerate_product_space(const FamilyShape& shape, const Limits& limits) {
  std::vector<ProductPoint> out;
  for_each_product_point(shape, [&](const ProductPoint& w) { out.push_back(w); }, limits);
  return out;
}

BigInt count_terms_classical(const FamilyShape& shape) {
  // 2^|W| needs |W| bits; refuse shapes whose count would not fit in memory.
  constexpr unsigned kMaxBits = 1U << 26;
  const BigInt w = shape.product_space_size();
  if (w > kMaxBits) {
    throw CapExceeded("2^|W| - 1 for shape " + shape.label() + " has more than 2^26 bits");
  }
  BigInt count = 1;
  count <<= static_cast<unsigned>(w);
  return count - 1;
}

BigInt count_terms_simplified(const FamilyShape& shape) {
  std::uint64_t small = 1;
  bool fits = true;
  for (std::size_t t : shape.sizes()) {
    fits = fits && t < 64 && !__builtin_mul_overflow(small, (std::uint64_t{1} << t) - 1, &small);
  }
  if (fits) return small;

  BigInt count = 1;
  for (std::size_t t : shape.sizes()) {
    BigInt factor = 1;
    factor <<= static_cast<unsigned>(t);
    count *= factor - 1;
  }
  return count;
}

std::vector<BigInt> covering_counts_by_size(const FamilyShape& shape) {
  std::vector<BigInt> poly{1};
  for (std::size_t t : shape.sizes()) {
    std::vector<BigInt> next(poly.size() + t, 0);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      if (poly[d] == 0) continue;
      for (std::size_t s = 1; s <= t; ++s) next[d + s] += poly[d] * binomial(t, s);
    }
    poly = std::move(next);
  }
  return poly;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

DisjointFamily::DisjointFamily(std::vector<std::vector<unsigned>> blocks) {
  if (blocks.empty()) throw InputError("disjoint family needs at least one block");
  ElementSet seen = 0;
  for (const auto& block : blocks) {
    if (block.empty()) throw InputError("disjoint family blocks must be non-empty");
    ElementSet mask = 0;
    for (unsigned e : block) {
      if (e >= 64) throw InputError("element ids must be below 64");
      const ElementSet bit = ElementSet{1} << e;
      if ((seen & bit) != 0) throw InputError("blocks must be pairwise disjoint");
      seen |= bit;
      mask |= bit;
    }
    masks_.push_back(mask);
  }
}

DisjointFamily DisjointFamily::from_sizes(std::span<const std::size_t> sizes) {
  std::vector<std::vector<unsigned>> blocks;
  unsigned next = 0;
  for (std::size_t s : sizes) {
    std::vector<unsigned> block;
    for (std::size_t i = 0; i < s; ++i) block.push_back(next++);
    blocks.push_back(std::move(block));
  }
  return DisjointFamily(std::move(blocks));
}

std::size_t DisjointFamily::k() const noexcept {
  return static_cast<std::size_t>(std::popcount(universe()));
}

ElementSet DisjointFamily::universe() const noexcept {
  ElementSet all = 0;
  for (auto m : masks_) all |= m;
  return all;
}

std::uint64_t DisjointFamily::tuple_count() const {
  std::uint64_t d = 1;
  for (auto m : masks_) {
    const auto size = static_cast<std::uint64_t>(std::popcount(m));
    if (d > UINT64_MAX / size) throw CapExceeded("|D| overflows 64 bits");
    d *= size;
  }
  return d;
}

std::uint64_t subset_product_size(const DisjointFamily& family, ElementSet subset) {
  if ((subset & ~family.universe()) != 0) throw InputError("subset is not contained in A");
  std::uint64_t p = 1;
  for (auto m : family.block_masks()) p *= static_cast<std::uint64_t>(std::popcount(m & subset));
  return p;
}

BigInt coefficient_count(const DisjointFamily& family, std::size_t t) {
  if (t == 0) throw InputError("coefficient_count needs t >= 1");
  const std::size_t n = family.n();
  const std::size_t k = family.k();
  std::vector<std::size_t> sizes;
  for (auto m : family.block_masks()) sizes.push_back(static_cast<std::size_t>(std::popcount(m)));

  // sum over I of binom(p(I), t) with |I| fixed: p(I) depends only on the
  // per-block counts s_j = |A_j cap I|, and prod binom(|A_j|, s_j) subsets
  // share each count vector.
  std::vector<std::size_t> s(n, 0);
  std::function<BigInt(std::size_t, std::size_t, BigInt, std::uint64_t)> sum_fixed_size =
      [&](std::size_t j, std::size_t left, BigInt multiplicity, std::uint64_t p) -> BigInt {
    if (j == n) return left == 0 ? multiplicity * binomial(p, t) : BigInt{0};
    BigInt total = 0;
    for (std::size_t sj = 0; sj <= std::min(sizes[j], left); ++sj) {
      total += sum_fixed_size(j + 1, left - sj, multiplicity * binomial(sizes[j], sj), p * sj);
    }
    return total;
  };

  BigInt result = 0;
  for (std::size_t i = 0; i <= k - n; ++i) {
    const BigInt inner = sum_fixed_size(0, k - i, 1, 1);
    if (i % 2 == 0) {
      result += inner;
    } else {
      result -= inner;
    }
  }
  return result;
}

std::vector<std::uint64_t> coefficient_counts_bruteforce(const DisjointFamily& family,
                                                         const Limits& limits) {
  const std::uint64_t d = family.tuple_count();
  if (d > limits.bruteforce_tuples || d > 63) {
    throw CapExceeded("|D| = " + std::to_string(d) + " exceeds brute-force cap " +
                      std::to_string(limits.bruteforce_tuples));
  }
  // Coordinate set s(e) of every tuple e of D, in odometer order.
  std::vector<ElementSet> tuples{0};
  for (auto block : family.block_masks()) {
    std::vector<ElementSet> next;
    for (ElementSet prefix : tuples) {
      for (ElementSet rest = block; rest != 0; rest &= rest - 1) {
        next.push_back(prefix | (rest & (~rest + 1)));
      }
    }
    tuples = std::move(next);
  }

  const ElementSet all = family.universe();
  std::vector<std::uint64_t> counts(d + 1, 0);
  std::function<void(std::size_t, std::size_t, ElementSet)> walk = [&](std::size_t from,
                                                                       std::size_t size,
                                                                       ElementSet covered) {
    if (covered == all) ++counts[size];
    for (std::size_t e = from; e < tuples.size(); ++e) walk(e + 1, size + 1, covered | tuples[e]);
  };
  walk(0, 0, 0);
  return counts;
}

BigInt coefficient_count_bruteforce(const DisjointFamily& family, std::size_t t,
                                    const Limits& limits) {
  const auto counts = coefficient_counts_bruteforce(family, limits);
  return t < counts.size() ? BigInt{counts[t]} : BigInt{0};
}

BigInt alternating_coefficient_sum(const DisjointFamily& family) {
  const std::uint64_t d = family.tuple_count();
  BigInt sum = 0;
  for (std::uint64_t t = 1; t <= d; ++t) {
    const BigInt c = coefficient_count(family, t);
    if (t % 2 == 1) {
      sum += c;
    } else {
      sum -= c;
    }
  }
  return sum;
}

}  // namespace relcalc
