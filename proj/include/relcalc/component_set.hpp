#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef RELCALC_MAX_COMPONENTS
#define RELCALC_MAX_COMPONENTS 128
#endif

namespace relcalc {

using ComponentId = std::uint32_t;

inline constexpr std::size_t kMaxComponents = RELCALC_MAX_COMPONENTS;

/// Fixed-width set of component ids backed by 64-bit words.
///
/// Union and subset tests are O(words); the value is hashable and totally
/// ordered so it can key caches and canonical term maps.
template <std::size_t Bits>
class BasicComponentSet {
  static_assert(Bits > 0);

 public:
  static constexpr std::size_t kBits = Bits;
  static constexpr std::size_t kWords = (Bits + 63) / 64;

  constexpr BasicComponentSet() = default;

  BasicComponentSet(std::initializer_list<ComponentId> ids) {
    for (ComponentId id : ids) insert(id);
  }

  explicit BasicComponentSet(std::span<const ComponentId> ids) {
    for (ComponentId id : ids) insert(id);
  }

  void insert(ComponentId id) {
    if (id >= Bits) {
      throw std::out_of_range("component id " + std::to_string(id) +
                              " exceeds mask width " + std::to_string(Bits));
    }
    words_[id / 64] |= std::uint64_t{1} << (id % 64);
  }

  [[nodiscard]] bool contains(ComponentId id) const noexcept {
    return id < Bits && ((words_[id / 64] >> (id % 64)) & 1U) != 0;
  }

  [[nodiscard]] bool empty() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  [[nodiscard]] std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  [[nodiscard]] bool is_subset_of(const BasicComponentSet& other) const noexcept {
    for (std::size_t i = 0; i < kWords; ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  BasicComponentSet& operator|=(const BasicComponentSet& other) noexcept {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= other.words_[i];
    return *this;
  }

  BasicComponentSet& operator&=(const BasicComponentSet& other) noexcept {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= other.words_[i];
    return *this;
  }

  friend BasicComponentSet operator|(BasicComponentSet a, const BasicComponentSet& b) noexcept {
    return a |= b;
  }

  friend BasicComponentSet operator&(BasicComponentSet a, const BasicComponentSet& b) noexcept {
    return a &= b;
  }

  /// Calls `f(id)` for every member in ascending id order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const auto bit = static_cast<ComponentId>(std::countr_zero(w));
        f(static_cast<ComponentId>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<ComponentId> to_vector() const {
    std::vector<ComponentId> out;
    out.reserve(size());
    for_each([&](ComponentId id) { out.push_back(id); });
    return out;
  }

  [[nodiscard]] std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const BasicComponentSet&, const BasicComponentSet&) = default;
  friend auto operator<=>(const BasicComponentSet&, const BasicComponentSet&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

using ComponentSet = BasicComponentSet<kMaxComponents>;

/// Product of `reliabilities[c]` over the members of `set`, multiplied in
/// ascending id order so the value is reproducible bit for bit.
template <std::size_t Bits>
[[nodiscard]] double product_over(const BasicComponentSet<Bits>& set,
                                  std::span<const double> reliabilities) {
  double p = 1.0;
  set.for_each([&](ComponentId id) { p *= reliabilities[id]; });
  return p;
}

std::string to_string(const ComponentSet& set);

}  // namespace relcalc

template <std::size_t Bits>
struct std::hash<relcalc::BasicComponentSet<Bits>> {
  std::size_t operator()(const relcalc::BasicComponentSet<Bits>& s) const noexcept {
    return s.hash();
  }
};
