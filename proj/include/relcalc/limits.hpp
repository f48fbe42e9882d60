#pragma once

#include <cstdint>

namespace relcalc {

/// Enumeration caps. These are configuration: tests keep them small and
/// CLI users may raise them (flags or environment variables).
struct Limits {
  /// Largest |W| = prod t_i that enumerate_product_space will walk.
  std::uint64_t product_space_points = std::uint64_t{1} << 24;
  /// Largest |W| the classical evaluator accepts (it walks 2^|W| - 1 masks).
  unsigned classical_width = 24;
  /// Largest number of covering selections the simplified evaluator walks.
  std::uint64_t simplified_terms = std::uint64_t{1} << 30;
  /// Largest |D| = prod |A_i| for the brute-force coefficient oracle.
  unsigned bruteforce_tuples = 22;

  /// Defaults overridden by RELCALC_ENUM_CAP, RELCALC_CLASSICAL_WIDTH,
  /// RELCALC_CAP_TERMS and RELCALC_BRUTEFORCE_CAP when set.
  static Limits from_environment();
};

}  // namespace relcalc
