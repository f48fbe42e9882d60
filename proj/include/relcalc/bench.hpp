#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "relcalc/bigint.hpp"
#include "relcalc/generator.hpp"
#include "relcalc/system.hpp"

namespace relcalc {

struct BenchConfig {
  std::vector<FamilyShape> shapes;
  /// Instances generated per shape.
  std::size_t repeats = 1;
  /// Budget for each classical run; slower runs are recorded as timeouts.
  double timeout_seconds = 400.0;
  std::uint64_t seed = 1;
  /// Components per instance; defaults to 4 m.
  std::optional<std::size_t> components;
  double sharing = 0.3;
  unsigned threads = 1;
  /// When set, every generated instance is saved here and referenced from
  /// its row.
  std::optional<std::filesystem::path> instances_dir;
};

struct BenchRow {
  std::string shape;
  std::size_t functions = 0;
  std::size_t implementations = 0;
  std::size_t components = 0;
  std::size_t connections = 0;
  std::uint64_t seed = 0;
  double t_new = 0.0;
  /// Empty when the classical run exceeded the budget.
  std::optional<double> t_old;
  BigInt terms_new = 0;
  BigInt terms_old = 0;
  double reliability_new = 0.0;
  std::optional<double> reliability_old;
  std::string instance;
};

/// Times both exact evaluators on the same seeded instance per row.
/// Classical runs that exceed the budget (or whose 2^|W| - 1 terms cannot
/// be indexed by a 62-bit counter) are reported as timeouts.
std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Times both evaluators on one given instance.
BenchRow bench_instance(const SystemSpec& spec, double timeout_seconds, unsigned threads = 1);

/// Fixed header and column order.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_pretty(std::ostream& out, const std::vector<BenchRow>& rows);

/// Parses "3x3", "2,3,3" or "(2,3,3)" into a shape. Throws InputError.
FamilyShape parse_shape(const std::string& text);

}  // namespace relcalc
