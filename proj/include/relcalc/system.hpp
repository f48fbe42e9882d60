#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relcalc/bigint.hpp"
#include "relcalc/component_set.hpp"
#include "relcalc/network.hpp"

namespace relcalc {

struct Component {
  ComponentId id = 0;
  /// Probability of not failing; must lie strictly inside (0, 1).
  double reliability = 0.5;
  std::string label;
};

/// Identifies implementation `impl_index` of function `function_index`.
struct ImplementationRef {
  std::size_t function_index = 0;
  std::size_t impl_index = 0;

  friend auto operator<=>(const ImplementationRef&, const ImplementationRef&) = default;
};

struct Implementation {
  std::size_t function_index = 0;
  std::size_t impl_index = 0;
  std::string label;
  ComponentSet components;

  [[nodiscard]] ImplementationRef ref() const { return {function_index, impl_index}; }
};

/// Cardinalities (t_1, ..., t_n) of the implementation families.
class FamilyShape {
 public:
  /// Throws InputError when `sizes` is empty or contains a zero.
  explicit FamilyShape(std::vector<std::size_t> sizes);

  /// `functions` families of `impls_per_function` implementations each.
  static FamilyShape uniform(std::size_t functions, std::size_t impls_per_function);

  [[nodiscard]] std::span<const std::size_t> sizes() const noexcept { return sizes_; }
  [[nodiscard]] std::size_t size(std::size_t function_index) const { return sizes_.at(function_index); }
  [[nodiscard]] std::size_t n() const noexcept { return sizes_.size(); }
  /// m = sum t_i
  [[nodiscard]] std::size_t m() const noexcept { return m_; }
  /// |W| = prod t_i, exact.
  [[nodiscard]] BigInt product_space_size() const;
  [[nodiscard]] std::size_t max_size() const noexcept;

  /// "(t_1,...,t_n)"
  [[nodiscard]] std::string label() const;

  friend bool operator==(const FamilyShape&, const FamilyShape&) = default;

 private:
  std::vector<std::size_t> sizes_;
  std::size_t m_ = 0;
};

/// A whole problem instance.
struct SystemSpec {
  std::string name;
  std::vector<Component> components;
  std::vector<std::vector<Implementation>> functions;
  std::optional<DoorNetwork> network;

  // Values claimed for this system elsewhere; carried for display only.
  std::optional<double> claimed_reliability;
  std::optional<double> claimed_lower_bound;
  std::optional<std::uint64_t> seed;

  [[nodiscard]] FamilyShape shape() const;

  /// Throws InputError when the reference is out of range.
  [[nodiscard]] const Implementation& implementation(ImplementationRef ref) const;

  /// Reliabilities indexed by component id. Requires dense ids.
  [[nodiscard]] std::vector<double> reliabilities() const;

  /// Flattened implementation list in (function, impl) order.
  [[nodiscard]] std::vector<ImplementationRef> implementation_refs() const;
};

enum class ViolationKind {
  kNoFunctions,
  kEmptyFunction,
  kEmptyImplementation,
  kDanglingComponent,
  kDuplicateImplementation,
  kReliabilityOutOfRange,
  kDuplicateComponentId,
  kSparseComponentIds,
  kImplementationIndex,
  kNetwork,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  [[nodiscard]] bool has(ViolationKind kind) const noexcept;
  [[nodiscard]] std::string summary() const;
};

/// Collects every invariant violation of `spec`. Never throws.
ValidationReport validate_system(const SystemSpec& spec);

/// Throws InputError carrying the validation summary unless `spec` is valid.
void require_valid(const SystemSpec& spec);

/// prod_{c in impl} a_c for a validated spec.
double implementation_probability(const SystemSpec& spec, ImplementationRef impl);

/// Probability that every listed implementation works: the product of a_c
/// over the union of their component sets. Throws InputError when `impls`
/// is empty or a reference is unknown.
double intersection_probability(const SystemSpec& spec, std::span<const ImplementationRef> impls);

/// Builds a system whose function i holds the minimal paths of terminal
/// pair i of `network`. Throws InputError if some function has no path.
SystemSpec system_from_network(std::string name, std::vector<Component> components,
                               DoorNetwork network);

}  // namespace relcalc
