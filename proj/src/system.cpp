#include "relcalc/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "relcalc/errors.hpp"

namespace relcalc {

std::string to_string(const ComponentSet& set) {
  std::string out = "{";
  bool first = true;
  set.for_each([&](ComponentId id) {
    if (!first) out += ',';
    out += std::to_string(id);
    first = false;
  });
  out += '}';
  return out;
}

FamilyShape::FamilyShape(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InputError("family shape needs at least one function");
  for (std::size_t t : sizes_) {
    if (t == 0) throw InputError("every function needs at least one implementation");
    m_ += t;
  }
}

FamilyShape FamilyShape::uniform(std::size_t functions, std::size_t impls_per_function) {
  return FamilyShape(std::vector<std::size_t>(functions, impls_per_function));
}

BigInt FamilyShape::product_space_size() const {
  BigInt w = 1;
  for (std::size_t t : sizes_) w *= t;
  return w;
}

std::size_t FamilyShape::max_size() const noexcept {
  return *std::max_element(sizes_.begin(), sizes_.end());
}

std::string FamilyShape::label() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(sizes_[i]);
  }
  return out + ")";
}

FamilyShape SystemSpec::shape() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(functions.size());
  for (const auto& f : functions) sizes.push_back(f.size());
  return FamilyShape(std::move(sizes));
}

const Implementation& SystemSpec::implementation(ImplementationRef ref) const {
  if (ref.function_index >= functions.size() ||
      ref.impl_index >= functions[ref.function_index].size()) {
    throw InputError("unknown implementation (" + std::to_string(ref.function_index) + ", " +
                     std::to_string(ref.impl_index) + ")");
  }
  return functions[ref.function_index][ref.impl_index];
}

std::vector<double> SystemSpec::reliabilities() const {
  std::vector<double> out(components.size(), std::nan(""));
  for (const auto& c : components) {
    if (c.id >= out.size() || !std::isnan(out[c.id])) {
      throw InputError("component ids must be dense and unique (0..z-1)");
    }
    out[c.id] = c.reliability;
  }
  return out;
}

std::vector<ImplementationRef> SystemSpec::implementation_refs() const {
  std::vector<ImplementationRef> refs;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = 0; j < functions[i].size(); ++j) refs.push_back({i, j});
  }
  return refs;
}

bool ValidationReport::has(ViolationKind kind) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

ValidationReport validate_system(const SystemSpec& spec) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };

  // Ids that fit a ComponentSet go in the bitmask; the set only ever holds
  // out-of-range ids, which no implementation can reference.
  ComponentSet known;
  std::set<ComponentId> oversized;
  std::size_t max_id = 0;
  auto contains = [&](ComponentId id) { return id < kMaxComponents ? known.contains(id) : oversized.contains(id); };
  for (const auto& c : spec.components) {
    if (contains(c.id)) {
      add(ViolationKind::kDuplicateComponentId, "duplicate component id " + std::to_string(c.id));
    } else if (c.id < kMaxComponents) {
      known.insert(c.id);
    } else {
      oversized.insert(c.id);
    }
    max_id = std::max<std::size_t>(max_id, c.id);
    if (!(c.reliability > 0.0 && c.reliability < 1.0)) {
      std::ostringstream msg;
      msg << "component " << c.id << ": reliability " << c.reliability
          << " not in open interval (0,1)";
      add(ViolationKind::kReliabilityOutOfRange, msg.str());
    }
  }
  const std::size_t distinct = known.size() + oversized.size();
  if (distinct != 0 && max_id + 1 != distinct) {
    add(ViolationKind::kSparseComponentIds, "component ids are not dense 0..z-1");
  }

  if (spec.functions.empty()) add(ViolationKind::kNoFunctions, "system has no functions");

  for (std::size_t i = 0; i < spec.functions.size(); ++i) {
    const auto& family = spec.functions[i];
    auto fname = [&] { return "function " + std::to_string(i); };
    if (family.empty()) add(ViolationKind::kEmptyFunction, fname() + " has no implementations");
    for (std::size_t j = 0; j < family.size(); ++j) {
      const auto& impl = family[j];
      auto iname = [&] { return fname() + " implementation " + std::to_string(j); };
      if (impl.function_index != i || impl.impl_index != j) {
        add(ViolationKind::kImplementationIndex, iname() + " carries a mismatched index");
      }
      if (impl.components.empty()) {
        add(ViolationKind::kEmptyImplementation, iname() + " has no components");
      }
      if (!impl.components.is_subset_of(known)) {
        impl.components.for_each([&](ComponentId id) {
          if (!known.contains(id)) {
            add(ViolationKind::kDanglingComponent,
                iname() + " references unknown component " + std::to_string(id));
          }
        });
      }
      for (std::size_t k = 0; k < j; ++k) {
        if (family[k].components == impl.components) {
          add(ViolationKind::kDuplicateImplementation,
              iname() + " duplicates the component set of implementation " + std::to_string(k));
        }
      }
    }
  }

  if (spec.network) {
    for (auto& problem : spec.network->problems()) add(ViolationKind::kNetwork, problem);
    auto check = [&](const std::optional<ComponentId>& c, const std::string& where) {
      if (c && !contains(*c)) {
        add(ViolationKind::kNetwork, where + " references unknown component " + std::to_string(*c));
      }
    };
    for (const auto& node : spec.network->nodes) check(node.component, "node '" + node.label + "'");
    for (const auto& edge : spec.network->edges) check(edge.component, "edge");
  }
  return report;
}

void require_valid(const SystemSpec& spec) {
  auto report = validate_system(spec);
  if (!report.ok()) throw InputError("invalid system '" + spec.name + "': " + report.summary());
}

double implementation_probability(const SystemSpec& spec, ImplementationRef impl) {
  const auto& found = spec.implementation(impl);
  const auto rel = spec.reliabilities();
  return product_over(found.components, rel);
}

double intersection_probability(const SystemSpec& spec, std::span<const ImplementationRef> impls) {
  if (impls.empty()) throw InputError("intersection of an empty set of implementations");
  ComponentSet all;
  for (const auto& ref : impls) all |= spec.implementation(ref).components;
  const auto rel = spec.reliabilities();
  return product_over(all, rel);
}

SystemSpec system_from_network(std::string name, std::vector<Component> components,
                               DoorNetwork network) {
  SystemSpec spec;
  spec.name = std::move(name);
  spec.components = std::move(components);
  for (std::size_t i = 0; i < network.terminals.size(); ++i) {
    auto paths = minimal_paths(network, i);
    if (paths.empty()) {
      throw InputError("function " + std::to_string(i) + ": sink unreachable from source");
    }
    std::vector<Implementation> family;
    for (std::size_t j = 0; j < paths.size(); ++j) {
      family.push_back({i, j, "F" + std::to_string(i + 1) + "." + std::to_string(j + 1), paths[j]});
    }
    spec.functions.push_back(std::move(family));
  }
  spec.network = std::move(network);
  return spec;
}

}  // namespace relcalc
