#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relcalc/component_set.hpp"

namespace relcalc {

struct NetworkNode {
  std::string label;
  /// Component whose survival the node needs; nodes without one never fail.
  std::optional<ComponentId> component;
};

/// Directed connection. Connections are perfectly reliable unless they name
/// a component of their own.
struct NetworkEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::optional<ComponentId> component;
};

/// Source and sink node of one function (one door).
struct TerminalPair {
  std::size_t source = 0;
  std::size_t sink = 0;
};

/// Door-management style topology: implementations of function i are the
/// minimal source-to-sink paths of terminal pair i.
struct DoorNetwork {
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> edges;
  std::vector<TerminalPair> terminals;

  /// Index of the node with this label, if any.
  [[nodiscard]] std::optional<std::size_t> find_node(const std::string& label) const;

  /// Structural problems (dangling node index, self-loop, bad terminal).
  [[nodiscard]] std::vector<std::string> problems() const;
};

/// Component sets of all simple source-to-sink paths for `function_index`,
/// with duplicates and strict supersets of other sets removed. Sets come out
/// sorted in ascending mask order. An unreachable sink yields an empty list.
///
/// Throws InputError for an unknown function index or a malformed network,
/// and CapExceeded when more than `max_paths` simple paths exist.
std::vector<ComponentSet> minimal_paths(const DoorNetwork& net, std::size_t function_index,
                                        std::size_t max_paths = std::size_t{1} << 20);

}  // namespace relcalc
