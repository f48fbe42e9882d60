#include "relcalc/network.hpp"

#include <algorithm>

#include "relcalc/errors.hpp"

namespace relcalc {

std::optional<std::size_t> DoorNetwork::find_node(const std::string& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return i;
  }
  return std::nullopt;
}

std::vector<std::string> DoorNetwork::problems() const {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.from >= nodes.size() || edge.to >= nodes.size()) {
      out.push_back("edge " + std::to_string(e) + " references a missing node");
    } else if (edge.from == edge.to) {
      out.push_back("edge " + std::to_string(e) + " is a self-loop on '" + nodes[edge.from].label + "'");
    }
  }
  for (std::size_t t = 0; t < terminals.size(); ++t) {
    if (terminals[t].source >= nodes.size() || terminals[t].sink >= nodes.size()) {
      out.push_back("terminal pair " + std::to_string(t) + " references a missing node");
    }
  }
  return out;
}

namespace {

struct PathSearch {
  const DoorNetwork& net;
  std::vector<std::vector<std::size_t>> out_edges;
  std::vector<bool> on_path;
  std::size_t sink = 0;
  std::size_t max_paths = 0;
  std::size_t found = 0;
  std::vector<ComponentSet> sets;

  void walk(std::size_t node, ComponentSet acc) {
    if (const auto& c = net.nodes[node].component) acc.insert(*c);
    if (node == sink) {
      if (++found > max_paths) {
        throw CapExceeded("more than " + std::to_string(max_paths) + " simple paths");
      }
      sets.push_back(acc);
      return;
    }
    on_path[node] = true;
    for (std::size_t e : out_edges[node]) {
      const auto& edge = net.edges[e];
      if (on_path[edge.to]) continue;
      ComponentSet next = acc;
      if (edge.component) next.insert(*edge.component);
      walk(edge.to, next);
    }
    on_path[node] = false;
  }
};

}  // namespace

std::vector<ComponentSet> minimal_paths(const DoorNetwork& net, std::size_t function_index,
                                        std::size_t max_paths) {
  if (function_index >= net.terminals.size()) {
    throw InputError("no terminal pair for function " + std::to_string(function_index));
  }
  if (auto problems = net.problems(); !problems.empty()) {
    throw InputError("malformed network: " + problems.front());
  }

  PathSearch search{net, std::vector<std::vector<std::size_t>>(net.nodes.size()),
                    std::vector<bool>(net.nodes.size(), false), net.terminals[function_index].sink,
                    max_paths, 0, {}};
  for (std::size_t e = 0; e < net.edges.size(); ++e) search.out_edges[net.edges[e].from].push_back(e);
  search.walk(net.terminals[function_index].source, ComponentSet{});

  auto& sets = search.sets;
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  std::vector<ComponentSet> minimal;
  for (const auto& candidate : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [&](const ComponentSet& other) {
      return other != candidate && other.is_subset_of(candidate);
    });
    if (!dominated) minimal.push_back(candidate);
  }
  return minimal;
}

}  // namespace relcalc
