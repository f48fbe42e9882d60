#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/network.hpp"
#include "relcalc/system.hpp"

namespace relcalc {
namespace {

// Every node i carries component i.
DoorNetwork make_network(std::size_t nodes, std::vector<std::pair<std::size_t, std::size_t>> edges,
                         std::vector<TerminalPair> terminals) {
  DoorNetwork net;
  for (std::size_t i = 0; i < nodes; ++i) {
    net.nodes.push_back({"n" + std::to_string(i), static_cast<ComponentId>(i)});
  }
  for (auto [from, to] : edges) net.edges.push_back({from, to, std::nullopt});
  net.terminals = std::move(terminals);
  return net;
}

TEST(MinimalPaths, Chain) {
  const auto net = make_network(3, {{0, 1}, {1, 2}}, {{0, 2}});
  EXPECT_EQ(minimal_paths(net, 0), (std::vector<ComponentSet>{ComponentSet{0, 1, 2}}));
}

TEST(MinimalPaths, Diamond) {
  const auto net = make_network(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {{0, 3}});
  EXPECT_EQ(minimal_paths(net, 0), (std::vector<ComponentSet>{ComponentSet{0, 1, 3}, ComponentSet{0, 2, 3}}));
}

TEST(MinimalPaths, DominatedPathRemoved) {
  // s->a->t and s->a->b->t: the second path's set contains the first.
  const auto net = make_network(4, {{0, 1}, {1, 3}, {1, 2}, {2, 3}}, {{0, 3}});
  EXPECT_EQ(minimal_paths(net, 0), (std::vector<ComponentSet>{ComponentSet{0, 1, 3}}));
}

TEST(MinimalPaths, ReliableNodesAndEdgeComponents) {
  DoorNetwork net;
  net.nodes = {{"s", 0}, {"hub", std::nullopt}, {"t", 1}};
  net.edges = {{0, 1, std::nullopt}, {1, 2, 2}, {0, 2, std::nullopt}};
  net.terminals = {{0, 2}};
  // s->t directly ({0,1}) dominates s->hub->t ({0,1,2}).
  EXPECT_EQ(minimal_paths(net, 0), (std::vector<ComponentSet>{ComponentSet{0, 1}}));
}

TEST(MinimalPaths, UnreachableSinkIsEmpty) {
  const auto net = make_network(3, {{0, 1}}, {{0, 2}});
  EXPECT_TRUE(minimal_paths(net, 0).empty());
}

TEST(MinimalPaths, Errors) {
  const auto net = make_network(3, {{0, 1}}, {{0, 2}});
  EXPECT_THROW(minimal_paths(net, 1), InputError);
  auto looped = make_network(2, {{0, 0}, {0, 1}}, {{0, 1}});
  EXPECT_FALSE(looped.problems().empty());
  EXPECT_THROW(minimal_paths(looped, 0), InputError);

  // Complete DAG on 12 nodes has 2^10 source-to-sink paths.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j) edges.emplace_back(i, j);
  }
  const auto dense = make_network(12, edges, {{0, 11}});
  EXPECT_THROW(minimal_paths(dense, 0, 100), CapExceeded);
  EXPECT_EQ(minimal_paths(dense, 0).size(), 1u);  // the direct edge dominates everything
}

TEST(MinimalPaths, OutputIsAnAntichainOnRandomGraphs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        if (i != j && rng() % 4 == 0) edges.emplace_back(i, j);
      }
    }
    const auto net = make_network(8, edges, {{0, 7}});
    const auto sets = minimal_paths(net, 0);
    for (std::size_t a = 0; a < sets.size(); ++a) {
      for (std::size_t b = 0; b < sets.size(); ++b) {
        if (a != b) EXPECT_FALSE(sets[a].is_subset_of(sets[b]));
      }
      EXPECT_TRUE(sets[a].contains(0));
      EXPECT_TRUE(sets[a].contains(7));
    }
  }
}

TEST(SystemFromNetwork, DmsFixtureMatchesCommittedSystem) {
  const auto source = testing::load_fixture("dms_2door_network.json");
  ASSERT_TRUE(source.network.has_value());
  const auto built = system_from_network(source.name, source.components, *source.network);
  const auto committed = testing::load_fixture("dms_2door.json");
  ASSERT_EQ(built.functions.size(), committed.functions.size());
  for (std::size_t i = 0; i < built.functions.size(); ++i) {
    ASSERT_EQ(built.functions[i].size(), committed.functions[i].size());
    for (std::size_t j = 0; j < built.functions[i].size(); ++j) {
      EXPECT_EQ(built.functions[i][j].components, committed.functions[i][j].components);
    }
  }
  EXPECT_TRUE(validate_system(built).ok());
}

TEST(SystemFromNetwork, UnreachableFunctionRejected) {
  auto net = make_network(3, {{0, 1}}, {{0, 1}, {0, 2}});
  std::vector<Component> comps{{0, 0.9, ""}, {1, 0.9, ""}, {2, 0.9, ""}};
  EXPECT_THROW(system_from_network("x", comps, net), InputError);
}

}  // namespace
}  // namespace relcalc
