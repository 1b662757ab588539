#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "bpmcf/bdd.hpp"
#include "bpmcf/errors.hpp"
#include "oracles.hpp"

using namespace bpmcf;
using namespace bpmcf::bdd;

namespace {

std::vector<Item> figure_items() {
  return {{1, 2, 1}, {2, 3, 1}, {3, 2, 1}, {4, 3, 2}, {5, 2, 2}};
}

// Node ids follow the drawing: r = 0, u1..u14 = 1..14, t = 15.
// Each entry: from, to, taken, cost.
const std::vector<std::tuple<int, int, int, int>> kFigureArcs = {
    {0, 1, 0, 0},   {0, 2, 1, 1},   {1, 3, 0, 0},   {1, 4, 1, 1},   {2, 5, 0, 0},
    {3, 6, 0, 0},   {3, 7, 1, 1},   {4, 8, 0, 0},   {5, 7, 0, 0},   {5, 9, 1, 0},
    {6, 10, 0, 0},  {6, 11, 1, 1},  {7, 12, 0, 0},  {8, 13, 0, 0},  {9, 14, 0, 0},
    {10, 15, 0, 0}, {10, 15, 1, 1}, {11, 15, 0, 0}, {12, 15, 0, 0}, {12, 15, 1, 1},
    {13, 15, 0, 0}, {14, 15, 0, 0},
};

const std::vector<NodeState> kFigureStates = {
    {4, false}, {4, false}, {2, true},  {4, false}, {1, true},  {2, true},
    {4, false}, {2, false}, {1, false}, {0, false}, {4, false}, {1, true},
    {2, false}, {1, false}, {0, false}, {0, false},
};

ArcId arc_between(const Bdd& d, NodeId from, NodeId to, int domain) {
  for (ArcId a = 0; a < static_cast<ArcId>(d.arcs().size()); ++a) {
    if (d.arc(a).from == from && d.arc(a).to == to && d.arc(a).domain == domain) return a;
  }
  return kNone;
}

std::map<std::vector<int>, int> paths_as_map(const std::vector<DecodedPath>& paths) {
  std::map<std::vector<int>, int> out;
  for (const auto& p : paths) {
    auto ids = p.item_ids;
    std::sort(ids.begin(), ids.end());
    EXPECT_TRUE(out.emplace(ids, p.cost).second) << "subset reached by two paths";
  }
  return out;
}

}  // namespace

TEST(Build, FigureGolden) {
  const Bdd d = Bdd::build(figure_items(), 4);
  EXPECT_EQ(stats(d), (Stats{16, 22, 5}));
  EXPECT_EQ(d.layer_widths(), (std::vector<int>{1, 2, 3, 4, 5, 1}));
  ASSERT_EQ(d.nodes().size(), kFigureStates.size());
  for (std::size_t u = 0; u < kFigureStates.size(); ++u) {
    EXPECT_EQ(d.node(static_cast<NodeId>(u)).state, kFigureStates[u]) << "node " << u;
  }
  std::set<std::tuple<int, int, int, int>> built;
  for (const Arc& a : d.arcs()) built.insert({a.from, a.to, a.domain, a.cost});
  const std::set<std::tuple<int, int, int, int>> drawn(kFigureArcs.begin(), kFigureArcs.end());
  EXPECT_EQ(built, drawn);
}

TEST(Build, FigureOneArcWithoutCost) {
  const Bdd d = Bdd::build(figure_items(), 4);
  const NodeId u5 = d.layer(2)[2];
  EXPECT_EQ(d.node(u5).state, (NodeState{2, true}));
  ASSERT_NE(d.node(u5).one_arc, kNone);
  EXPECT_EQ(d.arc(d.node(u5).one_arc).cost, 0);
  EXPECT_EQ(d.arc(d.node(u5).one_arc).to, 9);
}

TEST(Build, LayerOneStates) {
  const Bdd d = Bdd::build(figure_items(), 4);
  std::set<std::pair<int, bool>> states;
  for (NodeId u : d.layer(1)) states.insert({d.node(u).state.remaining, d.node(u).state.seen});
  EXPECT_EQ(states, (std::set<std::pair<int, bool>>{{4, false}, {2, true}}));
}

TEST(Build, ItemNeverFits) {
  const Bdd d = Bdd::build(std::vector<Item>{{1, 5, 1}}, 4);
  EXPECT_EQ(stats(d), (Stats{2, 1, 1}));
  for (const Arc& a : d.arcs()) EXPECT_EQ(a.domain, 0);
  const auto paths = enumerate_paths(d);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].cost, 0);
}

TEST(Build, EmptyItemList) {
  const Bdd d = Bdd::build(std::vector<Item>{}, 3);
  EXPECT_EQ(stats(d), (Stats{2, 1, 1}));
  const auto paths = enumerate_paths(d);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(paths[0].item_ids.empty());
  EXPECT_EQ(paths[0].cost, 0);
}

TEST(Build, SingleUnitItem) {
  const Bdd d = Bdd::build(std::vector<Item>{{1, 1, 1}}, 1);
  EXPECT_EQ(stats(d), (Stats{2, 2, 1}));
  EXPECT_EQ(enumerate_paths(d).size(), 2u);
}

TEST(Decode, FigurePaths) {
  const Bdd d = Bdd::build(figure_items(), 4);
  // r - u2 - u5 - u9 - u14 - t
  const std::vector<ArcId> path = {arc_between(d, 0, 2, 1), arc_between(d, 2, 5, 0),
                                   arc_between(d, 5, 9, 1), arc_between(d, 9, 14, 0),
                                   arc_between(d, 14, 15, 0)};
  EXPECT_EQ(decode(d, path), (DecodedPath{{1, 3}, 1}));

  std::vector<ArcId> zeros;
  NodeId u = d.root();
  while (u != d.terminal()) {
    zeros.push_back(d.node(u).zero_arc);
    u = d.arc(d.node(u).zero_arc).to;
  }
  EXPECT_EQ(decode(d, zeros), (DecodedPath{{}, 0}));
}

// o2 and o5 need 5 units, more than the bin holds; one item of each color costs 2.
TEST(Decode, CrossColorPairs) {
  const Bdd d = Bdd::build(figure_items(), 4);
  const auto paths = paths_as_map(enumerate_paths(d));
  EXPECT_EQ(paths.count({2, 5}), 0u);
  EXPECT_EQ(paths.at({1, 5}), 2);
  EXPECT_EQ(paths.at({3, 5}), 2);
  EXPECT_EQ(paths.at({1, 3}), 1);
}

TEST(Decode, MalformedPaths) {
  const Bdd d = Bdd::build(figure_items(), 4);
  auto code = [&](std::vector<ArcId> p) {
    try {
      decode(d, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code({}), ErrorCode::MalformedPath);
  EXPECT_EQ(code({arc_between(d, 0, 2, 1)}), ErrorCode::MalformedPath);
  EXPECT_EQ(code({arc_between(d, 0, 2, 1), arc_between(d, 3, 6, 0)}), ErrorCode::MalformedPath);
  EXPECT_EQ(code({99}), ErrorCode::MalformedPath);
}

TEST(EnumeratePaths, FigureMatchesSubsets) {
  const Bdd d = Bdd::build(figure_items(), 4);
  EXPECT_EQ(paths_as_map(enumerate_paths(d)), oracle::feasible_subsets(figure_items(), 4));
}

TEST(EnumeratePaths, TwoItemsOneColor) {
  const Bdd d = Bdd::build(std::vector<Item>{{1, 2, 1}, {2, 2, 1}}, 4);
  const auto paths = enumerate_paths(d);
  std::multiset<int> costs;
  for (const auto& p : paths) costs.insert(p.cost);
  EXPECT_EQ(costs, (std::multiset<int>{0, 1, 1, 1}));
}

TEST(EnumeratePaths, Budget) {
  const Bdd d = Bdd::build(figure_items(), 4);
  EXPECT_THROW(enumerate_paths(d, 3), Error);
}

TEST(Completion, Values) {
  const Bdd d = Bdd::build(figure_items(), 4);
  EXPECT_EQ(completion_bound(d, d.terminal()), 0);
  EXPECT_EQ(completion_bound(d, 5), 0);
  EXPECT_EQ(completion_bound(d, d.root()), 0);
  const Bdd mono = Bdd::build(std::vector<Item>{{1, 1, 1}, {2, 2, 1}, {3, 1, 1}}, 3);
  EXPECT_EQ(completion_bound(mono, mono.root()), 0);
}

// Exactness, cost soundness and structural invariants on random grouped lists.
TEST(Properties, RandomDiagrams) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> n_dist(0, 12);
  std::uniform_int_distribution<int> cap_dist(1, 12);
  for (int t = 0; t < 300; ++t) {
    const auto items = oracle::random_grouped_items(rng, n_dist(rng), 5, 4);
    const int cap = cap_dist(rng);
    const Bdd d = Bdd::build(items, cap);
    const auto paths = enumerate_paths(d);
    EXPECT_EQ(paths_as_map(paths), oracle::feasible_subsets(items, cap));
    EXPECT_EQ(completion_bound(d, d.root()), 0);
    EXPECT_EQ(d.num_layers(), std::max<int>(static_cast<int>(items.size()), 1) + 1);

    for (int l = 0; l < d.num_layers(); ++l) {
      std::set<std::pair<int, bool>> seen;
      for (NodeId u : d.layer(l)) {
        EXPECT_TRUE(seen.insert({d.node(u).state.remaining, d.node(u).state.seen}).second);
        EXPECT_GE(d.node(u).state.remaining, 0);
      }
    }
    for (const Arc& a : d.arcs()) {
      EXPECT_EQ(d.node(a.to).layer, d.node(a.from).layer + 1);
      if (a.domain == 1) {
        EXPECT_EQ(d.node(a.from).state.remaining - d.items()[a.item].size >= 0, true);
      }
    }

    // Completion cost equals a recount over descendants.
    for (NodeId u = d.terminal(); u >= 0; --u) {
      int best = u == d.terminal() ? 0 : 1 << 20;
      for (ArcId a : {d.node(u).zero_arc, d.node(u).one_arc}) {
        if (a != kNone) best = std::min(best, d.arc(a).cost + d.completion_cost(d.arc(a).to));
      }
      EXPECT_EQ(d.completion_cost(u), best);
    }

    const Bdd again = Bdd::build(items, cap);
    ASSERT_EQ(again.nodes().size(), d.nodes().size());
    ASSERT_EQ(again.arcs().size(), d.arcs().size());
    for (std::size_t a = 0; a < d.arcs().size(); ++a) {
      EXPECT_EQ(again.arcs()[a].from, d.arcs()[a].from);
      EXPECT_EQ(again.arcs()[a].to, d.arcs()[a].to);
      EXPECT_EQ(again.arcs()[a].domain, d.arcs()[a].domain);
      EXPECT_EQ(again.arcs()[a].cost, d.arcs()[a].cost);
    }
  }
}

TEST(Dot, MentionsEveryNode) {
  const Bdd d = Bdd::build(figure_items(), 4);
  const std::string dot = to_dot(d);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}
