#include <gtest/gtest.h>

#include "repcut/error.hpp"
#include "repcut/maxflow.hpp"
#include "repcut/mincut.hpp"
#include "support/generators.hpp"

namespace repcut {
namespace {

Graph weighted_triangle() {
  Graph g;
  for (auto n : {"u", "v", "x"}) g.add_node(n);
  g.add_edge("u", "v", 1);
  g.add_edge("v", "x", 2);
  g.add_edge("u", "x", 3);
  return g;
}

// Enumerates every node set containing s and not t.
double brute_st_cut(const Graph& g, NodeId s, NodeId t) {
  const int n = g.num_nodes();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1) || (mask >> t & 1)) continue;
    double w = 0.0;
    for (const Edge& e : g.edges())
      if ((mask >> e.u & 1) != (mask >> e.v & 1)) w += e.w;
    best = std::min(best, w);
  }
  return best;
}

TEST(MaxFlow, DirectedChain) {
  FlowNetwork net(4);
  net.add_arc(0, 1, 3);
  net.add_arc(1, 2, 2);
  net.add_arc(2, 3, 5);
  net.add_arc(0, 2, 1);
  MaxFlowResult r = max_flow(net, 0, 3);
  EXPECT_DOUBLE_EQ(r.value, 3.0);
  EXPECT_EQ(r.source_side, (std::vector<char>{1, 1, 0, 0}));
  EXPECT_THROW(max_flow(net, 1, 1), PreconditionError);
}

TEST(MinStCut, SingleEdge) {
  Graph g;
  g.add_node("s");
  g.add_node("t");
  g.add_edge("s", "t", 3);
  StCutResult r = min_st_cut(g, 0, 1);
  EXPECT_EQ(r.weight, 3.0);
  EXPECT_EQ(r.source_side, (NodeSet{0}));
  EXPECT_THROW(min_st_cut(g, 0, 0), PreconditionError);
}

TEST(MinStCut, TriangleTakesTheCheaperSide) {
  StCutResult r = min_st_cut(weighted_triangle(), 0, 1);
  EXPECT_EQ(r.weight, 3.0);
  EXPECT_EQ(r.source_side, (NodeSet{0, 2}));
  EXPECT_EQ(r.cut, (Cut{0, 1}));
}

TEST(MinStCut, DisconnectedPairCostsNothing) {
  Graph g(4);
  g.add_edge(0, 1, 5);
  g.add_edge(2, 3, 5);
  StCutResult r = min_st_cut(g, 0, 3);
  EXPECT_EQ(r.weight, 0.0);
  EXPECT_TRUE(r.cut.empty());
  EXPECT_EQ(r.source_side, (NodeSet{0, 1}));
}

TEST(MinStCut, MinimalSourceSideOnTies) {
  // s -1- m -1- t: both {s} and {s,m} cost 1; the minimal side is {s}.
  Graph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  EXPECT_EQ(min_st_cut(g, 0, 2).source_side, (NodeSet{0}));
}

TEST(IsolatingCut, StarLeaf) {
  Graph g;
  for (auto n : {"r", "a", "b", "c"}) g.add_node(n);
  g.add_edge("r", "a", 1);
  g.add_edge("r", "b", 2);
  g.add_edge("r", "c", 3);
  StCutResult r = isolating_cut(g, 1, NodeSet{2, 3});
  EXPECT_EQ(r.weight, 1.0);
  EXPECT_EQ(r.cut, (Cut{0}));
  EXPECT_THROW(isolating_cut(g, 1, NodeSet{1, 2}), PreconditionError);
  EXPECT_THROW(isolating_cut(g, 1, NodeSet{}), PreconditionError);

  Graph lone(3);
  lone.add_edge(1, 2, 4);
  EXPECT_EQ(isolating_cut(lone, 0, NodeSet{1, 2}).weight, 0.0);
}

TEST(GomoryHu, TriangleQueries) {
  Graph g = weighted_triangle();
  GomoryHuTree t = gomory_hu(g);
  EXPECT_EQ(gh_query(t, 0, 1).weight, 3.0);
  EXPECT_EQ(gh_query(t, 1, 2).weight, 3.0);
  EXPECT_EQ(gh_query(t, 0, 2).weight, 4.0);
  EXPECT_TRUE(gomory_hu(Graph(1)).edges().empty());
}

TEST(GomoryHu, QueryOnPathTree) {
  GomoryHuTree t;  // a=0 -(5)- b=1 -(2)- c=2
  t.parent = {0, 0, 1};
  t.weight = {0, 5, 2};
  GhQueryResult r = gh_query(t, 0, 2);
  EXPECT_EQ(r.weight, 2.0);
  EXPECT_EQ(r.split, (NodeSet{0, 1}));
  r = gh_query(t, 0, 1);
  EXPECT_EQ(r.weight, 5.0);
  EXPECT_EQ(r.split, (NodeSet{0}));
  r = gh_query(t, 2, 0);
  EXPECT_EQ(r.split, (NodeSet{2}));
}

TEST(GomoryHu, TiesGoToEdgeNearestSource) {
  GomoryHuTree t;  // 0 -(2)- 1 -(2)- 2
  t.parent = {0, 0, 1};
  t.weight = {0, 2, 2};
  EXPECT_EQ(gh_query(t, 0, 2).split, (NodeSet{0}));
  EXPECT_EQ(gh_query(t, 2, 0).split, (NodeSet{2}));
}

TEST(GomoryHu, TreeInputReproducesPathMinima) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CounterRng rng(seed, 7);
    Graph g = testing::random_tree(rng, testing::uniform_int(rng, 2, 9));
    GomoryHuTree t = gomory_hu(g);
    for (NodeId a = 0; a < g.num_nodes(); ++a)
      for (NodeId b = a + 1; b < g.num_nodes(); ++b)
        EXPECT_EQ(gh_query(t, a, b).weight, min_st_cut(g, a, b).weight);
  }
}

TEST(MincutProperty, AllPairsAgainstEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    CounterRng rng(seed, 3);
    const int n = testing::uniform_int(rng, 2, 8);
    Graph g = testing::random_graph(rng, n, testing::uniform_int(rng, 0, 16));
    GomoryHuTree t = gomory_hu(g);
    ASSERT_EQ(t.edges().size(), static_cast<std::size_t>(n - 1));
    for (NodeId s = 0; s < n; ++s) {
      for (NodeId u = 0; u < n; ++u) {
        if (s == u) continue;
        const double expected = brute_st_cut(g, s, u);
        const StCutResult cut = min_st_cut(g, s, u);
        EXPECT_EQ(cut.weight, expected);
        EXPECT_EQ(isolating_cut(g, s, NodeSet{u}).weight, expected);
        const GhQueryResult q = gh_query(t, s, u);
        EXPECT_EQ(q.weight, expected);
        EXPECT_EQ(cut_weight(g, boundary(g, q.split)), expected);
        EXPECT_TRUE(std::binary_search(q.split.begin(), q.split.end(), s));
        EXPECT_FALSE(std::binary_search(q.split.begin(), q.split.end(), u));
      }
    }
  }
}

TEST(MincutProperty, IsolatingCutAgainstEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    CounterRng rng(seed, 4);
    const int n = testing::uniform_int(rng, 3, 8);
    Graph g = testing::random_graph(rng, n, testing::uniform_int(rng, 2, 14));
    NodeSet x = testing::random_subset(rng, n, n - 1);
    NodeId v = 0;
    while (std::binary_search(x.begin(), x.end(), v)) ++v;
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (!(mask >> v & 1)) continue;
      bool ok = true;
      for (NodeId y : x) ok = ok && !(mask >> y & 1);
      if (!ok) continue;
      double w = 0.0;
      for (const Edge& e : g.edges())
        if ((mask >> e.u & 1) != (mask >> e.v & 1)) w += e.w;
      best = std::min(best, w);
    }
    EXPECT_EQ(isolating_cut(g, v, x).weight, best);
  }
}

}  // namespace
}  // namespace repcut
