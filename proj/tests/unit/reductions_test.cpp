#include <gtest/gtest.h>

#include "repcut/error.hpp"
#include "repcut/oracle.hpp"
#include "repcut/reductions.hpp"
#include "support/generators.hpp"

namespace repcut {
namespace {

HittingSetInstance abc_example() { return {{"a", "b", "c"}, {{0, 1}, {1, 2}}}; }

bool hits_all(const HittingSetInstance& h, const std::vector<int>& hs) {
  for (const auto& s : h.sets) {
    bool hit = false;
    for (int e : s) hit |= std::find(hs.begin(), hs.end(), e) != hs.end();
    if (!hit) return false;
  }
  return true;
}

HittingSetInstance random_hitting_set(CounterRng& rng) {
  HittingSetInstance h;
  const int n = testing::uniform_int(rng, 1, 6);
  for (int i = 0; i < n; ++i) h.ground.push_back("e" + std::to_string(i));
  const int m = testing::uniform_int(rng, 1, 4);
  for (int i = 0; i < m; ++i) {
    const NodeSet s = testing::random_subset(rng, n, 3);
    h.sets.emplace_back(s.begin(), s.end());
  }
  return h;
}

VariantInstance random_fixed_to_single(CounterRng& rng, int min_q = 1) {
  const int n = testing::uniform_int(rng, 2, 6);
  return testing::random_variant_instance(rng, Variant::FixedToSingle, n, 3,
                                          testing::uniform_int(rng, min_q, 3), 3);
}

// ---- hitting set ---------------------------------------------------------

TEST(HittingSetReduction, StarExample) {
  const auto r = hitting_set_to_fixed_to_single(abc_example());
  EXPECT_EQ(r.target.graph.num_nodes(), 4);
  EXPECT_EQ(r.target.graph.num_edges(), 3);
  EXPECT_EQ(r.target.graph.name(*r.target.fixed_node), "s");
  const OracleResult opt = exact_solve(r.target);
  ASSERT_TRUE(opt.feasible);
  EXPECT_EQ(opt.solution.weight, 1.0);
  EXPECT_EQ(r.backward(opt.solution), (std::vector<int>{1}));
  EXPECT_EQ(r.forward({1}).weight, 1.0);
  EXPECT_THROW(r.forward({0}), PreconditionError);
}

TEST(HittingSetReduction, SingleSetNeedsOneEdge) {
  const auto r = hitting_set_to_fixed_to_single({{"a"}, {{0}}});
  EXPECT_EQ(exact_solve(r.target).solution.weight, 1.0);
}

TEST(HittingSetReduction, CenterNameAvoidsCollisions) {
  const auto r = hitting_set_to_fixed_to_single({{"s", "t"}, {{0, 1}}});
  EXPECT_EQ(r.target.graph.name(*r.target.fixed_node), "s'");
}

TEST(HittingSetReduction, MalformedInputsAreRejected) {
  EXPECT_THROW(hitting_set_to_fixed_to_single({{"a"}, {{}}}), StructuralError);
  EXPECT_THROW(hitting_set_to_fixed_to_single({{"a"}, {{1}}}), StructuralError);
}

TEST(HittingSetReductionProperty, OptimaAndMapsAgree) {
  CounterRng rng(5);
  for (int k = 0; k < 60; ++k) {
    const HittingSetInstance h = random_hitting_set(rng);
    const auto r = hitting_set_to_fixed_to_single(h);
    const auto best = exact_hitting_set(static_cast<int>(h.ground.size()), h.sets);
    ASSERT_TRUE(best.has_value());
    const OracleResult opt = exact_solve(r.target);
    ASSERT_TRUE(opt.feasible);
    EXPECT_EQ(opt.solution.weight, static_cast<double>(best->size())) << "instance " << k;
    const std::vector<int> back = r.backward(opt.solution);
    EXPECT_TRUE(hits_all(h, back));
    EXPECT_EQ(back.size(), best->size());
    const CutSolution fwd = r.forward(*best);
    EXPECT_TRUE(validate_solution(r.target, fwd).ok);
    EXPECT_EQ(fwd.weight, static_cast<double>(best->size()));
  }
}

// ---- fixed-to-single -> some-to-single -----------------------------------

TEST(FixedToSomeToSingle, InfeasibilityTransports) {
  const auto src = make_instance(Variant::FixedToSingle, Graph(3), {{0}, {1}}, 0);
  const auto r = fixed_to_single_to_some_to_single(src);
  EXPECT_FALSE(check_feasibility(src).feasible);
  EXPECT_FALSE(check_feasibility(r.target).feasible);
  EXPECT_EQ(r.target.q(), 3);
}

TEST(FixedToSomeToSingle, HittingSetChainKeepsTheOptimum) {
  const auto hs = hitting_set_to_fixed_to_single(abc_example());
  const auto r = fixed_to_single_to_some_to_single(hs.target);
  const OracleResult opt = exact_solve(r.target);
  ASSERT_TRUE(opt.feasible);
  EXPECT_EQ(opt.solution.weight, 1.0);
  EXPECT_EQ(hs.backward(r.backward(opt.solution)), (std::vector<int>{1}));
}

TEST(FixedToSomeToSingleProperty, OptimaAndMapsAgree) {
  CounterRng rng(7);
  int checked = 0;
  for (int k = 0; k < 80; ++k) {
    const auto src = random_fixed_to_single(rng);
    const auto r = fixed_to_single_to_some_to_single(src);
    const OracleResult a = exact_solve(src), b = exact_solve(r.target);
    ASSERT_EQ(a.feasible, b.feasible) << "instance " << k;
    if (!a.feasible) continue;
    ++checked;
    EXPECT_EQ(a.solution.weight, b.solution.weight) << "instance " << k;
    const CutSolution fwd = r.forward(a.solution);
    const CutSolution back = r.backward(b.solution);
    EXPECT_EQ(fwd.weight, a.solution.weight);
    EXPECT_EQ(back.weight, b.solution.weight);
  }
  EXPECT_GT(checked, 30);
}

// ---- fixed-to-single -> some-to-all --------------------------------------

TEST(FixedToSomeToAll, NeedsTwoSets) {
  EXPECT_THROW(fixed_to_single_to_some_to_all(make_instance(Variant::FixedToSingle, Graph(2), {{1}}, 0)),
               PreconditionError);
  EXPECT_THROW(fixed_to_single_to_some_to_all(make_instance(Variant::AllToAll, Graph(2), {{1}, {0}})),
               PreconditionError);
}

TEST(FixedToSomeToAll, AddedNodesAreIsolated) {
  Graph g(3);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 3);
  const auto r = fixed_to_single_to_some_to_all(make_instance(Variant::FixedToSingle, g, {{1}, {2}}, 0));
  ASSERT_EQ(r.extra.size(), 2u);
  EXPECT_EQ(r.target.graph.num_edges(), g.num_edges());
  for (NodeId v : r.extra) EXPECT_TRUE(r.target.graph.incident(v).empty());
  EXPECT_EQ(r.target.family.sets[2], (NodeSet{0, r.extra[0], r.extra[1]}));
}

TEST(FixedToSomeToAllProperty, OptimaAndMapsAgree) {
  CounterRng rng(11);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const auto src = random_fixed_to_single(rng, 2);
    const auto r = fixed_to_single_to_some_to_all(src);
    const OracleResult a = exact_solve(src), b = exact_solve(r.target);
    ASSERT_EQ(a.feasible, b.feasible) << "instance " << k;
    if (!a.feasible) continue;
    ++checked;
    EXPECT_EQ(a.solution.weight, b.solution.weight) << "instance " << k;
    EXPECT_EQ(r.forward(a.solution).weight, a.solution.weight);
    EXPECT_EQ(r.backward(b.solution).weight, b.solution.weight);
  }
  EXPECT_GT(checked, 20);
}

// ---- steiner multicut <-> some-to-some -----------------------------------

TEST(SteinerToSomeToSome, DuplicatesEveryGroup) {
  Graph g(4);
  g.add_edge(0, 1, 1);
  const SteinerMulticutInstance sm{g, {{0, 1}, {2, 3}}};
  const auto r = steiner_to_some_to_some(sm);
  ASSERT_EQ(r.target.q(), 4);
  EXPECT_EQ(r.target.family.sets[0], r.target.family.sets[1]);
  EXPECT_EQ(r.target.family.sets[2], (NodeSet{2, 3}));
}

TEST(SteinerToSomeToSome, FeasibleIffGroupsHaveTwoNodes) {
  const Graph g(3);
  for (const std::vector<NodeSet>& groups :
       {std::vector<NodeSet>{{0, 1}}, {{2}}, {{0, 1}, {1}}, {{0, 2}, {1, 2}}}) {
    const SteinerMulticutInstance sm{g, groups};
    EXPECT_EQ(check_feasibility(steiner_to_some_to_some(sm).target).feasible, sm.feasible());
  }
}

TEST(PairExtraction, BothWitnessesInTheFirstSet) {
  // T_i = {0,1}, T_j = {2}, every node its own component.
  const auto inst = make_instance(Variant::SomeToSome, Graph(3), {{0, 1}, {2}});
  const Partition comp = components(inst.graph, {});
  const PairExtraction e = extract_pair_representatives(inst, comp, 0, 1, 0, 1);
  EXPECT_EQ(e.rule, "3(ii)");
  EXPECT_EQ(e.t_ij, 1);
  EXPECT_EQ(e.t_ji, 2);
}

TEST(PairExtraction, SecondSetInsideTheComponentOfU) {
  // Components {0} and {1,2}; T_j lies wholly in the component of u.
  Graph g(3);
  g.add_edge(1, 2, 1);
  const auto inst = make_instance(Variant::SomeToSome, g, {{0, 1}, {2}});
  const Partition comp = components(g, {});
  const PairExtraction e = extract_pair_representatives(inst, comp, 0, 1, 0, 1);
  EXPECT_EQ(e.rule, "3(i)");
  EXPECT_EQ(e.t_ij, 0);
  EXPECT_EQ(e.t_ji, 2);
}

TEST(PairExtraction, WitnessesSplitAcrossSets) {
  const auto inst = make_instance(Variant::SomeToSome, Graph(4), {{0}, {1, 2, 3}});
  const Partition comp = components(inst.graph, {});
  EXPECT_EQ(extract_pair_representatives(inst, comp, 0, 1, 0, 2).rule, "1");
  EXPECT_EQ(extract_pair_representatives(inst, comp, 0, 1, 2, 0).rule, "2");
  EXPECT_EQ(extract_pair_representatives(inst, comp, 0, 1, 1, 2).rule, "4(ii)");
  Graph g(3);
  g.add_edge(0, 1, 1);
  const auto joined = make_instance(Variant::SomeToSome, g, {{0}, {1, 2}});
  const PairExtraction e = extract_pair_representatives(joined, components(g, {}), 0, 1, 2, 1);
  EXPECT_EQ(e.rule, "4(i)");
  EXPECT_EQ(e.t_ij, 0);
  EXPECT_EQ(e.t_ji, 2);
}

// Every extracted pair must separate: t_ij and t_ji lie in distinct components.
TEST(PairExtractionProperty, ExtractedPairsAreSeparated) {
  CounterRng rng(13);
  int tried = 0;
  for (int k = 0; k < 300; ++k) {
    const int n = testing::uniform_int(rng, 2, 6);
    const auto inst = testing::random_variant_instance(rng, Variant::SomeToSome, n, 2, 2, 3);
    Cut c;
    for (EdgeId e = 0; e < inst.graph.num_edges(); ++e)
      if (rng.below(2) == 0) c.push_back(e);
    const Partition comp = components(inst.graph, c);
    NodeSet x = inst.family.sets[0];
    x.insert(x.end(), inst.family.sets[1].begin(), inst.family.sets[1].end());
    x = make_node_set(inst.graph, x);
    for (NodeId v : x)
      for (NodeId u : x) {
        if (comp.block[u] == comp.block[v]) continue;
        ++tried;
        const PairExtraction e = extract_pair_representatives(inst, comp, 0, 1, v, u);
        EXPECT_TRUE(inst.family.contains(0, e.t_ij));
        EXPECT_TRUE(inst.family.contains(1, e.t_ji));
        EXPECT_NE(comp.block[e.t_ij], comp.block[e.t_ji]) << "rule " << e.rule;
      }
  }
  EXPECT_GT(tried, 200);
}

TEST(SteinerRoundTripProperty, OptimaAndMapsAgree) {
  CounterRng rng(17);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const int n = testing::uniform_int(rng, 2, 6);
    const Graph g = testing::random_connected_graph(rng, n, 2);
    std::vector<NodeSet> groups;
    const int q = testing::uniform_int(rng, 1, 3);
    for (int i = 0; i < q; ++i) groups.push_back(testing::random_subset(rng, n, 3));
    const SteinerMulticutInstance sm{g, groups};
    const auto r = steiner_to_some_to_some(sm);
    const ExactCut a = exact_steiner_multicut(g, groups);
    const OracleResult b = exact_solve(r.target);
    ASSERT_EQ(a.feasible, b.feasible) << "instance " << k;
    ASSERT_EQ(a.feasible, sm.feasible());
    if (!a.feasible) continue;
    ++checked;
    EXPECT_EQ(a.weight, b.solution.weight) << "instance " << k;
    EXPECT_EQ(r.forward(a.cut).weight, a.weight);
    const Cut back = r.backward(b.solution);
    EXPECT_TRUE(steiner_cut_valid(sm, back));
    EXPECT_EQ(cut_weight(g, back), b.solution.weight);
  }
  EXPECT_GT(checked, 20);
}

TEST(SomeToSomeToSteinerProperty, OptimaAndMapsAgree) {
  CounterRng rng(19);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const int n = testing::uniform_int(rng, 2, 6);
    const auto inst = testing::random_variant_instance(rng, Variant::SomeToSome, n, 2,
                                                       testing::uniform_int(rng, 2, 3), 3);
    const auto r = some_to_some_to_steiner(inst);
    EXPECT_EQ(r.target.groups.size(), static_cast<std::size_t>(inst.q() * (inst.q() - 1) / 2));
    const OracleResult a = exact_solve(inst);
    const ExactCut b = exact_steiner_multicut(r.target.graph, r.target.groups);
    ASSERT_EQ(a.feasible, b.feasible) << "instance " << k;
    if (!a.feasible) continue;
    ++checked;
    EXPECT_EQ(a.solution.weight, b.weight) << "instance " << k;
    const Cut fwd = r.forward(a.solution);
    EXPECT_TRUE(steiner_cut_valid(r.target, fwd));
    const CutSolution back = r.backward(b.cut);
    EXPECT_TRUE(validate_solution(inst, back).ok);
    EXPECT_EQ(back.weight, b.weight);
  }
  EXPECT_GT(checked, 20);
}

}  // namespace
}  // namespace repcut
