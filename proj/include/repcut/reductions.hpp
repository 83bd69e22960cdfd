#pragma once

#include <string>
#include <vector>

#include "repcut/graph.hpp"
#include "repcut/variants.hpp"

namespace repcut {

struct HittingSetInstance {
  std::vector<std::string> ground;
  std::vector<std::vector<int>> sets;  // element indices into ground
};

void check_hitting_set(const HittingSetInstance& h);

/// Star with center s and unit edges to the ground elements; candidate sets
/// are the sets. A hitting set H and the cut {(s, v) : v in H} correspond.
struct HittingSetReduction {
  HittingSetInstance source;
  VariantInstance target;        // FixedToSingle; element k is node k
  std::vector<EdgeId> element_edge;

  /// H must hit every set; t_j is the smallest member of S_j in H.
  CutSolution forward(const std::vector<int>& hitting) const;
  /// Elements whose star edge is cut.
  std::vector<int> backward(const CutSolution& sol) const;
};

HittingSetReduction hitting_set_to_fixed_to_single(const HittingSetInstance& h);

/// T'_i = T_i + {s}, T'_{q+1} = {s}, same graph.
struct FixedToSomeToSingle {
  VariantInstance source;
  VariantInstance target;

  CutSolution forward(const CutSolution& sol) const;
  CutSolution backward(const CutSolution& sol) const;
};

FixedToSomeToSingle fixed_to_single_to_some_to_single(const VariantInstance& inst);

/// Adds isolated nodes s_1..s_q, T'_i = T_i + {s_i}, T'_{q+1} = {s, s_1..s_q}.
/// Requires q >= 2.
struct FixedToSomeToAll {
  VariantInstance source;
  VariantInstance target;
  std::vector<NodeId> extra;  // s_1..s_q in the target graph

  CutSolution forward(const CutSolution& sol) const;
  CutSolution backward(const CutSolution& sol) const;
};

FixedToSomeToAll fixed_to_single_to_some_to_all(const VariantInstance& inst);

struct SteinerMulticutInstance {
  Graph graph;
  std::vector<NodeSet> groups;  // each must end up in at least two components

  /// Every group has at least two distinct nodes.
  bool feasible() const;
};

bool steiner_cut_valid(const SteinerMulticutInstance& sm, const Cut& cut);

/// 2q candidate sets T_{2j} = T_{2j+1} = X_j.
struct SteinerToSomeToSome {
  SteinerMulticutInstance source;
  VariantInstance target;

  CutSolution forward(const Cut& cut) const;
  Cut backward(const CutSolution& sol) const;
};

SteinerToSomeToSome steiner_to_some_to_some(const SteinerMulticutInstance& sm);

struct PairExtraction {
  NodeId t_ij = -1;  // t_i^j
  NodeId t_ji = -1;  // t_j^i
  std::string rule;  // "1", "2", "3(i)", "3(ii)", "4(i)", "4(ii)"
};

/// Representatives for the pair (i, j) from two nodes v, u of T_i + T_j lying
/// in different components of `comp`.
PairExtraction extract_pair_representatives(const VariantInstance& inst, const Partition& comp,
                                            int i, int j, NodeId v, NodeId u);

/// Groups X_{i,j} = T_i + T_j for i < j, in lexicographic pair order.
struct SomeToSomeToSteiner {
  VariantInstance source;
  SteinerMulticutInstance target;
  std::vector<std::pair<int, int>> pairs;

  Cut forward(const CutSolution& sol) const;
  /// Witnesses per group: v = smallest member, u = smallest member in
  /// another component.
  CutSolution backward(const Cut& cut) const;
};

SomeToSomeToSteiner some_to_some_to_steiner(const VariantInstance& inst);

}  // namespace repcut
