#pragma once

#include <span>
#include <vector>

#include "repcut/graph.hpp"

namespace repcut {

struct StCutResult {
  double weight = 0.0;
  NodeSet source_side;  // sorted; contains s, excludes t
  Cut cut;              // boundary(g, source_side)
};

/// Minimum s-t cut with the inclusion-wise minimal source side.
StCutResult min_st_cut(const Graph& g, NodeId s, NodeId t);

/// Minimum cut separating v from every node of x (x contracted to one sink).
StCutResult isolating_cut(const Graph& g, NodeId v, std::span<const NodeId> x);

struct TreeEdge {
  NodeId u;
  NodeId v;
  double w;
};

/// Gomory-Hu cut tree in parent-array form rooted at node 0: for every node
/// i > 0 the tree holds the edge (i, parent[i]) of weight weight[i].
struct GomoryHuTree {
  std::vector<NodeId> parent;
  std::vector<double> weight;

  int num_nodes() const { return static_cast<int>(parent.size()); }
  /// Edge (i, parent[i]) for i = 1..n-1, in that order.
  std::vector<TreeEdge> edges() const;
  /// The tree as a Graph on the node names of g; edge k is (k+1, parent[k+1]).
  Graph as_graph(const Graph& g) const;
  /// Side of node i when the edge (i, parent[i]) is removed.
  NodeSet subtree(NodeId i) const;
};

/// Gusfield's construction: n-1 max-flow calls, no contractions. Every tree
/// edge's fundamental cut is checked to be a minimum cut of g.
GomoryHuTree gomory_hu(const Graph& g);

struct GhQueryResult {
  double weight = 0.0;
  NodeSet split;  // component of s after removing the lightest path edge
};

/// Lightest edge on the tree path s..u; ties go to the edge closest to s.
GhQueryResult gh_query(const GomoryHuTree& tree, NodeId s, NodeId u);

}  // namespace repcut
