#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace repcut {

using NodeId = int;
using EdgeId = int;
using NodeSet = std::vector<NodeId>;

struct Edge {
  NodeId u;
  NodeId v;
  double w;
};

/// Undirected weighted multigraph. Node names are the external identifiers;
/// kernels work on the dense ids 0..n-1 in insertion order.
class Graph {
 public:
  Graph() = default;
  /// n nodes named "0".."n-1".
  explicit Graph(int n);

  NodeId add_node(std::string name);
  EdgeId add_edge(NodeId u, NodeId v, double w);
  EdgeId add_edge(std::string_view u, std::string_view v, double w);

  int num_nodes() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::string& name(NodeId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeId> find(std::string_view name) const;
  /// Like find, but an unknown name is a StructuralError.
  NodeId id(std::string_view name) const;
  bool has_node(NodeId v) const { return v >= 0 && v < num_nodes(); }

  /// (neighbor, edge id) pairs, in edge insertion order.
  const std::vector<std::pair<NodeId, EdgeId>>& incident(NodeId v) const {
    return adj_.at(v);
  }

  double total_weight() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj_;
};

/// Sorted, duplicate-free edge ids of one graph.
using Cut = std::vector<EdgeId>;

/// Sorts and deduplicates; any id outside g is a StructuralError.
Cut make_cut(const Graph& g, std::vector<EdgeId> edges);
Cut all_edges(const Graph& g);

struct Partition {
  std::vector<int> block;  // node -> block id in 0..num_blocks-1
  int num_blocks = 0;
};

/// Connected components of g - c, numbered by smallest contained node.
Partition components(const Graph& g, const Cut& c);
double cut_weight(const Graph& g, const Cut& c);
/// Edges with exactly one endpoint in s.
Cut boundary(const Graph& g, std::span<const NodeId> s);
/// Edges whose endpoints carry different labels.
Cut dichromatic_edges(const Graph& g, std::span<const int> label);

/// Canonical form of a node set: sorted, unique, checked against g.
NodeSet make_node_set(const Graph& g, std::vector<NodeId> nodes);

struct Contraction {
  Graph graph;
  std::vector<NodeId> node_map;     // old node -> new node
  std::vector<EdgeId> edge_origin;  // new edge -> old edge
};

/// Merges each group into one node. Intra-group edges vanish, parallel edges
/// stay. New ids follow the smallest old member; a merged node is named after
/// its smallest member.
Contraction contract(const Graph& g, const std::vector<NodeSet>& groups);

}  // namespace repcut
