#include "repcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "repcut/error.hpp"

namespace repcut {

Graph::Graph(int n) {
  if (n < 0) throw StructuralError("negative node count");
  for (int i = 0; i < n; ++i) add_node(std::to_string(i));
}

NodeId Graph::add_node(std::string name) {
  if (name.empty()) throw StructuralError("empty node name");
  const NodeId id = num_nodes();
  if (!index_.emplace(name, id).second)
    throw StructuralError("duplicate node '" + name + "'");
  names_.push_back(std::move(name));
  adj_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(NodeId u, NodeId v, double w) {
  if (!has_node(u) || !has_node(v))
    throw StructuralError("edge endpoint is not a node");
  if (u == v) throw StructuralError("self-loop at '" + names_[u] + "'");
  if (!std::isfinite(w) || w < 0.0)
    throw StructuralError("edge weight must be finite and nonnegative");
  const EdgeId e = num_edges();
  edges_.push_back({u, v, w});
  adj_[u].emplace_back(v, e);
  adj_[v].emplace_back(u, e);
  return e;
}

EdgeId Graph::add_edge(std::string_view u, std::string_view v, double w) {
  return add_edge(id(u), id(v), w);
}

std::optional<NodeId> Graph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Graph::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw StructuralError("unknown node '" + std::string(name) + "'");
}

double Graph::total_weight() const {
  double total = 0.0;
  for (const Edge& e : edges_) total += e.w;
  return total;
}

Cut make_cut(const Graph& g, std::vector<EdgeId> edges) {
  for (EdgeId e : edges)
    if (e < 0 || e >= g.num_edges())
      throw StructuralError("cut refers to edge " + std::to_string(e) +
                            " outside the graph");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Cut all_edges(const Graph& g) {
  Cut c(g.num_edges());
  std::iota(c.begin(), c.end(), 0);
  return c;
}

Partition components(const Graph& g, const Cut& c) {
  std::vector<char> removed(g.num_edges(), 0);
  for (EdgeId e : c) {
    if (e < 0 || e >= g.num_edges())
      throw StructuralError("cut refers to an edge outside the graph");
    removed[e] = 1;
  }
  Partition p;
  p.block.assign(g.num_nodes(), -1);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.num_nodes(); ++start) {
    if (p.block[start] >= 0) continue;
    const int id = p.num_blocks++;
    p.block[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (auto [y, e] : g.incident(x)) {
        if (removed[e] || p.block[y] >= 0) continue;
        p.block[y] = id;
        stack.push_back(y);
      }
    }
  }
  return p;
}

double cut_weight(const Graph& g, const Cut& c) {
  double total = 0.0;
  for (EdgeId e : c) {
    if (e < 0 || e >= g.num_edges())
      throw StructuralError("cut refers to an edge outside the graph");
    total += g.edge(e).w;
  }
  return total;
}

Cut boundary(const Graph& g, std::span<const NodeId> s) {
  std::vector<char> inside(g.num_nodes(), 0);
  for (NodeId v : s) {
    if (!g.has_node(v)) throw StructuralError("boundary of an unknown node");
    inside[v] = 1;
  }
  Cut c;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (inside[g.edge(e).u] != inside[g.edge(e).v]) c.push_back(e);
  return c;
}

Cut dichromatic_edges(const Graph& g, std::span<const int> label) {
  if (static_cast<int>(label.size()) != g.num_nodes())
    throw StructuralError("labeling size does not match the graph");
  Cut c;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (label[g.edge(e).u] != label[g.edge(e).v]) c.push_back(e);
  return c;
}

NodeSet make_node_set(const Graph& g, std::vector<NodeId> nodes) {
  for (NodeId v : nodes)
    if (!g.has_node(v)) throw StructuralError("node set refers to an unknown node");
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

Contraction contract(const Graph& g, const std::vector<NodeSet>& groups) {
  const int n = g.num_nodes();
  std::vector<int> group_of(n, -1);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (NodeId v : groups[k]) {
      if (!g.has_node(v)) throw StructuralError("contract: unknown node");
      if (group_of[v] >= 0 && group_of[v] != static_cast<int>(k))
        throw PreconditionError("contract: groups overlap at '" + g.name(v) + "'");
      group_of[v] = static_cast<int>(k);
    }
  }
  Contraction out;
  out.node_map.assign(n, -1);
  std::vector<NodeId> group_node(groups.size(), -1);
  for (NodeId v = 0; v < n; ++v) {
    const int k = group_of[v];
    if (k < 0) {
      out.node_map[v] = out.graph.add_node(g.name(v));
    } else {
      if (group_node[k] < 0) group_node[k] = out.graph.add_node(g.name(v));
      out.node_map[v] = group_node[k];
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const NodeId a = out.node_map[ed.u];
    const NodeId b = out.node_map[ed.v];
    if (a == b) continue;
    out.graph.add_edge(a, b, ed.w);
    out.edge_origin.push_back(e);
  }
  return out;
}

}  // namespace repcut
