#include "repcut/mincut.hpp"

#include <algorithm>
#include <cmath>

#include "repcut/error.hpp"
#include "repcut/maxflow.hpp"

namespace repcut {

StCutResult min_st_cut(const Graph& g, NodeId s, NodeId t) {
  if (!g.has_node(s) || !g.has_node(t)) throw StructuralError("min_st_cut: unknown node");
  if (s == t) throw PreconditionError("min_st_cut: s and t coincide");
  FlowNetwork net(g.num_nodes());
  for (const Edge& e : g.edges()) net.add_arc(e.u, e.v, e.w, e.w);
  const MaxFlowResult flow = max_flow(net, s, t);
  StCutResult r;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (flow.source_side[v]) r.source_side.push_back(v);
  r.cut = boundary(g, r.source_side);
  r.weight = cut_weight(g, r.cut);
  return r;
}

StCutResult isolating_cut(const Graph& g, NodeId v, std::span<const NodeId> x) {
  if (!g.has_node(v)) throw StructuralError("isolating_cut: unknown node");
  if (x.empty()) throw PreconditionError("isolating_cut: empty sink set");
  NodeSet sinks = make_node_set(g, {x.begin(), x.end()});
  if (std::binary_search(sinks.begin(), sinks.end(), v))
    throw PreconditionError("isolating_cut: '" + g.name(v) + "' lies in the sink set");
  const Contraction c = contract(g, {sinks});
  const StCutResult inner = min_st_cut(c.graph, c.node_map[v], c.node_map[sinks.front()]);
  std::vector<char> in_side(c.graph.num_nodes(), 0);
  for (NodeId u : inner.source_side) in_side[u] = 1;
  StCutResult r;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    if (in_side[c.node_map[u]]) r.source_side.push_back(u);
  r.cut = boundary(g, r.source_side);
  r.weight = cut_weight(g, r.cut);
  return r;
}

std::vector<TreeEdge> GomoryHuTree::edges() const {
  std::vector<TreeEdge> out;
  for (NodeId i = 1; i < num_nodes(); ++i) out.push_back({i, parent[i], weight[i]});
  return out;
}

Graph GomoryHuTree::as_graph(const Graph& g) const {
  Graph tree;
  for (NodeId v = 0; v < num_nodes(); ++v) tree.add_node(g.name(v));
  for (const TreeEdge& e : edges()) tree.add_edge(e.u, e.v, e.w);
  return tree;
}

NodeSet GomoryHuTree::subtree(NodeId i) const {
  // Parent links only; a node is below i iff its root path passes i.
  const int n = num_nodes();
  std::vector<signed char> below(n, -1);
  below[i] = 1;
  below[0] = i == 0 ? 1 : 0;
  NodeSet out;
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> path;
    NodeId x = v;
    while (below[x] < 0) {
      path.push_back(x);
      x = parent[x];
    }
    for (NodeId y : path) below[y] = below[x];
    if (below[v]) out.push_back(v);
  }
  return out;
}

GomoryHuTree gomory_hu(const Graph& g) {
  const int n = g.num_nodes();
  if (n < 1) throw PreconditionError("gomory_hu: empty graph");
  GomoryHuTree tree;
  tree.parent.assign(n, 0);
  tree.weight.assign(n, 0.0);
  auto& p = tree.parent;
  auto& fl = tree.weight;
  for (NodeId s = 1; s < n; ++s) {
    const NodeId t = p[s];
    const StCutResult cut = min_st_cut(g, s, t);
    std::vector<char> side(n, 0);
    for (NodeId v : cut.source_side) side[v] = 1;
    fl[s] = cut.weight;
    for (NodeId i = 0; i < n; ++i)
      if (i != s && p[i] == t && side[i]) p[i] = s;
    if (side[p[t]] && t != 0) {
      p[s] = p[t];
      p[t] = s;
      fl[s] = fl[t];
      fl[t] = cut.weight;
    }
  }
  double scale = 1.0 + g.total_weight();
  for (NodeId i = 1; i < n; ++i) {
    const double w = cut_weight(g, boundary(g, tree.subtree(i)));
    if (std::abs(w - fl[i]) > 1e-9 * scale)
      throw Error("gomory_hu: fundamental cut of a tree edge is not minimum");
  }
  return tree;
}

GhQueryResult gh_query(const GomoryHuTree& tree, NodeId s, NodeId u) {
  const int n = tree.num_nodes();
  if (s < 0 || u < 0 || s >= n || u >= n) throw StructuralError("gh_query: node not in tree");
  if (s == u) throw PreconditionError("gh_query: identical endpoints");
  // Root paths; the tree path is s..lca..u.
  auto root_path = [&](NodeId x) {
    std::vector<NodeId> path{x};
    while (x != 0) {
      x = tree.parent[x];
      path.push_back(x);
    }
    return path;
  };
  std::vector<NodeId> ps = root_path(s), pu = root_path(u);
  while (ps.size() > 1 && pu.size() > 1 && ps[ps.size() - 2] == pu[pu.size() - 2]) {
    ps.pop_back();
    pu.pop_back();
  }
  // Path edges identified by their child endpoint, ordered from s.
  std::vector<NodeId> children(ps.begin(), ps.end() - 1);
  for (auto it = pu.rbegin() + 1; it != pu.rend(); ++it) children.push_back(*it);
  NodeId best = children.front();
  for (NodeId c : children)
    if (tree.weight[c] < tree.weight[best]) best = c;
  GhQueryResult r;
  r.weight = tree.weight[best];
  NodeSet below = tree.subtree(best);
  if (std::binary_search(below.begin(), below.end(), s)) {
    r.split = std::move(below);
  } else {
    std::vector<char> mark(n, 0);
    for (NodeId v : below) mark[v] = 1;
    for (NodeId v = 0; v < n; ++v)
      if (!mark[v]) r.split.push_back(v);
  }
  return r;
}

}  // namespace repcut
