#include <algorithm>
#include <numeric>

#include "repcut/error.hpp"
#include "repcut/maxflow.hpp"
#include "repcut/mincut.hpp"
#include "repcut/variants.hpp"

namespace repcut {
namespace {

struct RootedTree {
  std::vector<NodeId> parent;       // -1 at the root
  std::vector<EdgeId> parent_edge;  // -1 at the root
};

RootedTree root_tree(const Graph& tree) {
  const int n = tree.num_nodes();
  if (n == 0 || tree.num_edges() != n - 1) throw PreconditionError("input graph is not a tree");
  RootedTree r{std::vector<NodeId>(n, -1), std::vector<EdgeId>(n, -1)};
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (auto [u, e] : tree.incident(v)) {
      if (seen[u]) continue;
      seen[u] = 1;
      ++reached;
      r.parent[u] = v;
      r.parent_edge[u] = e;
      stack.push_back(u);
    }
  }
  if (reached != n) throw PreconditionError("input graph is not a tree");
  return r;
}

bool good_cut(const Graph& tree, const RootedTree& rt, const Cut& c, const CandidateFamily& fam,
              std::vector<NodeId>* reps) {
  const int n = tree.num_nodes();
  const int q = fam.size();
  // Child endpoint of every cut edge, plus the root.
  std::vector<NodeId> targets{0};
  std::vector<NodeId> child_of(tree.num_edges(), -1);
  for (NodeId v = 1; v < n; ++v) child_of[rt.parent_edge[v]] = v;
  for (EdgeId e : c) {
    if (e < 0 || e >= tree.num_edges()) throw StructuralError("cut refers to a missing edge");
    targets.push_back(child_of[e]);
  }
  if (static_cast<int>(targets.size()) > q) return false;

  // Node v splits into v_in = 2v and v_out = 2v+1 (capacity 1); set sources
  // follow, then the super source and sink.
  const int src = 2 * n + q, snk = src + 1;
  FlowNetwork net(snk + 1);
  std::vector<std::vector<int>> entry(q);
  for (int i = 0; i < q; ++i) {
    net.add_arc(src, 2 * n + i, 1.0);
    for (NodeId v : fam.sets[i]) entry[i].push_back(net.add_arc(2 * n + i, 2 * v, 1.0));
  }
  for (NodeId v = 0; v < n; ++v) {
    net.add_arc(2 * v, 2 * v + 1, 1.0);
    if (rt.parent[v] >= 0) net.add_arc(2 * v + 1, 2 * rt.parent[v], 1.0);
  }
  for (NodeId z : targets) net.add_arc(2 * z + 1, snk, 1.0);
  const double value = max_flow(net, src, snk).value;
  if (value < static_cast<double>(targets.size()) - 0.5) return false;
  if (reps) {
    reps->assign(q, -1);
    for (int i = 0; i < q; ++i)
      for (std::size_t k = 0; k < entry[i].size(); ++k)
        if (net.flow(entry[i][k]) > 0.5) (*reps)[i] = fam.sets[i][k];
  }
  return true;
}

// Matroid greedy over edges sorted by (weight, index).
Cut tree_greedy(const Graph& tree, const CandidateFamily& fam, std::vector<NodeId>& reps) {
  const RootedTree rt = root_tree(tree);
  const int need = fam.size() - 1;
  std::vector<EdgeId> order(tree.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return tree.edge(a).w < tree.edge(b).w; });
  Cut chosen;
  for (EdgeId e : order) {
    if (static_cast<int>(chosen.size()) == need) break;
    Cut trial = chosen;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), e), e);
    if (good_cut(tree, rt, trial, fam, nullptr)) chosen = std::move(trial);
  }
  if (static_cast<int>(chosen.size()) < need || !good_cut(tree, rt, chosen, fam, &reps))
    throw InfeasibleError("no good cut with " + std::to_string(need) + " edges exists");
  return chosen;
}

void require_single_to_single(const VariantInstance& inst) {
  if (inst.variant != Variant::SingleToSingle)
    throw PreconditionError("expected a single-to-single instance");
  require_feasible(inst);
}

}  // namespace

bool is_good_cut(const Graph& tree, const Cut& c, const CandidateFamily& fam,
                 std::vector<NodeId>* reps) {
  return good_cut(tree, root_tree(tree), make_cut(tree, c), fam, reps);
}

CutSolution solve_single_to_single_tree(const VariantInstance& inst) {
  require_single_to_single(inst);
  RepresentativeChoice reps;
  Cut c = tree_greedy(inst.graph, inst.family, reps.single);
  return finish_solution(inst, std::move(c), std::move(reps));
}

CutSolution solve_single_to_single_gh(const VariantInstance& inst) {
  require_single_to_single(inst);
  const GomoryHuTree gh = gomory_hu(inst.graph);
  RepresentativeChoice reps;
  const Cut tree_cut = tree_greedy(gh.as_graph(inst.graph), inst.family, reps.single);
  Cut c;
  for (EdgeId k : tree_cut) {
    const Cut side = boundary(inst.graph, gh.subtree(k + 1));
    c.insert(c.end(), side.begin(), side.end());
  }
  return finish_solution(inst, std::move(c), std::move(reps));
}

}  // namespace repcut
