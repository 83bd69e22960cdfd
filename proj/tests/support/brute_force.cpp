#include "support/brute_force.hpp"

#include <limits>
#include <numeric>

#include "support/generators.hpp"

namespace repcut::testing {

double brute_force_labeling(const LabelingInstance& inst, Labeling* best) {
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  std::vector<std::vector<int>> options(n);
  for (NodeId v = 0; v < n; ++v)
    for (int c = 0; c < inst.num_labels; ++c)
      if (inst.allowed(v, c)) options[v].push_back(c);
  std::vector<std::size_t> digit(n, 0);
  Labeling cur(n);
  double best_w = std::numeric_limits<double>::infinity();
  while (true) {
    for (NodeId v = 0; v < n; ++v) cur[v] = options[v][digit[v]];
    double w = 0.0;
    for (const Edge& e : g.edges())
      if (cur[e.u] != cur[e.v]) w += e.w;
    if (w < best_w) {
      best_w = w;
      if (best) *best = cur;
    }
    int v = 0;
    while (v < n && ++digit[v] == options[v].size()) digit[v++] = 0;
    if (v == n) break;
  }
  return best_w;
}

LabelingInstance random_lifted_instance(CounterRng& rng, int n, int q, int extra_edges) {
  Graph g = random_connected_graph(rng, n, extra_edges);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  std::vector<NodeId> terminals(order.begin(), order.begin() + q);
  std::vector<std::vector<int>> lists(n);
  for (int k = 0; k < q; ++k) lists[terminals[k]] = {k};
  for (int k = q; k < n; ++k) {
    std::vector<int>& l = lists[order[k]];
    for (int c = 0; c < q; ++c)
      if (rng.below(2)) l.push_back(c);
    l.push_back(q);
  }
  return make_lifted_instance(std::move(g), std::move(terminals), lists);
}

}  // namespace repcut::testing
