#include "support/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace repcut::testing {

int uniform_int(CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace {

Graph empty_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node("v" + std::to_string(i));
  return g;
}

}  // namespace

Graph random_graph(CounterRng& rng, int n, int m, int max_w) {
  Graph g = empty_graph(n);
  if (n < 2) return g;
  for (int k = 0; k < m; ++k) {
    int u = uniform_int(rng, 0, n - 1), v = uniform_int(rng, 0, n - 1);
    while (u == v) v = uniform_int(rng, 0, n - 1);
    g.add_edge(u, v, uniform_int(rng, 1, max_w));
  }
  return g;
}

Graph random_tree(CounterRng& rng, int n, int max_w) {
  Graph g = empty_graph(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  for (int k = 1; k < n; ++k)
    g.add_edge(order[k], order[uniform_int(rng, 0, k - 1)], uniform_int(rng, 1, max_w));
  return g;
}

Graph random_connected_graph(CounterRng& rng, int n, int extra, int max_w) {
  Graph g = random_tree(rng, n, max_w);
  if (n < 2) return g;
  for (int k = 0; k < extra; ++k) {
    int u = uniform_int(rng, 0, n - 1), v = uniform_int(rng, 0, n - 1);
    while (u == v) v = uniform_int(rng, 0, n - 1);
    g.add_edge(u, v, uniform_int(rng, 1, max_w));
  }
  return g;
}

NodeSet random_subset(CounterRng& rng, int n, int max_size) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  const int size = uniform_int(rng, 1, std::min(n, max_size));
  NodeSet s(order.begin(), order.begin() + size);
  std::sort(s.begin(), s.end());
  return s;
}

VariantInstance random_family_on(CounterRng& rng, Variant v, Graph g, int q, int max_set) {
  const int n = g.num_nodes();
  std::vector<NodeSet> sets;
  for (int i = 0; i < q; ++i) sets.push_back(random_subset(rng, n, max_set));
  std::optional<NodeId> s;
  if (v == Variant::FixedToSingle) s = uniform_int(rng, 0, n - 1);
  return make_instance(v, std::move(g), std::move(sets), s);
}

VariantInstance random_variant_instance(CounterRng& rng, Variant v, int n, int extra, int q,
                                        int max_set, int max_w) {
  return random_family_on(rng, v, random_connected_graph(rng, n, extra, max_w), q, max_set);
}

}  // namespace repcut::testing
