#pragma once

#include <vector>

namespace repcut {

/// Capacitated digraph for the push-relabel solver. Arcs come in pairs: arc a
/// and its partner a ^ 1 carry opposite flow.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n);

  /// Adds u->v with capacity cap and the partner v->u with capacity rev_cap.
  /// An undirected edge of weight w is add_arc(u, v, w, w).
  int add_arc(int u, int v, double cap, double rev_cap = 0.0);

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  int num_arcs() const { return static_cast<int>(to_.size()); }
  int head(int arc) const { return to_[arc]; }
  int tail(int arc) const { return to_[arc ^ 1]; }
  double capacity(int arc) const { return cap_[arc]; }
  double flow(int arc) const { return flow_[arc]; }
  const std::vector<int>& out_arcs(int v) const { return adj_[v]; }
  void reset_flow();

 private:
  friend struct PushRelabel;
  std::vector<int> to_;
  std::vector<double> cap_;
  std::vector<double> flow_;
  std::vector<std::vector<int>> adj_;
};

struct MaxFlowResult {
  double value = 0.0;
  /// Nodes reachable from s in the final residual network: the inclusion-wise
  /// minimal source side of a minimum cut.
  std::vector<char> source_side;
};

/// Highest-label push-relabel with the gap heuristic, followed by a second
/// phase that returns stranded excess to s so the result is a true flow.
/// Every solve checks capacity bounds, conservation and value == cut capacity
/// and throws repcut::Error if any check fails.
MaxFlowResult max_flow(FlowNetwork& net, int s, int t);

}  // namespace repcut
