#include "repcut/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "repcut/error.hpp"

namespace repcut {

FlowNetwork::FlowNetwork(int n) : adj_(n) {}

int FlowNetwork::add_arc(int u, int v, double cap, double rev_cap) {
  if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes())
    throw StructuralError("flow arc endpoint out of range");
  if (!(cap >= 0.0) || !(rev_cap >= 0.0) || !std::isfinite(cap) || !std::isfinite(rev_cap))
    throw StructuralError("flow capacity must be finite and nonnegative");
  const int a = num_arcs();
  to_.push_back(v);
  cap_.push_back(cap);
  flow_.push_back(0.0);
  adj_[u].push_back(a);
  to_.push_back(u);
  cap_.push_back(rev_cap);
  flow_.push_back(0.0);
  adj_[v].push_back(a + 1);
  return a;
}

void FlowNetwork::reset_flow() { std::fill(flow_.begin(), flow_.end(), 0.0); }

struct PushRelabel {
  FlowNetwork& net;
  int n, s, t;
  double eps;
  std::vector<int> height, current, count;
  std::vector<double> excess;
  std::vector<std::vector<int>> buckets;
  std::vector<char> queued;
  int top = -1;

  PushRelabel(FlowNetwork& g, int source, int sink)
      : net(g), n(g.num_nodes()), s(source), t(sink) {
    double scale = 1.0;
    for (double c : net.cap_) scale = std::max(scale, c);
    eps = 1e-12 * scale;
    height.assign(n, 0);
    current.assign(n, 0);
    count.assign(2 * n + 1, 0);
    excess.assign(n, 0.0);
    buckets.assign(n, {});
    queued.assign(n, 0);
  }

  double residual(int a) const { return net.cap_[a] - net.flow_[a]; }

  void push(int a, double amount) {
    const int v = net.to_[a];
    const int u = net.to_[a ^ 1];
    net.flow_[a] += amount;
    net.flow_[a ^ 1] -= amount;
    excess[u] -= amount;
    excess[v] += amount;
  }

  // Exact distances to t in the residual graph; unreachable nodes get n.
  void global_relabel() {
    std::fill(height.begin(), height.end(), n);
    height[t] = 0;
    std::deque<int> queue{t};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int a : net.adj_[v]) {
        const int u = net.to_[a];
        if (height[u] == n && u != s && residual(a ^ 1) > eps) {
          height[u] = height[v] + 1;
          queue.push_back(u);
        }
      }
    }
    height[s] = n;
    std::fill(count.begin(), count.end(), 0);
    for (int v = 0; v < n; ++v) ++count[height[v]];
  }

  void activate(int v) {
    if (v == s || v == t || queued[v] || height[v] >= n || excess[v] <= eps) return;
    queued[v] = 1;
    buckets[height[v]].push_back(v);
    top = std::max(top, height[v]);
  }

  void relabel(int u) {
    int lowest = 2 * n;
    for (int a : net.adj_[u])
      if (residual(a) > eps) lowest = std::min(lowest, height[net.to_[a]] + 1);
    --count[height[u]];
    height[u] = std::min(lowest, 2 * n);
    ++count[height[u]];
    current[u] = 0;
  }

  // Nodes above an empty level below n can no longer reach t.
  void gap(int level) {
    for (int v = 0; v < n; ++v) {
      if (v == s || height[v] <= level || height[v] >= n) continue;
      --count[height[v]];
      height[v] = n + 1;
      ++count[height[v]];
      current[v] = 0;
    }
  }

  void discharge(int u, bool capped) {
    while (excess[u] > eps) {
      if (capped && height[u] >= n) return;
      const auto& arcs = net.adj_[u];
      if (current[u] == static_cast<int>(arcs.size())) {
        const int old = height[u];
        relabel(u);
        if (capped && count[old] == 0 && old < n) gap(old);
        continue;
      }
      const int a = arcs[current[u]];
      const int v = net.to_[a];
      const double r = residual(a);
      if (r > eps && height[u] == height[v] + 1) {
        push(a, std::min(excess[u], r));
        if (capped) activate(v);
      } else {
        ++current[u];
      }
    }
  }

  double run() {
    global_relabel();
    for (int a : net.adj_[s]) {
      const double r = residual(a);
      if (r > 0.0) push(a, r);
    }
    for (int v = 0; v < n; ++v) activate(v);

    while (top >= 0) {
      if (buckets[top].empty()) {
        --top;
        continue;
      }
      const int u = buckets[top].back();
      buckets[top].pop_back();
      queued[u] = 0;
      if (height[u] != top) {
        activate(u);
        continue;
      }
      discharge(u, true);
    }

    // Second phase: everything still holding excess cannot reach t; send it
    // back toward s.
    std::deque<int> fifo;
    for (int v = 0; v < n; ++v)
      if (v != s && v != t && excess[v] > eps) fifo.push_back(v);
    std::fill(queued.begin(), queued.end(), 0);
    for (int v : fifo) queued[v] = 1;
    while (!fifo.empty()) {
      const int u = fifo.front();
      fifo.pop_front();
      queued[u] = 0;
      const auto& arcs = net.adj_[u];
      while (excess[u] > eps) {
        if (current[u] == static_cast<int>(arcs.size())) {
          relabel(u);
          continue;
        }
        const int a = arcs[current[u]];
        const int v = net.to_[a];
        const double r = residual(a);
        if (r > eps && height[u] == height[v] + 1) {
          push(a, std::min(excess[u], r));
          if (v != s && v != t && !queued[v] && excess[v] > eps) {
            queued[v] = 1;
            fifo.push_back(v);
          }
        } else {
          ++current[u];
        }
      }
    }
    return excess[t];
  }
};

namespace {

void verify(const FlowNetwork& net, int s, int t, const MaxFlowResult& r) {
  double scale = 1.0;
  for (int a = 0; a < net.num_arcs(); ++a) scale += net.capacity(a);
  const double tol = 1e-9 * scale;
  std::vector<double> balance(net.num_nodes(), 0.0);
  for (int a = 0; a < net.num_arcs(); ++a) {
    if (net.flow(a) > net.capacity(a) + tol)
      throw Error("max-flow check: arc " + std::to_string(a) + " over capacity");
    if (net.flow(a) > 0.0) {
      balance[net.tail(a)] -= net.flow(a);
      balance[net.head(a)] += net.flow(a);
    }
  }
  for (int v = 0; v < net.num_nodes(); ++v)
    if (v != s && v != t && std::abs(balance[v]) > tol)
      throw Error("max-flow check: conservation fails at node " + std::to_string(v));
  if (std::abs(balance[t] - r.value) > tol)
    throw Error("max-flow check: flow into the sink differs from the value");
  if (!r.source_side[s] || r.source_side[t])
    throw Error("max-flow check: residual side does not separate s from t");
  double cut = 0.0;
  for (int a = 0; a < net.num_arcs(); ++a)
    if (r.source_side[net.tail(a)] && !r.source_side[net.head(a)]) cut += net.capacity(a);
  if (std::abs(cut - r.value) > tol)
    throw Error("max-flow check: cut capacity differs from flow value");
}

}  // namespace

MaxFlowResult max_flow(FlowNetwork& net, int s, int t) {
  const int n = net.num_nodes();
  if (s < 0 || t < 0 || s >= n || t >= n) throw StructuralError("max-flow terminal out of range");
  if (s == t) throw PreconditionError("max-flow source equals sink");
  net.reset_flow();

  PushRelabel solver(net, s, t);
  MaxFlowResult result;
  result.value = solver.run();

  result.source_side.assign(n, 0);
  result.source_side[s] = 1;
  std::deque<int> queue{s};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int a : net.out_arcs(v)) {
      const int u = net.head(a);
      if (!result.source_side[u] && solver.residual(a) > solver.eps) {
        result.source_side[u] = 1;
        queue.push_back(u);
      }
    }
  }
  verify(net, s, t, result);
  return result;
}

}  // namespace repcut
