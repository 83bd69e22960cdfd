#include "repcut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>

#include "repcut/error.hpp"

namespace repcut {
namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(double seconds) : deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                                 std::chrono::duration<double>(seconds))) {}
  void tick() {
    if ((++count_ & 0xfff) == 0 && Clock::now() > deadline_)
      throw BudgetError("oracle time budget exhausted");
  }
  long long count() const { return count_; }

 private:
  Clock::time_point deadline_;
  long long count_ = 0;
};

// ---- edge-subset oracle: representative search straight from the demands ----

// Representative slots: single t_i (owner i, target -1) or pair t_i^j.
struct Slot {
  int owner;
  int target;
};

// A demand between two slots, a slot and a whole set, or a slot and the
// fixed node; set-set demands carry slot = -1.
struct Demand {
  enum Kind { NodeNode, NodeSet, NodeFixed, SetSet } kind;
  int a = -1, b = -1;
};

struct DemandSystem {
  std::vector<Slot> slots;
  std::vector<Demand> demands;
};

DemandSystem demand_system(const VariantInstance& inst) {
  const int q = inst.q();
  DemandSystem ds;
  std::vector<int> single(q, -1);
  std::vector<std::vector<int>> pair(q, std::vector<int>(q, -1));
  if (uses_single_reps(inst.variant))
    for (int i = 0; i < q; ++i) {
      single[i] = static_cast<int>(ds.slots.size());
      ds.slots.push_back({i, -1});
    }
  if (uses_pair_reps(inst.variant))
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        if (i != j) {
          pair[i][j] = static_cast<int>(ds.slots.size());
          ds.slots.push_back({i, j});
        }
  for (int i = 0; i < q; ++i) {
    if (inst.variant == Variant::FixedToSingle) ds.demands.push_back({Demand::NodeFixed, single[i]});
    for (int j = 0; j < q; ++j) {
      if (i == j) continue;
      switch (inst.variant) {
        case Variant::AllToAll:
          if (i < j) ds.demands.push_back({Demand::SetSet, i, j});
          break;
        case Variant::SingleToAll:
          ds.demands.push_back({Demand::NodeSet, single[i], j});
          break;
        case Variant::SingleToSingle:
          if (i < j) ds.demands.push_back({Demand::NodeNode, single[i], single[j]});
          break;
        case Variant::FixedToSingle:
          break;
        case Variant::SomeToSingle:
          ds.demands.push_back({Demand::NodeNode, pair[i][j], single[j]});
          break;
        case Variant::SomeToSome:
          if (i < j) ds.demands.push_back({Demand::NodeNode, pair[i][j], pair[j][i]});
          break;
        case Variant::SomeToAll:
          ds.demands.push_back({Demand::NodeSet, pair[i][j], j});
          break;
      }
    }
  }
  return ds;
}

class RepSearch {
 public:
  RepSearch(const VariantInstance& inst, const DemandSystem& ds) : inst_(inst), ds_(ds) {
    // Slots connected by a node-node demand are searched together.
    const int k = static_cast<int>(ds.slots.size());
    std::vector<int> group(k);
    for (int s = 0; s < k; ++s) group[s] = s;
    auto find = [&](int s) {
      while (group[s] != s) s = group[s] = group[group[s]];
      return s;
    };
    for (const Demand& d : ds.demands)
      if (d.kind == Demand::NodeNode) group[find(d.a)] = find(d.b);
    std::vector<int> root_index(k, -1);
    for (int s = 0; s < k; ++s) {
      const int r = find(s);
      if (root_index[r] < 0) {
        root_index[r] = static_cast<int>(clusters_.size());
        clusters_.emplace_back();
      }
      clusters_[root_index[r]].push_back(s);
    }
    demands_of_.resize(k);
    for (std::size_t d = 0; d < ds.demands.size(); ++d) {
      const Demand& dm = ds.demands[d];
      if (dm.kind == Demand::SetSet) continue;
      const int last = dm.kind == Demand::NodeNode ? std::max(dm.a, dm.b) : dm.a;
      demands_of_[last].push_back(static_cast<int>(d));
    }
  }

  // Assignment of every slot, or empty if none satisfies the demands.
  std::optional<std::vector<NodeId>> run(const Partition& comp) {
    comp_ = &comp;
    for (const Demand& d : ds_.demands)
      if (d.kind == Demand::SetSet)
        for (NodeId u : inst_.family.sets[d.a])
          for (NodeId v : inst_.family.sets[d.b])
            if (comp.block[u] == comp.block[v]) return std::nullopt;
    value_.assign(ds_.slots.size(), -1);
    for (const auto& cluster : clusters_)
      if (!assign(cluster, 0)) return std::nullopt;
    return value_;
  }

 private:
  bool holds(const Demand& d) const {
    const auto& b = comp_->block;
    switch (d.kind) {
      case Demand::NodeNode:
        return b[value_[d.a]] != b[value_[d.b]];
      case Demand::NodeSet:
        for (NodeId v : inst_.family.sets[d.b])
          if (b[v] == b[value_[d.a]]) return false;
        return true;
      case Demand::NodeFixed:
        return b[value_[d.a]] != b[*inst_.fixed_node];
      case Demand::SetSet:
        return true;
    }
    return false;
  }

  bool assign(const std::vector<int>& cluster, std::size_t pos) {
    if (pos == cluster.size()) return true;
    const int s = cluster[pos];
    for (NodeId v : inst_.family.sets[ds_.slots[s].owner]) {
      value_[s] = v;
      bool ok = true;
      for (int d : demands_of_[s])
        if (!holds(ds_.demands[d])) {
          ok = false;
          break;
        }
      if (ok && assign(cluster, pos + 1)) return true;
    }
    value_[s] = -1;
    return false;
  }

  const VariantInstance& inst_;
  const DemandSystem& ds_;
  std::vector<std::vector<int>> clusters_;  // ascending slot order
  std::vector<std::vector<int>> demands_of_;
  const Partition* comp_ = nullptr;
  std::vector<NodeId> value_;
};

RepresentativeChoice to_choice(const VariantInstance& inst, const DemandSystem& ds,
                               const std::vector<NodeId>& value) {
  RepresentativeChoice r;
  const int q = inst.q();
  if (uses_single_reps(inst.variant)) r.single.assign(q, -1);
  if (uses_pair_reps(inst.variant)) r.pair.assign(q, std::vector<NodeId>(q, -1));
  for (std::size_t s = 0; s < ds.slots.size(); ++s) {
    const Slot& sl = ds.slots[s];
    if (sl.target < 0)
      r.single[sl.owner] = value[s];
    else
      r.pair[sl.owner][sl.target] = value[s];
  }
  return r;
}

}  // namespace

ExactCut exact_partition_search(const Graph& g, const std::function<bool(const Partition&)>& accept,
                                const OracleLimits& limits) {
  const int n = g.num_nodes();
  if (n > limits.max_nodes)
    throw BudgetError("oracle refuses " + std::to_string(n) + " nodes (limit " +
                      std::to_string(limits.max_nodes) + ")");
  const int max_blocks = limits.max_partition_blocks > 0 ? limits.max_partition_blocks : std::max(n, 1);
  Budget budget(limits.time_budget_seconds);
  ExactCut best;
  std::vector<int> label(n, 0);
  std::vector<int> best_label;

  auto visit = [&]() {
    budget.tick();
    double w = 0.0;
    for (const Edge& e : g.edges())
      if (label[e.u] != label[e.v]) w += e.w;
    if (best.feasible && !(w < best.weight)) return;
    const Cut cut = dichromatic_edges(g, label);
    if (!accept(components(g, cut))) return;
    best.feasible = true;
    best.weight = w;
    best.cut = cut;
  };
  // Restricted-growth strings: label[k] <= 1 + max(label[0..k-1]).
  auto rec = [&](auto&& self, int pos, int blocks) -> void {
    if (pos == n) {
      visit();
      return;
    }
    const int top = std::min(blocks + 1, max_blocks);
    for (int b = 0; b < top; ++b) {
      label[pos] = b;
      self(self, pos + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0)
    visit();
  else
    rec(rec, 0, 0);
  if (best.feasible) best.weight = cut_weight(g, best.cut);
  return best;
}

OracleResult exact_solve(const VariantInstance& inst, const OracleLimits& limits) {
  check_instance(inst);
  OracleResult res;
  const ExactCut best = exact_partition_search(
      inst.graph, [&](const Partition& p) { return find_representatives(inst, p).has_value(); },
      limits);
  if (!best.feasible) return res;
  res.feasible = true;
  const auto reps = find_representatives(inst, components(inst.graph, best.cut));
  res.solution = finish_solution(inst, best.cut, *reps);
  return res;
}

OracleResult exact_solve_by_edges(const VariantInstance& inst, const OracleLimits& limits) {
  check_instance(inst);
  const Graph& g = inst.graph;
  const int m = g.num_edges();
  if (m > limits.max_edges || m >= 62)
    throw BudgetError("edge-subset oracle refuses " + std::to_string(m) + " edges");
  const DemandSystem ds = demand_system(inst);
  RepSearch search(inst, ds);
  Budget budget(limits.time_budget_seconds);
  OracleResult res;
  double best_w = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  std::vector<NodeId> best_value;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    budget.tick();
    double w = 0.0;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) w += g.edge(e).w;
    if (!(w < best_w)) continue;
    Cut c;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) c.push_back(e);
    if (auto value = search.run(components(g, c))) {
      best_w = w;
      best_mask = mask;
      best_value = std::move(*value);
      res.feasible = true;
    }
  }
  res.examined = budget.count();
  if (!res.feasible) return res;
  Cut c;
  for (int e = 0; e < m; ++e)
    if (best_mask >> e & 1) c.push_back(e);
  res.solution = finish_solution(inst, std::move(c), to_choice(inst, ds, best_value));
  return res;
}

ExactCut exact_multiway_cut(const Graph& g, const std::vector<NodeId>& terminals,
                            const OracleLimits& limits) {
  for (NodeId t : terminals)
    if (!g.has_node(t)) throw StructuralError("unknown terminal");
  return exact_partition_search(
      g,
      [&](const Partition& p) {
        for (std::size_t a = 0; a < terminals.size(); ++a)
          for (std::size_t b = a + 1; b < terminals.size(); ++b)
            if (p.block[terminals[a]] == p.block[terminals[b]]) return false;
        return true;
      },
      limits);
}

ExactCut exact_multicut(const Graph& g, const std::vector<DemandPair>& demands,
                        const OracleLimits& limits) {
  for (auto [u, v] : demands)
    if (!g.has_node(u) || !g.has_node(v)) throw StructuralError("demand names a missing node");
  return exact_partition_search(
      g,
      [&](const Partition& p) {
        for (auto [u, v] : demands)
          if (p.block[u] == p.block[v]) return false;
        return true;
      },
      limits);
}

ExactCut exact_steiner_multicut(const Graph& g, const std::vector<NodeSet>& groups,
                                const OracleLimits& limits) {
  for (const NodeSet& x : groups)
    for (NodeId v : x)
      if (!g.has_node(v)) throw StructuralError("group names a missing node");
  return exact_partition_search(
      g,
      [&](const Partition& p) {
        for (const NodeSet& x : groups) {
          bool split = false;
          for (NodeId v : x)
            if (p.block[v] != p.block[x.front()]) split = true;
          if (!split) return false;
        }
        return true;
      },
      limits);
}

std::optional<std::vector<int>> exact_hitting_set(int ground_size,
                                                  const std::vector<std::vector<int>>& sets) {
  if (ground_size < 0 || ground_size > 30) throw BudgetError("hitting-set oracle limited to 30 elements");
  std::vector<std::uint32_t> masks;
  for (const auto& s : sets) {
    std::uint32_t m = 0;
    for (int e : s) {
      if (e < 0 || e >= ground_size) throw StructuralError("set element out of range");
      m |= std::uint32_t{1} << e;
    }
    if (m == 0) return std::nullopt;
    masks.push_back(m);
  }
  const std::uint64_t end = std::uint64_t{1} << ground_size;
  for (int k = 0; k <= ground_size; ++k) {
    std::uint64_t h = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
    while (h < end) {
      bool hits = true;
      for (std::uint32_t m : masks)
        if ((m & h) == 0) {
          hits = false;
          break;
        }
      if (hits) {
        std::vector<int> out;
        for (int e = 0; e < ground_size; ++e)
          if (h >> e & 1) out.push_back(e);
        return out;
      }
      if (h == 0) break;
      // Next mask with the same popcount.
      const std::uint64_t c = h & -h, r = h + c;
      h = (((r ^ h) >> 2) / c) | r;
    }
  }
  return std::nullopt;
}

}  // namespace repcut
