#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "repcut/error.hpp"
#include "repcut/mincut.hpp"
#include "repcut/variants.hpp"

namespace repcut {
namespace {

void check_cap(const VariantInstance& inst, int cap, const char* suggestion) {
  if (inst.q() > cap)
    throw CapExceededError(std::string(variant_name(inst.variant)) + " enumeration refused: q = " +
                           std::to_string(inst.q()) + " exceeds the cap " + std::to_string(cap) +
                           "; " + suggestion);
}

// Odometer over the cartesian product of lists; fn returns false to stop.
void for_each_tuple(const std::vector<std::vector<NodeId>>& lists,
                    const std::function<void(const std::vector<NodeId>&)>& fn) {
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<std::size_t> pos(lists.size(), 0);
  std::vector<NodeId> cur(lists.size());
  while (true) {
    for (std::size_t k = 0; k < lists.size(); ++k) cur[k] = lists[k][pos[k]];
    fn(cur);
    std::size_t k = lists.size();
    while (k > 0) {
      --k;
      if (++pos[k] < lists[k].size()) break;
      pos[k] = 0;
      if (k == 0) return;
    }
    if (lists.empty()) return;
  }
}

// Restricted-growth strings over k items; fn gets block ids and block count.
void for_each_partition(int k, const std::function<void(const std::vector<int>&, int)>& fn) {
  std::vector<int> a(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == k) {
      fn(a, blocks);
      return;
    }
    for (int b = 0; b <= blocks && b < k; ++b) {
      a[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  if (k == 0) {
    fn(a, 0);
    return;
  }
  rec(0, 0);
}

std::vector<NodeSet> classes_of(const std::vector<NodeId>& items, const std::vector<int>& block,
                                int blocks) {
  std::vector<NodeSet> out(blocks);
  for (std::size_t k = 0; k < items.size(); ++k) out[block[k]].push_back(items[k]);
  for (NodeSet& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct CutValue {
  Cut cut;
  double weight = 0.0;
  std::optional<double> lp_value;
};

// Multiway cut between contracted classes, memoized per class system.
class MultiwayCache {
 public:
  MultiwayCache(const Graph& g, const SolveOptions& opt) : g_(g), opt_(opt) {}

  const CutValue& solve(const std::vector<NodeSet>& classes) {
    auto it = memo_.find(classes);
    if (it != memo_.end()) return it->second;
    CutValue v;
    if (classes.size() >= 2) {
      const Contraction con = contract(g_, classes);
      std::vector<NodeId> terminals;
      for (const NodeSet& c : classes) terminals.push_back(con.node_map[c.front()]);
      const LabelingResult r = solve_multiway_cut(con.graph, terminals, opt_.params, opt_.samples);
      for (EdgeId e : r.cut) v.cut.push_back(con.edge_origin[e]);
      v.cut = make_cut(g_, std::move(v.cut));
      v.lp_value = r.lp_value;
    }
    v.weight = cut_weight(g_, v.cut);
    return memo_.emplace(classes, std::move(v)).first->second;
  }

 private:
  const Graph& g_;
  const SolveOptions& opt_;
  std::map<std::vector<NodeSet>, CutValue> memo_;
};

// A demand is met if any of its alternative terminal pairs is separated.
using Alternatives = std::vector<std::pair<int, int>>;

bool demands_met(const std::vector<Alternatives>& demands, const std::vector<int>& block) {
  for (const Alternatives& d : demands) {
    bool met = false;
    for (auto [a, b] : d)
      if (block[a] != block[b]) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

// No two classes can be merged without breaking a demand.
bool maximal(const std::vector<Alternatives>& demands, const std::vector<int>& block, int blocks) {
  std::vector<int> merged(block.size());
  for (int x = 0; x < blocks; ++x)
    for (int y = x + 1; y < blocks; ++y) {
      for (std::size_t k = 0; k < block.size(); ++k) merged[k] = block[k] == y ? x : block[k];
      if (demands_met(demands, merged)) return false;
    }
  return true;
}

struct MulticutBest {
  bool found = false;
  CutValue value;
  std::vector<NodeSet> classes;
};

void best_multicut(const std::vector<NodeId>& terminals, const std::vector<Alternatives>& demands,
                   MultiwayCache& cache, MulticutBest& best) {
  for_each_partition(static_cast<int>(terminals.size()), [&](const std::vector<int>& block, int blocks) {
    if (!demands_met(demands, block) || !maximal(demands, block, blocks)) return;
    std::vector<NodeSet> classes = classes_of(terminals, block, blocks);
    const CutValue& v = cache.solve(classes);
    if (!best.found || v.weight < best.value.weight) {
      best.found = true;
      best.value = v;
      best.classes = std::move(classes);
    }
  });
}

// Terminal list and index map for a set of nodes.
struct TerminalIndex {
  std::vector<NodeId> nodes;
  int operator()(NodeId v) const {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  }
};

TerminalIndex index_of(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return {std::move(nodes)};
}

CutSolution finish_from_cut(const VariantInstance& inst, const CutValue& v) {
  const auto reps = find_representatives(inst, components(inst.graph, v.cut));
  if (!reps) throw Error("enumeration returned a cut without valid representatives");
  CutSolution sol = finish_solution(inst, v.cut, *reps);
  sol.lp_value = v.lp_value;
  return sol;
}

CutSolution trivial_solution(const VariantInstance& inst) { return finish_from_cut(inst, {}); }

void require_variant(const VariantInstance& inst, Variant v) {
  if (inst.variant != v)
    throw PreconditionError(std::string("expected a ") + variant_name(v) + " instance");
  require_feasible(inst);
}

// Unordered pairs {a <= b} of members of a set.
std::vector<std::pair<NodeId, NodeId>> member_pairs(const NodeSet& s) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x; y < s.size(); ++y) out.emplace_back(s[x], s[y]);
  return out;
}

// Calls fn with one chosen member pair per set.
void for_each_pair_choice(const CandidateFamily& fam,
                          const std::function<void(const std::vector<std::pair<NodeId, NodeId>>&)>& fn) {
  std::vector<std::vector<std::pair<NodeId, NodeId>>> options;
  std::vector<std::vector<NodeId>> idx;
  for (const NodeSet& s : fam.sets) {
    options.push_back(member_pairs(s));
    std::vector<NodeId> ids(options.back().size());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = static_cast<NodeId>(k);
    idx.push_back(std::move(ids));
  }
  std::vector<std::pair<NodeId, NodeId>> cur(fam.size());
  for_each_tuple(idx, [&](const std::vector<NodeId>& pick) {
    for (std::size_t i = 0; i < pick.size(); ++i) cur[i] = options[i][pick[i]];
    fn(cur);
  });
}

// Runs the multicut search once per distinct (terminals, demands) guess.
class GuessSearch {
 public:
  GuessSearch(const Graph& g, const SolveOptions& opt) : cache_(g, opt), opt_(opt) {}

  void consider(const std::vector<NodeId>& nodes,
                const std::vector<std::vector<std::pair<NodeId, NodeId>>>& demands) {
    const TerminalIndex t = index_of(nodes);
    if (static_cast<int>(t.nodes.size()) > opt_.cap_multicut_terminals)
      throw CapExceededError("multicut guess has " + std::to_string(t.nodes.size()) +
                             " terminals, above the cap");
    std::vector<Alternatives> d;
    for (const auto& alts : demands) {
      Alternatives a;
      for (auto [u, v] : alts) a.emplace_back(std::min(t(u), t(v)), std::max(t(u), t(v)));
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      d.push_back(std::move(a));
    }
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    if (!seen_.emplace(t.nodes, d).second) return;
    best_multicut(t.nodes, d, cache_, best_);
  }

  const MulticutBest& best() const { return best_; }

 private:
  MultiwayCache cache_;
  const SolveOptions& opt_;
  std::set<std::pair<std::vector<NodeId>, std::vector<Alternatives>>> seen_;
  MulticutBest best_;
};

}  // namespace

CutSolution solve_all_to_all(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::AllToAll);
  if (inst.q() == 1) return trivial_solution(inst);
  const Contraction con = contract(inst.graph, inst.family.sets);
  std::vector<NodeId> terminals;
  for (const NodeSet& s : inst.family.sets) terminals.push_back(con.node_map[s.front()]);
  const LabelingResult r = solve_multiway_cut(con.graph, terminals, opt.params, opt.samples);
  Cut c;
  for (EdgeId e : r.cut) c.push_back(con.edge_origin[e]);
  CutSolution sol = finish_solution(inst, std::move(c), {});
  sol.lp_value = r.lp_value;
  return sol;
}

CutSolution solve_single_to_all_2approx(const VariantInstance& inst, IsolatingMode mode) {
  require_variant(inst, Variant::SingleToAll);
  const int q = inst.q();
  const Graph& g = inst.graph;
  std::vector<Cut> cuts(q);
  std::vector<double> weights(q, 0.0);
  RepresentativeChoice reps;
  reps.single.assign(q, -1);
  for (int i = 0; i < q; ++i) {
    NodeSet others;
    for (int j = 0; j < q; ++j)
      if (j != i) others.insert(others.end(), inst.family.sets[j].begin(), inst.family.sets[j].end());
    others = make_node_set(g, std::move(others));
    for (NodeId v : inst.family.sets[i]) {
      if (std::binary_search(others.begin(), others.end(), v)) continue;
      StCutResult r;
      if (!others.empty()) r = isolating_cut(g, v, others);
      if (reps.single[i] < 0 || r.weight < weights[i]) {
        reps.single[i] = v;
        weights[i] = r.weight;
        cuts[i] = std::move(r.cut);
      }
    }
  }
  auto union_of = [&](int skip) {
    Cut c;
    for (int i = 0; i < q; ++i)
      if (i != skip) c.insert(c.end(), cuts[i].begin(), cuts[i].end());
    return make_cut(g, std::move(c));
  };
  if (mode == IsolatingMode::DropLargest && q >= 2) {
    int heaviest = 0;
    for (int i = 1; i < q; ++i)
      if (weights[i] >= weights[heaviest]) heaviest = i;
    Cut c = union_of(heaviest);
    if (auto r = find_representatives(inst, components(g, c))) return finish_solution(inst, c, *r);
  }
  return finish_solution(inst, union_of(-1), std::move(reps));
}

CutSolution solve_single_to_all_fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::SingleToAll);
  check_cap(inst, opt.cap_single_to_all, "use the isolating-cut 2-approximation");
  const int q = inst.q();
  const int n = inst.graph.num_nodes();
  std::vector<int> member_count(n, 0);
  for (const NodeSet& s : inst.family.sets)
    for (NodeId v : s) ++member_count[v];
  // t_i must avoid every other set.
  std::vector<std::vector<NodeId>> lists(q);
  for (int i = 0; i < q; ++i)
    for (NodeId v : inst.family.sets[i])
      if (member_count[v] == 1) lists[i].push_back(v);

  bool found = false;
  CutValue best;
  std::vector<NodeId> best_reps;
  for_each_tuple(lists, [&](const std::vector<NodeId>& t) {
    std::vector<std::vector<int>> labels(n);
    std::vector<int> rep_of(n, -1);
    for (int i = 0; i < q; ++i) rep_of[t[i]] = i;
    for (NodeId v = 0; v < n; ++v) {
      if (rep_of[v] >= 0) {
        labels[v] = {rep_of[v]};
      } else if (member_count[v] == 0) {
        labels[v].resize(q + 1);
        for (int c = 0; c <= q; ++c) labels[v][c] = c;
      } else if (member_count[v] == 1) {
        int i = 0;
        while (!inst.family.contains(i, v)) ++i;
        labels[v] = {i, q};
      } else {
        labels[v] = {q};
      }
    }
    const LabelingInstance li = make_lifted_instance(inst.graph, t, labels);
    const LabelingResult r = solve_lifted_cut(li, opt.params, opt.samples);
    if (!found || r.weight < best.weight) {
      found = true;
      best = {r.cut, r.weight, r.lp_value};
      best_reps = t;
    }
  });
  if (!found) throw InfeasibleError("no admissible representative tuple");
  RepresentativeChoice reps;
  reps.single = best_reps;
  CutSolution sol = finish_solution(inst, best.cut, std::move(reps));
  sol.lp_value = best.lp_value;
  return sol;
}

CutSolution solve_single_to_single_fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::SingleToSingle);
  check_cap(inst, opt.cap_single_to_single, "use the Gomory-Hu greedy");
  MultiwayCache cache(inst.graph, opt);
  bool found = false;
  CutValue best;
  std::vector<NodeId> best_reps;
  std::set<NodeSet> seen;
  for_each_tuple(inst.family.sets, [&](const std::vector<NodeId>& t) {
    NodeSet key = t;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) return;
    if (!seen.insert(key).second) return;
    std::vector<NodeSet> classes;
    for (NodeId v : key) classes.push_back({v});
    const CutValue& v = cache.solve(classes);
    if (!found || v.weight < best.weight) {
      found = true;
      best = v;
      best_reps = t;
    }
  });
  if (!found) throw InfeasibleError("no transversal");
  RepresentativeChoice reps;
  reps.single = best_reps;
  CutSolution sol = finish_solution(inst, best.cut, std::move(reps));
  sol.lp_value = best.lp_value;
  return sol;
}

CutSolution solve_fixed_to_single_fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::FixedToSingle);
  check_cap(inst, opt.cap_fixed_to_single, "no polynomial algorithm exists for unbounded q");
  const NodeId s = *inst.fixed_node;
  std::vector<std::vector<NodeId>> lists;
  for (const NodeSet& t : inst.family.sets) {
    lists.emplace_back();
    for (NodeId v : t)
      if (v != s) lists.back().push_back(v);
  }
  bool found = false;
  StCutResult best;
  std::vector<NodeId> best_reps;
  std::set<NodeSet> seen;
  for_each_tuple(lists, [&](const std::vector<NodeId>& t) {
    NodeSet x = make_node_set(inst.graph, t);
    if (!seen.insert(x).second) return;
    StCutResult r = isolating_cut(inst.graph, s, x);
    if (!found || r.weight < best.weight) {
      found = true;
      best = std::move(r);
      best_reps = t;
    }
  });
  if (!found) throw InfeasibleError("no admissible representative tuple");
  RepresentativeChoice reps;
  reps.single = best_reps;
  return finish_solution(inst, best.cut, std::move(reps));
}

MulticutResult solve_multicut_fixed_terminals(const Graph& g, const std::vector<DemandPair>& demands,
                                              const SolveOptions& opt) {
  std::vector<NodeId> nodes;
  for (auto [u, v] : demands) {
    if (!g.has_node(u) || !g.has_node(v)) throw StructuralError("demand names a missing node");
    if (u == v) throw InfeasibleError("demand pair joins node '" + g.name(u) + "' with itself");
    nodes.push_back(u);
    nodes.push_back(v);
  }
  const TerminalIndex t = index_of(std::move(nodes));
  if (static_cast<int>(t.nodes.size()) > opt.cap_multicut_terminals)
    throw CapExceededError("multicut has " + std::to_string(t.nodes.size()) +
                           " terminals, above the cap " + std::to_string(opt.cap_multicut_terminals));
  std::vector<Alternatives> d;
  for (auto [u, v] : demands) d.push_back({{t(u), t(v)}});
  MultiwayCache cache(g, opt);
  MulticutBest best;
  best_multicut(t.nodes, d, cache, best);
  if (!best.found) throw InfeasibleError("no partition satisfies the demands");
  return {best.value.cut, best.value.weight, best.classes};
}

CutSolution solve_some_to_single_fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::SomeToSingle);
  check_cap(inst, opt.cap_some_to_single, "the problem is Hitting-Set hard for unbounded q");
  const int q = inst.q();
  if (q == 1) return trivial_solution(inst);
  GuessSearch search(inst.graph, opt);
  // Two members per set suffice for the t_i^j: one of them always lies
  // outside the component of any given t_j.
  for_each_tuple(inst.family.sets, [&](const std::vector<NodeId>& t) {
    for_each_pair_choice(inst.family, [&](const std::vector<std::pair<NodeId, NodeId>>& ab) {
      std::vector<NodeId> nodes(t);
      std::vector<std::vector<std::pair<NodeId, NodeId>>> demands;
      for (int i = 0; i < q; ++i) {
        nodes.push_back(ab[i].first);
        nodes.push_back(ab[i].second);
        for (int j = 0; j < q; ++j)
          if (i != j) demands.push_back({{ab[i].first, t[j]}, {ab[i].second, t[j]}});
      }
      search.consider(nodes, demands);
    });
  });
  if (!search.best().found) throw InfeasibleError("no guess admits a separating partition");
  return finish_from_cut(inst, search.best().value);
}

CutSolution solve_some_to_some_fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::SomeToSome);
  check_cap(inst, opt.cap_some_to_some, "reduce to Steiner multicut instead");
  const int q = inst.q();
  if (q == 1) return trivial_solution(inst);
  GuessSearch search(inst.graph, opt);
  // A set split across components has, for any other set, a member apart
  // from some member of it; two members per set suffice.
  for_each_pair_choice(inst.family, [&](const std::vector<std::pair<NodeId, NodeId>>& ab) {
    std::vector<NodeId> nodes;
    std::vector<std::vector<std::pair<NodeId, NodeId>>> demands;
    for (int i = 0; i < q; ++i) {
      nodes.push_back(ab[i].first);
      nodes.push_back(ab[i].second);
      for (int j = i + 1; j < q; ++j)
        demands.push_back({{ab[i].first, ab[j].first},
                           {ab[i].first, ab[j].second},
                           {ab[i].second, ab[j].first},
                           {ab[i].second, ab[j].second}});
    }
    search.consider(nodes, demands);
  });
  if (!search.best().found) throw InfeasibleError("no guess admits a separating partition");
  return finish_from_cut(inst, search.best().value);
}

std::optional<LabelMask> some_to_all_lists(const VariantInstance& inst,
                                           const std::vector<std::vector<NodeId>>& pair_reps,
                                           const std::vector<NodeSet>& classes) {
  const int n = inst.graph.num_nodes();
  const int q = inst.q();
  const int k = static_cast<int>(classes.size());
  std::vector<int> class_of(n, -1);
  for (int c = 0; c < k; ++c)
    for (NodeId v : classes[c]) class_of[v] = c;
  // forbidden[j][c]: class c holds some t_i^j, so members of T_j avoid c.
  std::vector<std::vector<char>> forbidden(q, std::vector<char>(k, 0));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      if (i == j) continue;
      const int c = class_of[pair_reps[i][j]];
      if (c < 0) throw PreconditionError("representative outside every class");
      forbidden[j][c] = 1;
    }
  LabelMask mask = LabelMask::Constant(n, k + 1, true);
  for (NodeId v = 0; v < n; ++v) {
    if (class_of[v] >= 0) {
      mask.row(v).setConstant(false);
      mask(v, class_of[v]) = true;
    }
    for (int j = 0; j < q; ++j) {
      if (!inst.family.contains(j, v)) continue;
      for (int c = 0; c < k; ++c) {
        if (!forbidden[j][c]) continue;
        if (class_of[v] == c) return std::nullopt;
        mask(v, c) = false;
      }
    }
  }
  return mask;
}

CutSolution solve_some_to_all_fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  require_variant(inst, Variant::SomeToAll);
  check_cap(inst, opt.cap_some_to_all, "the problem is Hitting-Set hard for unbounded q");
  const int q = inst.q();
  if (q == 1) return trivial_solution(inst);
  // t_i^j ranges over T_i \ T_j; this also rules out t_i^j = t_j^l.
  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<NodeId>> lists;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      if (i == j) continue;
      slots.emplace_back(i, j);
      lists.emplace_back();
      for (NodeId v : inst.family.sets[i])
        if (!inst.family.contains(j, v)) lists.back().push_back(v);
    }

  using Key = std::pair<std::vector<NodeSet>, std::vector<char>>;
  std::map<Key, CutValue> memo;
  bool found = false;
  CutValue best;
  std::vector<std::vector<NodeId>> pair_reps(q, std::vector<NodeId>(q, -1));
  for_each_tuple(lists, [&](const std::vector<NodeId>& t) {
    for (std::size_t k = 0; k < slots.size(); ++k) pair_reps[slots[k].first][slots[k].second] = t[k];
    const TerminalIndex reps = index_of(t);
    for_each_partition(static_cast<int>(reps.nodes.size()), [&](const std::vector<int>& block, int blocks) {
      const std::vector<NodeSet> classes = classes_of(reps.nodes, block, blocks);
      const auto mask = some_to_all_lists(inst, pair_reps, classes);
      if (!mask) return;
      Key key{classes, std::vector<char>(mask->data(), mask->data() + mask->size())};
      auto it = memo.find(key);
      if (it == memo.end()) {
        const Contraction con = contract(inst.graph, classes);
        LabelingInstance li;
        li.graph = con.graph;
        li.num_labels = blocks + 1;
        li.mode = LabelingMode::Lifted;
        li.allowed = LabelMask::Constant(con.graph.num_nodes(), blocks + 1, true);
        for (NodeId v = 0; v < inst.graph.num_nodes(); ++v)
          li.allowed.row(con.node_map[v]) = mask->row(v);
        for (const NodeSet& c : classes) li.terminals.push_back(con.node_map[c.front()]);
        validate_labeling_instance(li);
        const LabelingResult r = solve_lifted_cut(li, opt.params, opt.samples);
        CutValue v;
        for (EdgeId e : r.cut) v.cut.push_back(con.edge_origin[e]);
        v.cut = make_cut(inst.graph, std::move(v.cut));
        v.weight = cut_weight(inst.graph, v.cut);
        v.lp_value = r.lp_value;
        it = memo.emplace(std::move(key), std::move(v)).first;
      }
      if (!found || it->second.weight < best.weight) {
        found = true;
        best = it->second;
      }
    });
  });
  if (!found) throw InfeasibleError("no admissible representatives and partition");
  return finish_from_cut(inst, best);
}

}  // namespace repcut
