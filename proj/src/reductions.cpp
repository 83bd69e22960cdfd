#include "repcut/reductions.hpp"

#include <algorithm>

#include "repcut/error.hpp"

namespace repcut {
namespace {

std::string fresh_name(const Graph& g, std::string base) {
  while (g.find(base)) base += "'";
  return base;
}

void require_variant(const VariantInstance& inst, Variant v) {
  if (inst.variant != v)
    throw PreconditionError(std::string("reduction expects a ") + variant_name(v) + " instance");
}

CutSolution same_cut(const VariantInstance& inst, const Cut& cut, RepresentativeChoice reps) {
  return finish_solution(inst, cut, std::move(reps));
}

std::vector<std::vector<NodeId>> pair_table(int q, NodeId fill) {
  std::vector<std::vector<NodeId>> t(q, std::vector<NodeId>(q, fill));
  for (int i = 0; i < q; ++i) t[i][i] = -1;
  return t;
}

}  // namespace

void check_hitting_set(const HittingSetInstance& h) {
  const int n = static_cast<int>(h.ground.size());
  for (const auto& s : h.sets) {
    if (s.empty()) throw StructuralError("hitting-set instance has an empty set");
    for (int e : s)
      if (e < 0 || e >= n) throw StructuralError("set element outside the ground set");
  }
}

HittingSetReduction hitting_set_to_fixed_to_single(const HittingSetInstance& h) {
  check_hitting_set(h);
  HittingSetReduction r;
  r.source = h;
  Graph g;
  for (const std::string& name : h.ground) g.add_node(name);
  const NodeId s = g.add_node(fresh_name(g, "s"));
  for (NodeId v = 0; v < s; ++v) r.element_edge.push_back(g.add_edge(s, v, 1.0));
  std::vector<NodeSet> sets(h.sets.begin(), h.sets.end());
  r.target = make_instance(Variant::FixedToSingle, std::move(g), std::move(sets), s);
  return r;
}

CutSolution HittingSetReduction::forward(const std::vector<int>& hitting) const {
  std::vector<char> in(source.ground.size(), 0);
  Cut cut;
  for (int e : hitting) {
    if (e < 0 || e >= static_cast<int>(in.size())) throw StructuralError("element out of range");
    in[e] = 1;
    cut.push_back(element_edge[e]);
  }
  RepresentativeChoice reps;
  for (const auto& s : target.family.sets) {
    NodeId t = -1;
    for (NodeId v : s)
      if (in[v]) {
        t = v;
        break;
      }
    if (t < 0) throw PreconditionError("forward map needs a hitting set");
    reps.single.push_back(t);
  }
  return same_cut(target, cut, std::move(reps));
}

std::vector<int> HittingSetReduction::backward(const CutSolution& sol) const {
  std::vector<int> h;
  for (EdgeId e : sol.cut) {
    const auto it = std::find(element_edge.begin(), element_edge.end(), e);
    if (it == element_edge.end()) throw StructuralError("cut edge outside the star");
    h.push_back(static_cast<int>(it - element_edge.begin()));
  }
  std::sort(h.begin(), h.end());
  return h;
}

FixedToSomeToSingle fixed_to_single_to_some_to_single(const VariantInstance& inst) {
  require_variant(inst, Variant::FixedToSingle);
  const NodeId s = *inst.fixed_node;
  std::vector<NodeSet> sets = inst.family.sets;
  for (NodeSet& t : sets) t.push_back(s);
  sets.push_back({s});
  return {inst, make_instance(Variant::SomeToSingle, inst.graph, std::move(sets))};
}

CutSolution FixedToSomeToSingle::forward(const CutSolution& sol) const {
  const int q = source.q();
  const NodeId s = *source.fixed_node;
  RepresentativeChoice reps;
  reps.single = sol.reps.single;
  reps.single.push_back(s);
  reps.pair = pair_table(q + 1, s);  // t_i^j = s and t_{q+1}^i = s
  for (int i = 0; i < q; ++i) reps.pair[i][q] = sol.reps.single.at(i);
  return same_cut(target, sol.cut, std::move(reps));
}

CutSolution FixedToSomeToSingle::backward(const CutSolution& sol) const {
  RepresentativeChoice reps;
  reps.single.assign(sol.reps.single.begin(), sol.reps.single.begin() + source.q());
  return same_cut(source, sol.cut, std::move(reps));
}

FixedToSomeToAll fixed_to_single_to_some_to_all(const VariantInstance& inst) {
  require_variant(inst, Variant::FixedToSingle);
  const int q = inst.q();
  if (q < 2) throw PreconditionError("the some-to-all reduction needs q >= 2");
  FixedToSomeToAll r;
  r.source = inst;
  Graph g = inst.graph;
  for (int i = 0; i < q; ++i) r.extra.push_back(g.add_node(fresh_name(g, "s" + std::to_string(i + 1))));
  std::vector<NodeSet> sets = inst.family.sets;
  for (int i = 0; i < q; ++i) sets[i].push_back(r.extra[i]);
  NodeSet last{*inst.fixed_node};
  last.insert(last.end(), r.extra.begin(), r.extra.end());
  sets.push_back(std::move(last));
  r.target = make_instance(Variant::SomeToAll, std::move(g), std::move(sets));
  return r;
}

CutSolution FixedToSomeToAll::forward(const CutSolution& sol) const {
  const int q = source.q();
  RepresentativeChoice reps;
  reps.pair = pair_table(q + 1, -1);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j)
      if (i != j) reps.pair[i][j] = extra[i];
    reps.pair[i][q] = sol.reps.single.at(i);
    // 1-based: t_{q+1}^j = s_{(j mod q) + 1}, an isolated node outside T'_j.
    reps.pair[q][i] = extra[(i + 1) % q];
  }
  return same_cut(target, sol.cut, std::move(reps));
}

CutSolution FixedToSomeToAll::backward(const CutSolution& sol) const {
  const int q = source.q();
  RepresentativeChoice reps;
  for (int j = 0; j < q; ++j) reps.single.push_back(sol.reps.pair.at(j).at(q));
  return same_cut(source, sol.cut, std::move(reps));
}

bool SteinerMulticutInstance::feasible() const {
  for (const NodeSet& x : groups) {
    NodeSet s = x;
    std::sort(s.begin(), s.end());
    if (std::unique(s.begin(), s.end()) - s.begin() < 2) return false;
  }
  return true;
}

bool steiner_cut_valid(const SteinerMulticutInstance& sm, const Cut& cut) {
  const Partition p = components(sm.graph, make_cut(sm.graph, cut));
  for (const NodeSet& x : sm.groups) {
    if (x.empty()) return false;
    bool split = false;
    for (NodeId v : x)
      if (p.block[v] != p.block[x.front()]) split = true;
    if (!split) return false;
  }
  return true;
}

SteinerToSomeToSome steiner_to_some_to_some(const SteinerMulticutInstance& sm) {
  if (sm.groups.empty()) throw StructuralError("steiner multicut instance has no groups");
  std::vector<NodeSet> sets;
  for (const NodeSet& x : sm.groups) {
    sets.push_back(x);
    sets.push_back(x);
  }
  return {sm, make_instance(Variant::SomeToSome, sm.graph, std::move(sets))};
}

CutSolution SteinerToSomeToSome::forward(const Cut& cut) const {
  if (!steiner_cut_valid(source, cut)) throw PreconditionError("forward map needs a valid multicut");
  const auto reps = find_representatives(target, components(target.graph, make_cut(target.graph, cut)));
  if (!reps) throw Error("split groups admit no some-to-some representatives");
  return same_cut(target, cut, *reps);
}

Cut SteinerToSomeToSome::backward(const CutSolution& sol) const {
  const ValidationReport rep = validate_solution(target, sol);
  if (!rep.ok) throw PreconditionError("backward map needs a valid solution: " + rep.reason);
  return sol.cut;
}

PairExtraction extract_pair_representatives(const VariantInstance& inst, const Partition& comp,
                                            int i, int j, NodeId v, NodeId u) {
  const auto& b = comp.block;
  const auto& ti = inst.family.sets.at(i);
  const auto& tj = inst.family.sets.at(j);
  auto in = [](const NodeSet& s, NodeId x) { return std::binary_search(s.begin(), s.end(), x); };
  if (b[u] == b[v]) throw PreconditionError("witnesses share a component");
  // First member of s outside the component of u, or -1.
  auto away_from_u = [&](const NodeSet& s) {
    for (NodeId w : s)
      if (b[w] != b[u]) return w;
    return NodeId{-1};
  };
  if (in(ti, v) && in(tj, u)) return {v, u, "1"};
  if (in(ti, u) && in(tj, v)) return {u, v, "2"};
  if (in(ti, u) && in(ti, v)) {
    if (const NodeId w = away_from_u(tj); w >= 0) return {u, w, "3(ii)"};
    return {v, tj.front(), "3(i)"};
  }
  if (in(tj, u) && in(tj, v)) {
    if (const NodeId w = away_from_u(ti); w >= 0) return {w, u, "4(ii)"};
    return {ti.front(), v, "4(i)"};
  }
  throw PreconditionError("witnesses are not members of T_i + T_j");
}

SomeToSomeToSteiner some_to_some_to_steiner(const VariantInstance& inst) {
  require_variant(inst, Variant::SomeToSome);
  SomeToSomeToSteiner r;
  r.source = inst;
  r.target.graph = inst.graph;
  for (int i = 0; i < inst.q(); ++i)
    for (int j = i + 1; j < inst.q(); ++j) {
      NodeSet x = inst.family.sets[i];
      x.insert(x.end(), inst.family.sets[j].begin(), inst.family.sets[j].end());
      r.target.groups.push_back(make_node_set(inst.graph, std::move(x)));
      r.pairs.emplace_back(i, j);
    }
  return r;
}

Cut SomeToSomeToSteiner::forward(const CutSolution& sol) const {
  const ValidationReport rep = validate_solution(source, sol);
  if (!rep.ok) throw PreconditionError("forward map needs a valid solution: " + rep.reason);
  return sol.cut;
}

CutSolution SomeToSomeToSteiner::backward(const Cut& cut) const {
  const Cut c = make_cut(source.graph, cut);
  if (!steiner_cut_valid(target, c)) throw PreconditionError("backward map needs a valid multicut");
  const Partition comp = components(source.graph, c);
  const int q = source.q();
  RepresentativeChoice reps;
  reps.pair = pair_table(q, -1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const NodeSet& x = target.groups[k];
    const NodeId v = x.front();
    NodeId u = -1;
    for (NodeId w : x)
      if (comp.block[w] != comp.block[v]) {
        u = w;
        break;
      }
    const auto [i, j] = pairs[k];
    const PairExtraction e = extract_pair_representatives(source, comp, i, j, v, u);
    reps.pair[i][j] = e.t_ij;
    reps.pair[j][i] = e.t_ji;
  }
  return same_cut(source, c, std::move(reps));
}

}  // namespace repcut
