#include "repcut/variants.hpp"

#include <algorithm>
#include <cmath>

#include "repcut/error.hpp"

namespace repcut {
namespace {

constexpr const char* kNames[] = {"all-to-all",    "single-to-all", "single-to-single",
                                  "fixed-to-single", "some-to-single", "some-to-some",
                                  "some-to-all"};

std::string set_label(int i) { return "T" + std::to_string(i + 1); }

// Component ids touched by each candidate set.
std::vector<std::vector<char>> set_components(const VariantInstance& inst, const Partition& comp) {
  std::vector<std::vector<char>> touch(inst.q(), std::vector<char>(comp.num_blocks, 0));
  for (int i = 0; i < inst.q(); ++i)
    for (NodeId v : inst.family.sets[i]) touch[i][comp.block[v]] = 1;
  return touch;
}

// Smallest member of T_i whose component satisfies ok, or -1.
template <typename Pred>
NodeId first_member(const VariantInstance& inst, int i, Pred ok) {
  for (NodeId v : inst.family.sets[i])
    if (ok(v)) return v;
  return -1;
}

// Kuhn's matching of sets onto components; match_set[i] = component or -1.
struct SetMatching {
  std::vector<int> match_set;
  std::vector<int> match_comp;
};

bool augment(const VariantInstance& inst, const Partition& comp, int i, std::vector<char>& seen,
             SetMatching& m) {
  for (NodeId v : inst.family.sets[i]) {
    const int c = comp.block[v];
    if (seen[c]) continue;
    seen[c] = 1;
    if (m.match_comp[c] < 0 || augment(inst, comp, m.match_comp[c], seen, m)) {
      m.match_comp[c] = i;
      m.match_set[i] = c;
      return true;
    }
  }
  return false;
}

SetMatching match_sets(const VariantInstance& inst, const Partition& comp) {
  SetMatching m{std::vector<int>(inst.q(), -1), std::vector<int>(comp.num_blocks, -1)};
  for (int i = 0; i < inst.q(); ++i) {
    std::vector<char> seen(comp.num_blocks, 0);
    augment(inst, comp, i, seen, m);
  }
  return m;
}

std::vector<std::vector<NodeId>> empty_pairs(int q) {
  return std::vector<std::vector<NodeId>>(q, std::vector<NodeId>(q, -1));
}

}  // namespace

const char* variant_name(Variant v) { return kNames[static_cast<int>(v)]; }

Variant parse_variant(std::string_view name) {
  for (int k = 0; k < 7; ++k)
    if (name == kNames[k]) return static_cast<Variant>(k);
  throw ParseError("unknown variant '" + std::string(name) + "'");
}

bool uses_single_reps(Variant v) {
  return v == Variant::SingleToAll || v == Variant::SingleToSingle ||
         v == Variant::FixedToSingle || v == Variant::SomeToSingle;
}

bool uses_pair_reps(Variant v) {
  return v == Variant::SomeToSingle || v == Variant::SomeToSome || v == Variant::SomeToAll;
}

bool CandidateFamily::contains(int i, NodeId v) const {
  return std::binary_search(sets.at(i).begin(), sets.at(i).end(), v);
}

VariantInstance make_instance(Variant variant, Graph g, std::vector<NodeSet> sets,
                              std::optional<NodeId> fixed_node) {
  VariantInstance inst;
  inst.variant = variant;
  inst.graph = std::move(g);
  for (NodeSet& s : sets) inst.family.sets.push_back(make_node_set(inst.graph, std::move(s)));
  inst.fixed_node = fixed_node;
  check_instance(inst);
  return inst;
}

void check_instance(const VariantInstance& inst) {
  if (inst.q() < 1) throw StructuralError("at least one candidate set is required");
  for (int i = 0; i < inst.q(); ++i) {
    const NodeSet& s = inst.family.sets[i];
    if (s.empty()) throw StructuralError("candidate set " + set_label(i) + " is empty");
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      throw StructuralError("candidate set " + set_label(i) + " is not normalized");
    for (NodeId v : s)
      if (!inst.graph.has_node(v))
        throw StructuralError("candidate set " + set_label(i) + " names a missing node");
  }
  const bool fixed = inst.variant == Variant::FixedToSingle;
  if (fixed != inst.fixed_node.has_value())
    throw StructuralError(fixed ? "fixed-to-single needs a fixed node"
                                : "only fixed-to-single takes a fixed node");
  if (fixed && !inst.graph.has_node(*inst.fixed_node))
    throw StructuralError("fixed node is not in the graph");
}

ValidationReport validate_solution(const VariantInstance& inst, const CutSolution& sol) {
  ValidationReport rep;
  const Graph& g = inst.graph;
  const int q = inst.q();
  auto reject = [&](std::string why) {
    rep.ok = false;
    rep.reason = std::move(why);
    return rep;
  };
  for (EdgeId e : sol.cut)
    if (e < 0 || e >= g.num_edges()) return reject("cut refers to a missing edge");
  Cut cut = make_cut(g, sol.cut);
  if (cut.size() != sol.cut.size()) return reject("cut lists an edge twice");
  const double w = cut_weight(g, cut);
  if (std::abs(w - sol.weight) > 1e-9 * (1.0 + std::abs(w)))
    return reject("reported weight " + std::to_string(sol.weight) + " differs from cut weight " +
                  std::to_string(w));

  const Partition comp = components(g, cut);
  const auto touch = set_components(inst, comp);
  const auto& single = sol.reps.single;
  const auto& pair = sol.reps.pair;
  const Variant var = inst.variant;

  if (uses_single_reps(var)) {
    if (static_cast<int>(single.size()) != q) return reject("expected one representative per set");
    for (int i = 0; i < q; ++i)
      if (!inst.family.contains(i, single[i]))
        return reject("representative t" + std::to_string(i + 1) + " is not in " + set_label(i));
  } else if (!single.empty()) {
    return reject("this variant takes no single representatives");
  }
  if (uses_pair_reps(var)) {
    if (static_cast<int>(pair.size()) != q) return reject("expected a q x q table of pair representatives");
    for (int i = 0; i < q; ++i) {
      if (static_cast<int>(pair[i].size()) != q) return reject("pair representative row has the wrong size");
      for (int j = 0; j < q; ++j)
        if (i != j && !inst.family.contains(i, pair[i][j]))
          return reject("representative t" + std::to_string(i + 1) + "^" + std::to_string(j + 1) +
                        " is not in " + set_label(i));
    }
  } else if (!pair.empty()) {
    return reject("this variant takes no pair representatives");
  }

  auto node_vs_node = [&](int i, int j, NodeId u, NodeId v) -> bool {
    rep.certificate.push_back({i, j, u, v, comp.block[u], comp.block[v]});
    return comp.block[u] != comp.block[v];
  };
  auto node_vs_set = [&](int i, int j, NodeId u) -> bool {
    rep.certificate.push_back({i, j, u, -1, comp.block[u], -1});
    return !touch[j][comp.block[u]];
  };
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      if (i == j) continue;
      const std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
      switch (var) {
        case Variant::AllToAll:
          if (i < j) {
            rep.certificate.push_back({i, j, -1, -1, -1, -1});
            for (int c = 0; c < comp.num_blocks; ++c)
              if (touch[i][c] && touch[j][c])
                return reject("a component meets both " + set_label(i) + " and " + set_label(j));
          }
          break;
        case Variant::SingleToAll:
          if (!node_vs_set(i, j, single[i]))
            return reject("t" + std::to_string(i + 1) + " shares a component with " + set_label(j));
          break;
        case Variant::SingleToSingle:
          if (i < j && !node_vs_node(i, j, single[i], single[j]))
            return reject("t" + std::to_string(i + 1) + " and t" + std::to_string(j + 1) +
                          " share a component");
          break;
        case Variant::FixedToSingle:
          break;
        case Variant::SomeToSingle:
          if (!node_vs_node(i, j, pair[i][j], single[j]))
            return reject("demand (" + ij + "): t_i^j and t_j share a component");
          break;
        case Variant::SomeToSome:
          if (i < j && !node_vs_node(i, j, pair[i][j], pair[j][i]))
            return reject("demand (" + ij + "): t_i^j and t_j^i share a component");
          break;
        case Variant::SomeToAll:
          if (!node_vs_set(i, j, pair[i][j]))
            return reject("demand (" + ij + "): t_i^j shares a component with " + set_label(j));
          break;
      }
    }
    if (var == Variant::FixedToSingle && !node_vs_node(i, -1, single[i], *inst.fixed_node))
      return reject("t" + std::to_string(i + 1) + " shares a component with the fixed node");
  }
  rep.ok = true;
  return rep;
}

CutSolution finish_solution(const VariantInstance& inst, Cut cut, RepresentativeChoice reps) {
  CutSolution sol;
  sol.cut = make_cut(inst.graph, std::move(cut));
  sol.reps = std::move(reps);
  sol.weight = cut_weight(inst.graph, sol.cut);
  sol.components = components(inst.graph, sol.cut);
  ValidationReport report = validate_solution(inst, sol);
  if (!report.ok) throw Error("solver produced an invalid solution: " + report.reason);
  sol.certificate = std::move(report.certificate);
  return sol;
}

std::optional<RepresentativeChoice> find_representatives(const VariantInstance& inst,
                                                         const Partition& comp) {
  const int q = inst.q();
  const auto touch = set_components(inst, comp);
  RepresentativeChoice reps;
  auto block = [&](NodeId v) { return comp.block[v]; };

  switch (inst.variant) {
    case Variant::AllToAll:
      for (int c = 0; c < comp.num_blocks; ++c) {
        int seen = 0;
        for (int i = 0; i < q; ++i) seen += touch[i][c];
        if (seen > 1) return std::nullopt;
      }
      return reps;

    case Variant::SingleToAll:
      reps.single.assign(q, -1);
      for (int i = 0; i < q; ++i) {
        reps.single[i] = first_member(inst, i, [&](NodeId v) {
          for (int j = 0; j < q; ++j)
            if (j != i && touch[j][block(v)]) return false;
          return true;
        });
        if (reps.single[i] < 0) return std::nullopt;
      }
      return reps;

    case Variant::SingleToSingle: {
      const SetMatching m = match_sets(inst, comp);
      reps.single.assign(q, -1);
      for (int i = 0; i < q; ++i) {
        if (m.match_set[i] < 0) return std::nullopt;
        reps.single[i] = first_member(inst, i, [&](NodeId v) { return block(v) == m.match_set[i]; });
      }
      return reps;
    }

    case Variant::FixedToSingle: {
      const int cs = block(*inst.fixed_node);
      reps.single.assign(q, -1);
      for (int i = 0; i < q; ++i) {
        reps.single[i] = first_member(inst, i, [&](NodeId v) { return block(v) != cs; });
        if (reps.single[i] < 0) return std::nullopt;
      }
      return reps;
    }

    case Variant::SomeToSingle: {
      // t_j works iff no other set lies entirely inside its component.
      auto inside = [&](int i, int c) {
        for (NodeId x : inst.family.sets[i])
          if (block(x) != c) return false;
        return true;
      };
      reps.single.assign(q, -1);
      reps.pair = empty_pairs(q);
      for (int j = 0; j < q; ++j) {
        reps.single[j] = first_member(inst, j, [&](NodeId v) {
          for (int i = 0; i < q; ++i)
            if (i != j && inside(i, block(v))) return false;
          return true;
        });
        if (reps.single[j] < 0) return std::nullopt;
      }
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          if (i != j)
            reps.pair[i][j] =
                first_member(inst, i, [&](NodeId x) { return block(x) != block(reps.single[j]); });
      return reps;
    }

    case Variant::SomeToSome:
      reps.pair = empty_pairs(q);
      for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
          bool found = false;
          for (NodeId x : inst.family.sets[i]) {
            for (NodeId y : inst.family.sets[j])
              if (block(x) != block(y)) {
                reps.pair[i][j] = x;
                reps.pair[j][i] = y;
                found = true;
                break;
              }
            if (found) break;
          }
          if (!found) return std::nullopt;
        }
      return reps;

    case Variant::SomeToAll:
      reps.pair = empty_pairs(q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          if (i == j) continue;
          reps.pair[i][j] = first_member(inst, i, [&](NodeId x) { return !touch[j][block(x)]; });
          if (reps.pair[i][j] < 0) return std::nullopt;
        }
      return reps;
  }
  return std::nullopt;
}

}  // namespace repcut
