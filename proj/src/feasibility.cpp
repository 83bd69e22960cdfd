#include <algorithm>

#include "repcut/error.hpp"
#include "repcut/variants.hpp"

namespace repcut {
namespace {

std::string set_label(int i) { return "T" + std::to_string(i + 1); }

bool subset(const NodeSet& a, const NodeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const NodeSet& a, const NodeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    *i < *j ? ++i : ++j;
  }
  return false;
}

// Sets reachable by alternating paths from an unmatched set: a Hall violator
// (they are matched into fewer distinct nodes than their number).
std::vector<int> hall_violator(const CandidateFamily& fam, int n) {
  const int q = fam.size();
  std::vector<int> match_node(n, -1), match_set(q, -1);
  auto augment = [&](auto&& self, int i, std::vector<char>& seen) -> bool {
    for (NodeId v : fam.sets[i]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_node[v] < 0 || self(self, match_node[v], seen)) {
        match_node[v] = i;
        match_set[i] = v;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < q; ++i) {
    std::vector<char> seen(n, 0);
    augment(augment, i, seen);
  }
  const auto root = std::find(match_set.begin(), match_set.end(), -1);
  if (root == match_set.end()) return {};
  std::vector<char> in(q, 0), seen(n, 0);
  std::vector<int> stack{static_cast<int>(root - match_set.begin())};
  in[stack[0]] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (NodeId v : fam.sets[i]) {
      if (seen[v]) continue;
      seen[v] = 1;
      const int k = match_node[v];
      if (k >= 0 && !in[k]) {
        in[k] = 1;
        stack.push_back(k);
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < q; ++i)
    if (in[i]) out.push_back(i);
  return out;
}

}  // namespace

FeasibilityReport check_feasibility(const VariantInstance& inst) {
  check_instance(inst);
  const auto& sets = inst.family.sets;
  const int q = inst.q();
  FeasibilityReport rep;
  auto fail = [&](std::vector<int> idx, std::string why) {
    rep.feasible = false;
    rep.violating = std::move(idx);
    rep.reason = std::move(why);
    return rep;
  };

  switch (inst.variant) {
    case Variant::AllToAll:
      for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
          if (intersects(sets[i], sets[j]))
            return fail({i, j}, set_label(i) + " and " + set_label(j) + " intersect");
      break;
    case Variant::SingleToAll:
      for (int i = 0; i < q; ++i) {
        NodeSet others;
        for (int j = 0; j < q; ++j)
          if (j != i) others.insert(others.end(), sets[j].begin(), sets[j].end());
        std::sort(others.begin(), others.end());
        if (subset(sets[i], others))
          return fail({i}, set_label(i) + " is covered by the other sets");
      }
      break;
    case Variant::SingleToSingle:
      if (auto bad = hall_violator(inst.family, inst.graph.num_nodes()); !bad.empty()) {
        std::string names;
        for (int i : bad) names += (names.empty() ? "" : ",") + set_label(i);
        return fail(bad, "no transversal: sets {" + names + "} have too few distinct members");
      }
      break;
    case Variant::FixedToSingle:
      for (int i = 0; i < q; ++i)
        if (sets[i] == NodeSet{*inst.fixed_node})
          return fail({i}, set_label(i) + " consists of the fixed node only");
      break;
    case Variant::SomeToSingle:
      for (int j = 0; j < q; ++j) {
        std::vector<int> blockers;
        bool all_blocked = true;
        for (NodeId v : sets[j]) {
          int by = -1;
          for (int i = 0; i < q && by < 0; ++i)
            if (i != j && sets[i] == NodeSet{v}) by = i;
          if (by < 0) {
            all_blocked = false;
            break;
          }
          blockers.push_back(by);
        }
        if (all_blocked) {
          blockers.insert(blockers.begin(), j);
          return fail(blockers, "every member of " + set_label(j) + " is another set's singleton");
        }
      }
      break;
    case Variant::SomeToSome:
      for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
          if (sets[i].size() == 1 && sets[i] == sets[j])
            return fail({i, j}, set_label(i) + " and " + set_label(j) + " are the same singleton");
      break;
    case Variant::SomeToAll:
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          if (i != j && subset(sets[i], sets[j]))
            return fail({i, j}, set_label(i) + " is contained in " + set_label(j));
      break;
  }

  // Feasible: representatives for the all-singletons partition (cut = E).
  Partition discrete{std::vector<int>(inst.graph.num_nodes()), inst.graph.num_nodes()};
  for (int v = 0; v < inst.graph.num_nodes(); ++v) discrete.block[v] = v;
  auto witness = find_representatives(inst, discrete);
  if (!witness) throw Error("feasibility characterization and witness search disagree");
  rep.feasible = true;
  rep.witness = std::move(*witness);
  return rep;
}

void require_feasible(const VariantInstance& inst) {
  const FeasibilityReport rep = check_feasibility(inst);
  if (!rep.feasible) throw InfeasibleError(rep.reason);
}

}  // namespace repcut
