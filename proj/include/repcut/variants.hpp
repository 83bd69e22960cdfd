#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repcut/graph.hpp"
#include "repcut/lifted_cut.hpp"

namespace repcut {

// Sets are indexed from 0 in code and from 1 in files and reports.
enum class Variant {
  AllToAll,       // T_i - T_j
  SingleToAll,    // t_i - T_j
  SingleToSingle, // t_i - t_j
  FixedToSingle,  // s - t_j
  SomeToSingle,   // t_i^j - t_j
  SomeToSome,     // t_i^j - t_j^i
  SomeToAll,      // t_i^j - T_j
};

const char* variant_name(Variant v);
/// Accepts the names produced by variant_name; ParseError otherwise.
Variant parse_variant(std::string_view name);
bool uses_single_reps(Variant v);
bool uses_pair_reps(Variant v);

struct CandidateFamily {
  std::vector<NodeSet> sets;  // each sorted and unique

  int size() const { return static_cast<int>(sets.size()); }
  bool contains(int i, NodeId v) const;
};

struct VariantInstance {
  Variant variant = Variant::AllToAll;
  Graph graph;
  CandidateFamily family;
  std::optional<NodeId> fixed_node;  // FixedToSingle only

  int q() const { return family.size(); }
};

/// Normalizes the sets and checks them against the graph: q >= 1, sets
/// nonempty, members exist, fixed node present exactly for FixedToSingle.
VariantInstance make_instance(Variant variant, Graph g, std::vector<NodeSet> sets,
                              std::optional<NodeId> fixed_node = std::nullopt);
void check_instance(const VariantInstance& inst);

struct RepresentativeChoice {
  std::vector<NodeId> single;             // t_i, size q when used
  std::vector<std::vector<NodeId>> pair;  // pair[i][j] = t_i^j, -1 on the diagonal

  bool operator==(const RepresentativeChoice&) const = default;
};

/// One checked demand: `u` (component cu) against node `v` (component cv) or,
/// when v < 0, against every node of set `j`.
struct DemandCheck {
  int i = -1, j = -1;
  NodeId u = -1, v = -1;
  int cu = -1, cv = -1;
};

struct CutSolution {
  Cut cut;
  RepresentativeChoice reps;
  double weight = 0.0;
  Partition components;
  std::vector<DemandCheck> certificate;
  std::optional<double> lp_value;
};

struct ValidationReport {
  bool ok = false;
  std::string reason;
  std::vector<DemandCheck> certificate;
};

ValidationReport validate_solution(const VariantInstance& inst, const CutSolution& sol);

/// Fills weight, components and certificate from cut and reps, then
/// validates; a rejected solution is an Error (a solver bug).
CutSolution finish_solution(const VariantInstance& inst, Cut cut, RepresentativeChoice reps);

struct FeasibilityReport {
  bool feasible = false;
  RepresentativeChoice witness;        // when feasible: valid with cut = E
  std::vector<int> violating;          // when infeasible: offending set indices
  std::string reason;
};

FeasibilityReport check_feasibility(const VariantInstance& inst);
/// InfeasibleError carrying the report's reason when infeasible.
void require_feasible(const VariantInstance& inst);

/// Representatives valid for the components `comp` of some cut, or nullopt.
/// Single reps prefer the smallest node, pair reps the smallest valid node.
std::optional<RepresentativeChoice> find_representatives(const VariantInstance& inst,
                                                         const Partition& comp);

struct SolveOptions {
  RoundingParams params;
  int samples = 64;
  int cap_single_to_all = 4;
  int cap_single_to_single = 4;
  int cap_fixed_to_single = 6;
  int cap_some_to_single = 3;
  int cap_some_to_some = 3;
  int cap_some_to_all = 3;
  int cap_multicut_terminals = 12;
};

enum class IsolatingMode { KeepAll, DropLargest };

CutSolution solve_all_to_all(const VariantInstance& inst, const SolveOptions& opt);
/// Union of per-set cheapest isolating cuts. DropLargest omits the heaviest
/// one and falls back to KeepAll when the result is infeasible.
CutSolution solve_single_to_all_2approx(const VariantInstance& inst,
                                        IsolatingMode mode = IsolatingMode::KeepAll);
CutSolution solve_single_to_all_fixed_q(const VariantInstance& inst, const SolveOptions& opt);

/// Gammoid test on a tree: the cut is good iff the child endpoints of its
/// edges plus the root (node 0) are linked to distinct candidate sets by
/// node-disjoint paths. On success `reps` (if given) gets one representative
/// per linked set, -1 for the others.
bool is_good_cut(const Graph& tree, const Cut& c, const CandidateFamily& fam,
                 std::vector<NodeId>* reps = nullptr);
/// Matroid greedy for SingleToSingle on a tree: exact.
CutSolution solve_single_to_single_tree(const VariantInstance& inst);
/// Greedy on the Gomory-Hu tree, union of the fundamental cuts.
CutSolution solve_single_to_single_gh(const VariantInstance& inst);
CutSolution solve_single_to_single_fixed_q(const VariantInstance& inst, const SolveOptions& opt);
/// Exact: cheapest isolating cut of s over representative tuples.
CutSolution solve_fixed_to_single_fixed_q(const VariantInstance& inst, const SolveOptions& opt);

using DemandPair = std::pair<NodeId, NodeId>;

struct MulticutResult {
  Cut cut;
  double weight = 0.0;
  std::vector<NodeSet> classes;  // winning partition of the terminals
};

/// Enumerates the terminal partitions separating every demand pair, keeps
/// only maximal ones (no two classes mergeable), contracts the classes and
/// solves a multiway cut per partition.
MulticutResult solve_multicut_fixed_terminals(const Graph& g, const std::vector<DemandPair>& demands,
                                              const SolveOptions& opt);

CutSolution solve_some_to_single_fixed_q(const VariantInstance& inst, const SolveOptions& opt);
CutSolution solve_some_to_some_fixed_q(const VariantInstance& inst, const SolveOptions& opt);
CutSolution solve_some_to_all_fixed_q(const VariantInstance& inst, const SolveOptions& opt);

/// Lifted-cut lists for one SomeToAll guess: classes of representative
/// nodes become labels 0..k-1, label k is the extra one. Members of T_j lose
/// every label whose class holds some t_i^j. Returns nullopt if a class
/// already contains a node it must avoid.
std::optional<LabelMask> some_to_all_lists(const VariantInstance& inst,
                                           const std::vector<std::vector<NodeId>>& pair_reps,
                                           const std::vector<NodeSet>& classes);

}  // namespace repcut
