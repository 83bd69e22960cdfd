#pragma once

#include <functional>
#include <vector>

#include "repcut/graph.hpp"
#include "repcut/variants.hpp"

namespace repcut {

struct OracleLimits {
  int max_nodes = 9;
  int max_edges = 20;             // edge-subset oracle only
  int max_partition_blocks = 0;   // partitions with more blocks are skipped; 0 = no limit
  double time_budget_seconds = 120.0;
};

struct OracleResult {
  bool feasible = false;
  CutSolution solution;  // valid when feasible
  long long examined = 0;
};

struct ExactCut {
  bool feasible = false;
  Cut cut;
  double weight = 0.0;
};

/// Minimum-weight cut over all node partitions whose cut's components pass
/// `accept`; ties go to the first partition in restricted-growth order.
/// BudgetError past the node or time limits.
ExactCut exact_partition_search(const Graph& g, const std::function<bool(const Partition&)>& accept,
                                const OracleLimits& limits = {});

/// Exhaustive optimum of a variant instance by partition enumeration.
OracleResult exact_solve(const VariantInstance& inst, const OracleLimits& limits = {});
/// Independent second oracle: enumerates edge subsets and searches
/// representative tuples directly against the demand definitions.
OracleResult exact_solve_by_edges(const VariantInstance& inst, const OracleLimits& limits = {});

ExactCut exact_multiway_cut(const Graph& g, const std::vector<NodeId>& terminals,
                            const OracleLimits& limits = {});
ExactCut exact_multicut(const Graph& g, const std::vector<DemandPair>& demands,
                        const OracleLimits& limits = {});
/// Every group must meet at least two components.
ExactCut exact_steiner_multicut(const Graph& g, const std::vector<NodeSet>& groups,
                                const OracleLimits& limits = {});

/// Smallest set of element indices hitting every set (lowest bitmask among
/// the smallest); nullopt if some set is empty.
std::optional<std::vector<int>> exact_hitting_set(int ground_size,
                                                  const std::vector<std::vector<int>>& sets);

}  // namespace repcut
