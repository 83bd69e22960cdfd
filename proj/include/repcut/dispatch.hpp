#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "repcut/oracle.hpp"
#include "repcut/variants.hpp"

namespace repcut {

enum class Algorithm {
  Auto,
  Oracle,         // partition enumeration
  OracleByEdges,  // edge-subset enumeration
  FixedQ,         // representative enumeration for constant q
  Multiway,       // all-to-all: contract the sets, multiway cut
  IsolatingUnion, // single-to-all: union of all isolating cuts
  IsolatingDropLargest,
  GomoryHu,       // single-to-single on general graphs
  Tree,           // single-to-single on trees, exact
};

const char* algorithm_name(Algorithm a);
/// ParseError on unknown names.
Algorithm parse_algorithm(std::string_view name);
/// Concrete algorithms that accept the variant, oracles first.
std::vector<Algorithm> algorithms_for(Variant v);

bool is_tree(const Graph& g);

/// What Auto runs: the exact tree greedy on trees, fixed-q enumeration while
/// q is within its cap, else the polynomial approximation when one exists.
Algorithm default_algorithm(const VariantInstance& inst, const SolveOptions& opt);

/// PreconditionError when the algorithm does not apply to the variant.
CutSolution run_algorithm(const VariantInstance& inst, Algorithm a, const SolveOptions& opt,
                          const OracleLimits& limits = {});

/// Proven worst-case ratio against the optimum, or 0 when none is claimed.
double proven_ratio(Variant v, Algorithm a, int q);

/// Human-readable report: weight, LP value, representatives, cut edges and the
/// validation verdict. Deterministic; no timing.
std::string format_report(const VariantInstance& inst, Algorithm a, const CutSolution& sol);
std::string format_infeasibility(const VariantInstance& inst, const FeasibilityReport& r);

}  // namespace repcut
