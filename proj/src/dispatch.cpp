#include "repcut/dispatch.hpp"

#include <algorithm>
#include <sstream>

#include "repcut/error.hpp"
#include "repcut/instance_io.hpp"

namespace repcut {
namespace {

struct NamedAlgorithm {
  Algorithm a;
  const char* name;
};

constexpr NamedAlgorithm kNames[] = {
    {Algorithm::Auto, "auto"},
    {Algorithm::Oracle, "oracle"},
    {Algorithm::OracleByEdges, "oracle-edges"},
    {Algorithm::FixedQ, "fixed-q"},
    {Algorithm::Multiway, "multiway"},
    {Algorithm::IsolatingUnion, "isolating-union"},
    {Algorithm::IsolatingDropLargest, "isolating-drop-largest"},
    {Algorithm::GomoryHu, "gomory-hu"},
    {Algorithm::Tree, "tree"},
};

int cap_for(Variant v, const SolveOptions& o) {
  switch (v) {
    case Variant::AllToAll: return 1 << 20;
    case Variant::SingleToAll: return o.cap_single_to_all;
    case Variant::SingleToSingle: return o.cap_single_to_single;
    case Variant::FixedToSingle: return o.cap_fixed_to_single;
    case Variant::SomeToSingle: return o.cap_some_to_single;
    case Variant::SomeToSome: return o.cap_some_to_some;
    case Variant::SomeToAll: return o.cap_some_to_all;
  }
  return 0;
}

CutSolution fixed_q(const VariantInstance& inst, const SolveOptions& opt) {
  switch (inst.variant) {
    case Variant::AllToAll: return solve_all_to_all(inst, opt);
    case Variant::SingleToAll: return solve_single_to_all_fixed_q(inst, opt);
    case Variant::SingleToSingle: return solve_single_to_single_fixed_q(inst, opt);
    case Variant::FixedToSingle: return solve_fixed_to_single_fixed_q(inst, opt);
    case Variant::SomeToSingle: return solve_some_to_single_fixed_q(inst, opt);
    case Variant::SomeToSome: return solve_some_to_some_fixed_q(inst, opt);
    case Variant::SomeToAll: return solve_some_to_all_fixed_q(inst, opt);
  }
  throw Error("unhandled variant");
}

CutSolution from_oracle(const VariantInstance& inst, const OracleResult& r) {
  if (!r.feasible) throw InfeasibleError(check_feasibility(inst).reason);
  return r.solution;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  for (const auto& n : kNames)
    if (n.a == a) return n.name;
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.a;
  throw ParseError("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> algorithms_for(Variant v) {
  std::vector<Algorithm> out{Algorithm::Oracle, Algorithm::OracleByEdges, Algorithm::FixedQ};
  switch (v) {
    case Variant::AllToAll: out.push_back(Algorithm::Multiway); break;
    case Variant::SingleToAll:
      out.push_back(Algorithm::IsolatingUnion);
      out.push_back(Algorithm::IsolatingDropLargest);
      break;
    case Variant::SingleToSingle:
      out.push_back(Algorithm::GomoryHu);
      out.push_back(Algorithm::Tree);
      break;
    default: break;
  }
  return out;
}

bool is_tree(const Graph& g) {
  const int n = g.num_nodes();
  return n > 0 && g.num_edges() == n - 1 && components(g, {}).num_blocks == 1;
}

Algorithm default_algorithm(const VariantInstance& inst, const SolveOptions& opt) {
  switch (inst.variant) {
    case Variant::AllToAll: return Algorithm::Multiway;
    case Variant::SingleToAll:
      return inst.q() <= opt.cap_single_to_all ? Algorithm::FixedQ : Algorithm::IsolatingUnion;
    case Variant::SingleToSingle:
      if (is_tree(inst.graph)) return Algorithm::Tree;
      return inst.q() <= opt.cap_single_to_single ? Algorithm::FixedQ : Algorithm::GomoryHu;
    default: return Algorithm::FixedQ;
  }
}

CutSolution run_algorithm(const VariantInstance& inst, Algorithm a, const SolveOptions& opt,
                          const OracleLimits& limits) {
  if (a == Algorithm::Auto) a = default_algorithm(inst, opt);
  const auto ok = algorithms_for(inst.variant);
  if (std::find(ok.begin(), ok.end(), a) == ok.end())
    throw PreconditionError(std::string("algorithm '") + algorithm_name(a) + "' does not apply to " +
                            variant_name(inst.variant));
  switch (a) {
    case Algorithm::Oracle: return from_oracle(inst, exact_solve(inst, limits));
    case Algorithm::OracleByEdges: return from_oracle(inst, exact_solve_by_edges(inst, limits));
    case Algorithm::FixedQ:
      if (inst.q() > cap_for(inst.variant, opt)) {
        const char* hint = inst.variant == Variant::SingleToAll    ? "; try isolating-union"
                           : inst.variant == Variant::SingleToSingle ? "; try gomory-hu"
                           : inst.variant == Variant::SomeToSome
                               ? "; reduce to steiner multicut with 'reduce --target steiner'"
                               : "";
        throw CapExceededError(std::string(variant_name(inst.variant)) + " enumeration refused: q = " +
                               std::to_string(inst.q()) + " exceeds the cap " +
                               std::to_string(cap_for(inst.variant, opt)) + hint);
      }
      return fixed_q(inst, opt);
    case Algorithm::Multiway: return solve_all_to_all(inst, opt);
    case Algorithm::IsolatingUnion: return solve_single_to_all_2approx(inst, IsolatingMode::KeepAll);
    case Algorithm::IsolatingDropLargest:
      return solve_single_to_all_2approx(inst, IsolatingMode::DropLargest);
    case Algorithm::GomoryHu: return solve_single_to_single_gh(inst);
    case Algorithm::Tree: return solve_single_to_single_tree(inst);
    case Algorithm::Auto: break;
  }
  throw Error("unhandled algorithm");
}

double proven_ratio(Variant v, Algorithm a, int q) {
  switch (a) {
    case Algorithm::Oracle:
    case Algorithm::OracleByEdges:
    case Algorithm::Tree: return 1.0;
    case Algorithm::GomoryHu: return q >= 2 ? 2.0 - 2.0 / q : 1.0;
    case Algorithm::IsolatingUnion:
    case Algorithm::IsolatingDropLargest: return 2.0;
    case Algorithm::Multiway: return 2.0;
    case Algorithm::FixedQ:
      // Exact for fixed-to-single; the others inherit the rounding's factor 2
      // per representative guess.
      return v == Variant::FixedToSingle ? 1.0 : 2.0;
    case Algorithm::Auto: break;
  }
  return 0.0;
}

std::string format_report(const VariantInstance& inst, Algorithm a, const CutSolution& sol) {
  const Graph& g = inst.graph;
  std::ostringstream out;
  out << "variant: " << variant_name(inst.variant) << '\n'
      << "algorithm: " << algorithm_name(a) << '\n'
      << "q: " << inst.q() << '\n'
      << "weight: " << format_weight(sol.weight) << '\n';
  if (sol.lp_value) out << "lp-value: " << format_weight(*sol.lp_value) << '\n';
  out << "representatives:\n";
  for (std::size_t i = 0; i < sol.reps.single.size(); ++i)
    out << "  t_" << i + 1 << " = " << (sol.reps.single[i] >= 0 ? g.name(sol.reps.single[i]) : "-") << '\n';
  for (std::size_t i = 0; i < sol.reps.pair.size(); ++i)
    for (std::size_t j = 0; j < sol.reps.pair[i].size(); ++j)
      if (i != j)
        out << "  t_" << i + 1 << "^" << j + 1 << " = "
            << (sol.reps.pair[i][j] >= 0 ? g.name(sol.reps.pair[i][j]) : "-") << '\n';
  out << "cut: " << sol.cut.size() << " edge(s)\n";
  for (EdgeId e : sol.cut) {
    const Edge& x = g.edge(e);
    out << "  " << e + 1 << ": " << g.name(x.u) << ' ' << g.name(x.v) << ' ' << format_weight(x.w) << '\n';
  }
  out << "components: " << sol.components.num_blocks << '\n';
  const ValidationReport v = validate_solution(inst, sol);
  if (v.ok)
    out << "validation: accepted (" << v.certificate.size() << " demand(s) checked)\n";
  else
    out << "validation: rejected: " << v.reason << '\n';
  return out.str();
}

std::string format_infeasibility(const VariantInstance& inst, const FeasibilityReport& r) {
  std::ostringstream out;
  out << "variant: " << variant_name(inst.variant) << '\n' << "infeasible: " << r.reason << '\n';
  out << "violating sets:";
  for (int i : r.violating) out << ' ' << i + 1;
  out << '\n';
  return out.str();
}

}  // namespace repcut
