// repcut command-line front end.
//
// Exit codes: 0 success / solution accepted, 1 solution rejected,
// 2 parse or usage error, 3 infeasible instance, 4 refused by a cap or
// oracle limit, 5 any other runtime failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "repcut/dispatch.hpp"
#include "repcut/error.hpp"
#include "repcut/instance_io.hpp"
#include "repcut/lifted_cut.hpp"
#include "repcut/lp.hpp"
#include "repcut/parallel.hpp"
#include "repcut/reductions.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace repcut;

namespace {

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kInfeasible = 3, kRefused = 4, kRuntime = 5 };

struct Common {
  int threads = 0;
  std::uint64_t seed = 0;
  int samples = 64;
  std::string params_file;
};

RoundingParams load_params(const std::string& path) {
  RoundingParams p;
  if (path.empty()) return p;
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError("params file: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ParseError("params file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "b") p.b = value.get<double>();
      else if (key == "p1") p.p1 = value.get<double>();
      else if (key == "p2") p.p2 = value.get<double>();
      else if (key == "p3") p.p3 = value.get<double>();
      else if (key == "p4") p.p4 = value.get<double>();
      else if (key == "phi_breaks") p.phi.breaks = value.get<std::vector<double>>();
      else if (key == "phi_values") p.phi.values = value.get<std::vector<double>>();
      else throw ParseError("params file: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError("params file: " + std::string(e.what()));
  }
  try {
    p.validate();
  } catch (const Error& e) {
    throw ParseError("params file: " + std::string(e.what()));
  }
  return p;
}

SolveOptions options_from(const Common& c) {
  if (c.threads > 0) set_thread_limit(c.threads);
  SolveOptions o;
  o.params = load_params(c.params_file);
  o.params.seed = c.seed;
  o.samples = c.samples;
  return o;
}

InstanceDocument load_instance(const std::string& path) { return parse_instance(read_text_file(path)); }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

// ---- solve / oracle ------------------------------------------------------

int cmd_solve(const std::string& path, const std::string& algorithm, const std::string& out,
              const Common& c) {
  const VariantInstance inst = load_instance(path).instance;
  const SolveOptions opt = options_from(c);
  Algorithm a = parse_algorithm(algorithm);
  if (a == Algorithm::Auto) a = default_algorithm(inst, opt);
  const FeasibilityReport feas = check_feasibility(inst);
  if (!feas.feasible) {
    std::cout << format_infeasibility(inst, feas);
    return kInfeasible;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const CutSolution sol = run_algorithm(inst, a, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string report = format_report(inst, a, sol);
  std::cout << report;
  std::cerr << "wall-time: " << secs << " s\n";
  if (!out.empty()) write_text_file(out, emit_solution(inst, sol));
  return validate_solution(inst, sol).ok ? kOk : kRejected;
}

// ---- validate ------------------------------------------------------------

int cmd_validate(const std::string& inst_path, const std::string& sol_path) {
  const VariantInstance inst = load_instance(inst_path).instance;
  const CutSolution sol = parse_solution(read_text_file(sol_path), inst);
  const ValidationReport r = validate_solution(inst, sol);
  if (r.ok) {
    std::cout << "accepted: weight " << format_weight(sol.weight) << ", " << r.certificate.size()
              << " demand(s) checked\n";
    return kOk;
  }
  std::cout << "rejected: " << r.reason << '\n';
  return kRejected;
}

// ---- reduce --------------------------------------------------------------

json node_names(const Graph& g, const std::vector<NodeId>& ids) {
  json a = json::array();
  for (NodeId v : ids) a.push_back(g.name(v));
  return a;
}

int cmd_reduce(const std::string& path, const std::string& target, const std::string& out,
               std::string map_path) {
  static const std::map<std::string, DocumentKind> kSource = {
      {"fixed-to-single", DocumentKind::HittingSet},
      {"some-to-single", DocumentKind::Instance},
      {"some-to-all", DocumentKind::Instance},
      {"some-to-some", DocumentKind::Steiner},
      {"steiner", DocumentKind::Instance},
  };
  const auto it = kSource.find(target);
  if (it == kSource.end())
    throw ParseError("unknown reduction target '" + target +
                     "' (fixed-to-single, some-to-single, some-to-all, some-to-some, steiner)");
  const std::string text = read_text_file(path);
  if (detect_document(text) != it->second) throw ParseError("input kind does not match target '" + target + "'");
  if (map_path.empty() && !out.empty() && out != "-") map_path = out + ".map.json";

  json map;
  map["target"] = target;
  std::string emitted;
  auto require_variant = [](const VariantInstance& inst, Variant v) {
    if (inst.variant != v)
      throw ParseError(std::string("reduction to this target needs a ") + variant_name(v) + " instance");
  };
  if (target == "fixed-to-single") {
    const auto r = hitting_set_to_fixed_to_single(parse_hitting_set(text));
    map["source"] = "hitting-set";
    map["center"] = r.target.graph.name(*r.target.fixed_node);
    json edges = json::object();
    for (std::size_t k = 0; k < r.element_edge.size(); ++k)
      edges[r.source.ground[k]] = r.element_edge[k] + 1;
    map["element_edge"] = edges;
    map["solution_map"] = "hitting set H <-> cut {(center, e) : e in H}; weight = |H|";
    emitted = emit_instance(r.target);
  } else if (target == "some-to-single") {
    const VariantInstance src = parse_instance(text).instance;
    require_variant(src, Variant::FixedToSingle);
    const auto r = fixed_to_single_to_some_to_single(src);
    map["source"] = "fixed-to-single";
    map["sets"] = "T'_i = T_i + {s} for i <= q, T'_{q+1} = {s}";
    map["solution_map"] = "forward: t_i kept, t_{q+1} = s, t_i^{q+1} = t_i, other pair reps = s; backward: t_j kept";
    emitted = emit_instance(r.target);
  } else if (target == "some-to-all") {
    const VariantInstance src = parse_instance(text).instance;
    require_variant(src, Variant::FixedToSingle);
    const auto r = fixed_to_single_to_some_to_all(src);
    map["source"] = "fixed-to-single";
    map["added_nodes"] = node_names(r.target.graph, r.extra);
    map["sets"] = "T'_i = T_i + {s_i} for i <= q, T'_{q+1} = {s, s_1, ..., s_q}";
    map["solution_map"] =
        "forward: t_i^j = s_i, t_i^{q+1} = t_i, t_{q+1}^j = s_{(j mod q)+1}; backward: t_j = t_j^{q+1}";
    emitted = emit_instance(r.target);
  } else if (target == "some-to-some") {
    const auto r = steiner_to_some_to_some(parse_steiner(text));
    map["source"] = "steiner";
    json dup = json::array();
    for (int k = 0; k < static_cast<int>(r.source.groups.size()); ++k) dup.push_back({2 * k + 1, 2 * k + 2});
    map["group_sets"] = dup;
    map["solution_map"] = "same cut both ways";
    emitted = emit_instance(r.target);
  } else {
    const VariantInstance src = parse_instance(text).instance;
    require_variant(src, Variant::SomeToSome);
    const auto r = some_to_some_to_steiner(src);
    map["source"] = "some-to-some";
    json pairs = json::array();
    for (auto [i, j] : r.pairs) pairs.push_back({i + 1, j + 1});
    map["group_pairs"] = pairs;
    map["solution_map"] = "same cut both ways; representatives recovered per group from two split witnesses";
    emitted = emit_steiner(r.target);
  }
  emit(out, emitted);
  if (!map_path.empty()) write_text_file(map_path, map.dump(2) + "\n");
  return kOk;
}

// ---- audit ---------------------------------------------------------------

struct AuditRow {
  int instances = 0;
  double worst = 0.0;
  std::string worst_file;
  double bound = 0.0;
};

double ratio(double w, double opt) {
  if (opt == 0.0) return w == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return w / opt;
}

int cmd_audit(const std::string& dir, const Common& c) {
  const SolveOptions opt = options_from(c);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::map<std::pair<std::string, std::string>, AuditRow> table;
  std::vector<std::string> infeasible, skipped;
  int failures = 0;
  std::cout << "file | variant | algorithm | weight | oracle | ratio\n";
  for (const fs::path& f : files) {
    const std::string name = f.filename().string();
    VariantInstance inst;
    try {
      const std::string text = read_text_file(f.string());
      const DocumentKind kind = detect_document(text);
      if (kind == DocumentKind::Instance)
        inst = parse_instance(text).instance;
      else if (kind == DocumentKind::HittingSet)
        inst = hitting_set_to_fixed_to_single(parse_hitting_set(text)).target;
      else {
        skipped.push_back(name + " (not a variant instance)");
        continue;
      }
    } catch (const ParseError& e) {
      skipped.push_back(name + " (" + e.what() + ")");
      continue;
    }
    const FeasibilityReport feas = check_feasibility(inst);
    if (!feas.feasible) {
      infeasible.push_back(name + ": " + feas.reason);
      continue;
    }
    OracleResult exact;
    try {
      exact = exact_solve(inst);
    } catch (const BudgetError&) {
      skipped.push_back(name + " (too large for the oracle)");
      continue;
    }
    const double opt_w = exact.solution.weight;
    for (Algorithm a : algorithms_for(inst.variant)) {
      if (a == Algorithm::Oracle || a == Algorithm::OracleByEdges) continue;
      if (a == Algorithm::Tree && !is_tree(inst.graph)) continue;
      CutSolution sol;
      try {
        sol = run_algorithm(inst, a, opt);
      } catch (const CapExceededError&) {
        continue;
      }
      const double r = ratio(sol.weight, opt_w);
      std::cout << name << " | " << variant_name(inst.variant) << " | " << algorithm_name(a) << " | "
                << format_weight(sol.weight) << " | " << format_weight(opt_w) << " | " << r << '\n';
      AuditRow& row = table[{variant_name(inst.variant), algorithm_name(a)}];
      ++row.instances;
      row.bound = std::max(row.bound, proven_ratio(inst.variant, a, inst.q()));
      if (r > row.worst) {
        row.worst = r;
        row.worst_file = name;
      }
      if (r > proven_ratio(inst.variant, a, inst.q()) + 1e-9 || !validate_solution(inst, sol).ok) ++failures;
    }
  }
  std::cout << "\nvariant | algorithm | instances | worst ratio | bound | worst instance\n";
  for (const auto& [key, row] : table)
    std::cout << key.first << " | " << key.second << " | " << row.instances << " | " << row.worst << " | "
              << row.bound << " | " << row.worst_file << '\n';
  if (!infeasible.empty()) {
    std::cout << "\ninfeasible instances:\n";
    for (const std::string& s : infeasible) std::cout << "  " << s << '\n';
  }
  if (!skipped.empty()) {
    std::cout << "\nskipped:\n";
    for (const std::string& s : skipped) std::cout << "  " << s << '\n';
  }
  std::cout << "\nbound violations: " << failures << '\n';
  return failures == 0 ? kOk : kRejected;
}

// ---- lp-dump -------------------------------------------------------------

int cmd_lp_dump(const std::string& path, const std::string& out) {
  const VariantInstance inst = load_instance(path).instance;
  if (inst.variant != Variant::AllToAll)
    throw ParseError("lp-dump writes the multiway relaxation of all-to-all instances");
  require_feasible(inst);
  const Contraction con = contract(inst.graph, inst.family.sets);
  std::vector<NodeId> terminals;
  for (const NodeSet& s : inst.family.sets) terminals.push_back(con.node_map[s.front()]);
  const LiftLp lift = build_lift_lp(make_multiway_instance(con.graph, terminals));
  std::ostringstream s;
  write_lp_format(lift.program, s);
  emit(out, s.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repcut: cut problems with candidate representatives"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "worker threads (default: REPCUT_THREADS or all cores)");
    sub->add_option("--seed", common.seed, "rounding seed")->capture_default_str();
    sub->add_option("--samples", common.samples, "rounding samples per guess")->capture_default_str();
    sub->add_option("--params-file", common.params_file, "JSON rounding parameters (b, p1..p4, phi_breaks, phi_values)");
  };

  std::string instance, solution, algorithm = "auto", out, target, map_path, corpus;
  bool by_edges = false;

  CLI::App* solve = app.add_subcommand("solve", "solve an instance and print a validated report");
  solve->add_option("instance", instance)->required();
  solve->add_option("--algorithm", algorithm, "auto, oracle, oracle-edges, fixed-q, multiway, isolating-union, "
                                              "isolating-drop-largest, gomory-hu, tree")
      ->capture_default_str();
  solve->add_option("--out", out, "write the solution file here");
  add_common(solve);

  CLI::App* validate = app.add_subcommand("validate", "check a solution file against an instance");
  validate->add_option("instance", instance)->required();
  validate->add_option("solution", solution)->required();

  CLI::App* reduce = app.add_subcommand("reduce", "transform an instance and write a mapping sidecar");
  reduce->add_option("input", instance)->required();
  reduce->add_option("--target", target, "fixed-to-single, some-to-single, some-to-all, some-to-some, steiner")
      ->required();
  reduce->add_option("--out", out, "target instance file (default stdout)");
  reduce->add_option("--map", map_path, "mapping sidecar (default <out>.map.json)");

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  oracle->add_option("instance", instance)->required();
  oracle->add_flag("--by-edges", by_edges, "enumerate edge subsets instead of partitions");
  oracle->add_option("--out", out, "write the solution file here");
  add_common(oracle);

  CLI::App* audit = app.add_subcommand("audit", "compare every applicable solver with the oracle");
  audit->add_option("corpus", corpus)->required();
  add_common(audit);

  CLI::App* lp_dump = app.add_subcommand("lp-dump", "write the relaxation in LP file format");
  lp_dump->add_option("instance", instance)->required();
  lp_dump->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(instance, algorithm, out, common);
    if (*validate) return cmd_validate(instance, solution);
    if (*reduce) return cmd_reduce(instance, target, out, map_path);
    if (*oracle)
      return cmd_solve(instance, by_edges ? "oracle-edges" : "oracle", out, common);
    if (*audit) return cmd_audit(corpus, common);
    if (*lp_dump) return cmd_lp_dump(instance, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const CapExceededError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const BudgetError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
