#include "repcut/lifted_cut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "repcut/error.hpp"
#include "repcut/parallel.hpp"

namespace repcut {

LabelingInstance make_lifted_instance(Graph g, std::vector<NodeId> terminals,
                                      const std::vector<std::vector<int>>& lists) {
  LabelingInstance inst;
  const int n = g.num_nodes();
  const int labels = static_cast<int>(terminals.size()) + 1;
  inst.num_labels = labels;
  inst.allowed = LabelMask::Constant(n, labels, false);
  if (lists.empty()) {
    inst.allowed.setConstant(true);
    for (std::size_t k = 0; k < terminals.size(); ++k) {
      if (!g.has_node(terminals[k])) throw StructuralError("unknown terminal");
      inst.allowed.row(terminals[k]).setConstant(false);
      inst.allowed(terminals[k], static_cast<int>(k)) = true;
    }
  } else {
    if (static_cast<int>(lists.size()) != n)
      throw StructuralError("label lists do not cover every node");
    for (NodeId v = 0; v < n; ++v)
      for (int c : lists[v]) {
        if (c < 0 || c >= labels)
          throw StructuralError("label " + std::to_string(c) + " out of range at '" +
                                g.name(v) + "'");
        inst.allowed(v, c) = true;
      }
  }
  inst.graph = std::move(g);
  inst.terminals = std::move(terminals);
  inst.mode = LabelingMode::Lifted;
  validate_labeling_instance(inst);
  return inst;
}

LabelingInstance make_multiway_instance(Graph g, std::vector<NodeId> terminals) {
  LabelingInstance inst;
  const int n = g.num_nodes();
  const int k = static_cast<int>(terminals.size());
  inst.num_labels = k;
  inst.allowed = LabelMask::Constant(n, k, true);
  for (int i = 0; i < k; ++i) {
    if (!g.has_node(terminals[i])) throw StructuralError("unknown terminal");
    inst.allowed.row(terminals[i]).setConstant(false);
    inst.allowed(terminals[i], i) = true;
  }
  inst.graph = std::move(g);
  inst.terminals = std::move(terminals);
  inst.mode = LabelingMode::Ckr;
  validate_labeling_instance(inst);
  return inst;
}

void validate_labeling_instance(const LabelingInstance& inst) {
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  if (inst.num_labels < 1) throw ValidationError("labeling instance needs a label");
  if (inst.allowed.rows() != n || inst.allowed.cols() != inst.num_labels)
    throw StructuralError("label mask has the wrong shape");
  std::vector<int> terminal_label(n, -1);
  for (std::size_t k = 0; k < inst.terminals.size(); ++k) {
    const NodeId s = inst.terminals[k];
    if (!g.has_node(s)) throw StructuralError("unknown terminal");
    if (terminal_label[s] >= 0)
      throw PreconditionError("terminal '" + g.name(s) + "' listed twice");
    terminal_label[s] = static_cast<int>(k);
  }
  const int q = static_cast<int>(inst.terminals.size());
  switch (inst.mode) {
    case LabelingMode::Lifted:
      if (q > inst.num_labels - 1)
        throw ValidationError("lifted instance has more terminals than non-extra labels");
      break;
    case LabelingMode::Ckr:
      if (q != inst.num_labels)
        throw ValidationError("multiway instance needs one terminal per label");
      break;
    case LabelingMode::Uml:
      break;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!inst.allowed.row(v).any())
      throw ValidationError("node '" + g.name(v) + "' has an empty label list");
    if (inst.mode == LabelingMode::Uml) continue;
    const int k = terminal_label[v];
    if (k >= 0) {
      if (inst.allowed.row(v).count() != 1 || !inst.allowed(v, k))
        throw ValidationError("terminal '" + g.name(v) + "' must have label list {" +
                              std::to_string(k + 1) + "}");
    } else if (inst.mode == LabelingMode::Lifted && !inst.allowed(v, inst.extra_label())) {
      throw ValidationError("non-terminal '" + g.name(v) + "' must allow the extra label " +
                            std::to_string(inst.num_labels));
    } else if (inst.mode == LabelingMode::Ckr && !inst.allowed.row(v).all()) {
      throw ValidationError("non-terminal '" + g.name(v) + "' must allow every label");
    }
  }
}

LiftLp build_lift_lp(const LabelingInstance& inst) {
  validate_labeling_instance(inst);
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  const int labels = inst.num_labels;
  LiftLp out;
  LinearProgram& lp = out.program;
  out.x_index = Eigen::MatrixXi::Constant(n, labels, -1);
  for (NodeId v = 0; v < n; ++v) {
    std::vector<LinearTerm> simplex;
    for (int c = 0; c < labels; ++c) {
      const double hi = inst.allowed(v, c) ? 1.0 : 0.0;
      const int x = lp.add_variable(0.0, 0.0, hi,
                                    "x(" + std::to_string(v) + "," + std::to_string(c) + ")");
      out.x_index(v, c) = x;
      simplex.push_back({x, 1.0});
    }
    lp.add_constraint(std::move(simplex), Relation::Equal, 1.0, "simplex_" + std::to_string(v));
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    for (int c = 0; c < labels; ++c) {
      if (!inst.allowed(ed.u, c) && !inst.allowed(ed.v, c)) continue;
      const int xu = out.x_index(ed.u, c), xv = out.x_index(ed.v, c);
      const int y = lp.add_variable(ed.w, 0.0, LinearProgram::kInf,
                                    "y(" + std::to_string(e) + "," + std::to_string(c) + ")");
      const std::string tag = std::to_string(e) + "_" + std::to_string(c);
      lp.add_constraint({{y, 1.0}, {xu, -1.0}, {xv, 1.0}}, Relation::GreaterEqual, 0.0,
                        "abs_lo_" + tag);
      lp.add_constraint({{y, 1.0}, {xu, 1.0}, {xv, -1.0}}, Relation::GreaterEqual, 0.0,
                        "abs_hi_" + tag);
    }
  }
  return out;
}

SimplexEmbedding extract_embedding(const LpSolution& sol, const LiftLp& lift,
                                   const LabelingInstance& inst) {
  if (sol.status != LpStatus::Optimal)
    throw Error(sol.status == LpStatus::Infeasible ? "relaxation is infeasible"
                                                   : "relaxation is unbounded");
  const int n = inst.graph.num_nodes();
  const int labels = inst.num_labels;
  SimplexEmbedding emb;
  emb.points = Eigen::MatrixXd::Zero(n, labels);
  for (NodeId v = 0; v < n; ++v) {
    for (int c = 0; c < labels; ++c) {
      if (!inst.allowed(v, c)) continue;
      const double x = sol.values[lift.x_index(v, c)];
      if (x < -1e-7) throw Error("relaxation returned a negative coordinate");
      emb.points(v, c) = std::max(0.0, x);
    }
    const double total = emb.points.row(v).sum();
    if (!(total > 0.5)) throw Error("relaxation returned a point off the simplex");
    emb.points.row(v) /= total;
  }
  for (std::size_t k = 0; k < inst.terminals.size(); ++k) {
    emb.points.row(inst.terminals[k]).setZero();
    emb.points(inst.terminals[k], static_cast<int>(k)) = 1.0;
  }
  return emb;
}

LpRelaxation solve_relaxation(const LabelingInstance& inst) {
  const LiftLp lift = build_lift_lp(inst);
  const LpSolution sol = solve_lp(lift.program);
  LpRelaxation r;
  r.embedding = extract_embedding(sol, lift, inst);
  r.raw_value = sol.objective;
  r.cut_value = sol.objective / 2.0;
  return r;
}

double embedding_length(const Graph& g, const SimplexEmbedding& emb) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    total += e.w * (emb.points.row(e.u) - emb.points.row(e.v)).cwiseAbs().sum();
  return total;
}

namespace {
constexpr double kAlignTol = 1e-12;
}  // namespace

AxisAlignment axis_align(const Graph& g, const SimplexEmbedding& emb) {
  const int labels = static_cast<int>(emb.points.cols());
  if (emb.points.rows() != g.num_nodes())
    throw StructuralError("embedding does not match the graph");
  AxisAlignment out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) out.graph.add_node(g.name(v));
  std::vector<Eigen::RowVectorXd> rows;
  for (NodeId v = 0; v < g.num_nodes(); ++v) rows.push_back(emb.points.row(v));

  auto fresh_name = [&](EdgeId e, int k) {
    std::string name = "~" + std::to_string(e) + "." + std::to_string(k);
    while (out.graph.find(name)) name += "'";
    return name;
  };

  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const Eigen::RowVectorXd diff = rows[ed.v] - rows[ed.u];
    std::vector<int> up, down;
    for (int c = 0; c < labels; ++c) {
      if (diff[c] > kAlignTol) up.push_back(c);
      if (diff[c] < -kAlignTol) down.push_back(c);
    }
    if (up.size() <= 1 && down.size() <= 1) {
      out.graph.add_edge(ed.u, ed.v, ed.w);
      out.provenance.push_back(e);
      continue;
    }
    std::vector<double> need_up, need_down;
    for (int c : up) need_up.push_back(diff[c]);
    for (int c : down) need_down.push_back(-diff[c]);
    Eigen::RowVectorXd point = rows[ed.u];
    NodeId prev = ed.u;
    std::size_t a = 0, b = 0;
    int step = 0;
    while (a < up.size() && b < down.size()) {
      const double delta = std::min(need_up[a], need_down[b]);
      need_up[a] -= delta;
      need_down[b] -= delta;
      point[up[a]] += delta;
      point[down[b]] -= delta;
      // Finished coordinates snap to the target so rounding noise never
      // makes a later segment move a third coordinate.
      if (need_up[a] <= kAlignTol) {
        point[up[a]] = rows[ed.v][up[a]];
        ++a;
      }
      if (need_down[b] <= kAlignTol) {
        point[down[b]] = rows[ed.v][down[b]];
        ++b;
      }
      const bool last = a == up.size() || b == down.size();
      NodeId next = ed.v;
      if (!last) {
        next = out.graph.add_node(fresh_name(e, step));
        rows.push_back(point);
      }
      out.graph.add_edge(prev, next, ed.w);
      out.provenance.push_back(e);
      prev = next;
      ++step;
      if (last) break;
    }
  }
  out.embedding.points.resize(static_cast<int>(rows.size()), labels);
  for (std::size_t v = 0; v < rows.size(); ++v)
    out.embedding.points.row(static_cast<int>(v)) = rows[v];
  return out;
}

bool labeling_respects_lists(const LabelingInstance& inst, const Labeling& labeling) {
  if (static_cast<int>(labeling.size()) != inst.graph.num_nodes()) return false;
  for (NodeId v = 0; v < inst.graph.num_nodes(); ++v) {
    const int c = labeling[v];
    if (c < 0 || c >= inst.num_labels || !inst.allowed(v, c)) return false;
  }
  for (std::size_t k = 0; k < inst.terminals.size(); ++k)
    if (labeling[inst.terminals[k]] != static_cast<int>(k)) return false;
  return true;
}

namespace {

LabelingResult round_best_of(const LabelingInstance& inst, const LpRelaxation& relax,
                             const RoundingParams& params, int samples) {
  if (samples < 1) throw PreconditionError("at least one rounding sample is required");
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  const AxisAlignment aligned = axis_align(g, relax.embedding);

  // The aligned instance: subdivision nodes are free and allow every label
  // that either endpoint of their original edge allows.
  LabelingInstance fine;
  fine.graph = aligned.graph;
  fine.num_labels = inst.num_labels;
  fine.mode = inst.mode;
  fine.terminals = inst.terminals;
  fine.allowed = LabelMask::Constant(aligned.graph.num_nodes(), inst.num_labels, true);
  fine.allowed.topRows(n) = inst.allowed;
  for (EdgeId e = 0; e < aligned.graph.num_edges(); ++e) {
    const Edge& orig = g.edge(aligned.provenance[e]);
    for (NodeId v : {aligned.graph.edge(e).u, aligned.graph.edge(e).v})
      if (v >= n)
        fine.allowed.row(v) = inst.allowed.row(orig.u) || inst.allowed.row(orig.v);
  }

  std::vector<Labeling> labelings(samples);
  std::vector<double> weights(samples);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t s) {
    CounterRng rng(params.seed, s);
    Labeling full = round_combined(fine, aligned.embedding, params, rng);
    full.resize(n);
    weights[s] = cut_weight(g, dichromatic_edges(g, full));
    labelings[s] = std::move(full);
  });

  LabelingResult best;
  for (int s = 0; s < samples; ++s) {
    if (best.best_sample < 0 || weights[s] < best.weight) {
      best.best_sample = s;
      best.weight = weights[s];
    }
  }
  best.labeling = std::move(labelings[best.best_sample]);
  best.cut = dichromatic_edges(g, best.labeling);
  best.lp_value = relax.cut_value;
  if (!labeling_respects_lists(inst, best.labeling))
    throw Error("rounding produced a labeling outside the label lists");
  return best;
}

}  // namespace

LabelingResult solve_lifted_cut(const LabelingInstance& inst, const RoundingParams& params,
                                int samples) {
  params.validate();
  if (inst.mode == LabelingMode::Ckr)
    throw PreconditionError("solve_lifted_cut expects a lifted or list instance");
  return round_best_of(inst, solve_relaxation(inst), params, samples);
}

LabelingResult solve_multiway_cut(const Graph& g, std::span<const NodeId> terminals,
                                  const RoundingParams& params, int samples) {
  params.validate();
  std::vector<NodeId> t(terminals.begin(), terminals.end());
  std::vector<NodeId> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("multiway cut terminals must be distinct");
  if (t.size() < 2) throw PreconditionError("multiway cut needs at least two terminals");
  const LabelingInstance inst = make_multiway_instance(g, std::move(t));
  LabelingResult r = round_best_of(inst, solve_relaxation(inst), params, samples);
  Partition p = components(g, r.cut);
  for (std::size_t a = 0; a < terminals.size(); ++a)
    for (std::size_t b = a + 1; b < terminals.size(); ++b)
      if (p.block[terminals[a]] == p.block[terminals[b]])
        throw Error("multiway cut left two terminals connected");
  return r;
}

DensityEstimate estimate_cut_density(RoundingScheme scheme, const Eigen::VectorXd& u, int i,
                                     int j, double eps, long samples,
                                     const RoundingParams& params) {
  const int labels = static_cast<int>(u.size());
  if (labels < 2 || i < 0 || j < 0 || i >= labels || j >= labels || i == j)
    throw PreconditionError("cut density needs two distinct coordinates");
  if (!(eps > 0.0) || samples < 1) throw PreconditionError("cut density needs eps > 0");
  if ((u.array() < -1e-12).any() || std::abs(u.sum() - 1.0) > 1e-9)
    throw PreconditionError("cut density point is not in the simplex");
  if (u[j] - eps < -1e-12 || u[i] + eps > 1.0 + 1e-12)
    throw PreconditionError("perturbed point leaves the simplex");
  params.validate();

  LabelingInstance inst;
  inst.graph = Graph(2);
  inst.graph.add_edge(0, 1, 1.0);
  inst.num_labels = labels;
  inst.allowed = LabelMask::Constant(2, labels, true);
  inst.mode = LabelingMode::Lifted;
  SimplexEmbedding emb;
  emb.points.resize(2, labels);
  emb.points.row(0) = u.transpose();
  emb.points.row(1) = u.transpose();
  emb.points(1, i) += eps;
  emb.points(1, j) = std::max(0.0, emb.points(1, j) - eps);

  const int chunks = 64;
  std::vector<long> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t chunk) {
    for (long s = static_cast<long>(chunk); s < samples; s += chunks) {
      CounterRng rng(params.seed, static_cast<std::uint64_t>(s));
      const Labeling l = round_with(scheme, inst, emb, params, rng);
      if (l[0] != l[1]) ++hits[chunk];
    }
  });
  DensityEstimate est;
  est.samples = samples;
  for (long h : hits) est.separated += h;
  const double p = static_cast<double>(est.separated) / samples;
  est.density = p / eps;
  est.std_error = std::sqrt(p * (1.0 - p) / samples) / eps;
  return est;
}

}  // namespace repcut
