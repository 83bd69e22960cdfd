#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "repcut/graph.hpp"
#include "repcut/lp.hpp"
#include "repcut/rng.hpp"

namespace repcut {

/// Lifted: labels 0..q-1 belong to terminals s_1..s_q, label q is the extra
/// label every non-terminal may take; threshold schemes never threshold it.
/// Ckr: plain multiway cut, one terminal per label, all labels permuted.
/// Uml: arbitrary label lists, only the Kleinberg-Tardos scheme applies.
enum class LabelingMode { Lifted, Ckr, Uml };

using LabelMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct LabelingInstance {
  Graph graph;
  int num_labels = 0;
  LabelMask allowed;             // num_nodes x num_labels
  std::vector<NodeId> terminals; // terminal k carries label k
  LabelingMode mode = LabelingMode::Lifted;

  int extra_label() const { return num_labels - 1; }
};

/// Lifted instance: terminals get {k}, every other node gets the given list,
/// which must contain the extra label q = terminals.size() (or more labels if
/// num_labels says so).
LabelingInstance make_lifted_instance(Graph g, std::vector<NodeId> terminals,
                                      const std::vector<std::vector<int>>& lists);
/// Multiway cut instance with one label per terminal.
LabelingInstance make_multiway_instance(Graph g, std::vector<NodeId> terminals);

/// Checks mask shape, nonempty lists, distinct terminals and, per mode,
/// conditions (A) terminal lists are {k} and (B) non-terminals allow the
/// extra label. Throws ValidationError naming the offending node.
void validate_labeling_instance(const LabelingInstance& inst);

struct SimplexEmbedding {
  Eigen::MatrixXd points;  // num_nodes x num_labels, rows in the simplex
};

using Labeling = std::vector<int>;

struct LiftLp {
  LinearProgram program;
  Eigen::MatrixXi x_index;  // node x label -> LP variable
};

/// minimize sum_e w_e * sum_c y_{e,c},  y_{e,c} >= |x_{u,c} - x_{v,c}|,
/// rows of x in the simplex, forbidden labels bounded to [0, 0]. The LP
/// objective is the raw L1 length; half of it is the cut-comparable value.
LiftLp build_lift_lp(const LabelingInstance& inst);

/// Clamps tiny negatives, zeroes forbidden coordinates, renormalizes rows and
/// snaps terminals to their vertices. Requires an optimal solution.
SimplexEmbedding extract_embedding(const LpSolution& sol, const LiftLp& lift,
                                   const LabelingInstance& inst);

struct LpRelaxation {
  SimplexEmbedding embedding;
  double raw_value = 0.0;
  double cut_value = 0.0;  // raw_value / 2
};

LpRelaxation solve_relaxation(const LabelingInstance& inst);

/// Sum over edges of w * ||x^u - x^v||_1 (the raw LP objective).
double embedding_length(const Graph& g, const SimplexEmbedding& emb);

struct AxisAlignment {
  Graph graph;  // original nodes keep their ids; subdivision nodes follow
  SimplexEmbedding embedding;
  std::vector<EdgeId> provenance;  // new edge -> original edge
};

/// Replaces each edge by a monotone path whose segments each differ in two
/// coordinates. Mass moves pairwise from decreasing to increasing coordinates,
/// both taken in ascending index order; every segment keeps the edge weight.
AxisAlignment axis_align(const Graph& g, const SimplexEmbedding& emb);

/// Piecewise-constant density on [0, 1): values[k] on [breaks[k], breaks[k+1]).
struct ThresholdDensity {
  std::vector<double> breaks{0.0, 1.0};
  std::vector<double> values{1.0};

  static ThresholdDensity uniform() { return {}; }
  void validate() const;
  double operator()(double x) const;
  /// Inverse-CDF draw, strictly positive.
  double sample(CounterRng& rng) const;
};

struct RoundingParams {
  double b = 0.7;
  double p1 = 0.25, p2 = 0.25, p3 = 0.25, p4 = 0.25;
  ThresholdDensity phi;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class RoundingScheme { KleinbergTardos, SingleThreshold, DescendingThresholds,
                            IndependentThresholds, Combined };

/// Repeatedly picks a label uniformly among all labels and rho in (0, 1];
/// unassigned nodes with x_label >= rho take the label. Throws after 10^7 rounds.
Labeling round_kleinberg_tardos(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                CounterRng& rng);
/// One threshold from phi for every thresholded label.
Labeling round_single_threshold(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                const ThresholdDensity& phi, CounterRng& rng);
/// Thresholds uniform on (0, b], processed in descending threshold order.
Labeling round_descending_thresholds(const LabelingInstance& inst,
                                     const SimplexEmbedding& emb, double b, CounterRng& rng);
/// Thresholds uniform on (0, b], processed in uniformly random order.
Labeling round_independent_thresholds(const LabelingInstance& inst,
                                      const SimplexEmbedding& emb, double b, CounterRng& rng);
/// Picks one scheme with probabilities p1..p4 and delegates with the same rng.
Labeling round_combined(const LabelingInstance& inst, const SimplexEmbedding& emb,
                        const RoundingParams& params, CounterRng& rng);
Labeling round_with(RoundingScheme scheme, const LabelingInstance& inst,
                    const SimplexEmbedding& emb, const RoundingParams& params,
                    CounterRng& rng);

// Seeded conveniences: stream 0 of the given seed.
Labeling round_kleinberg_tardos(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                std::uint64_t seed);
Labeling round_single_threshold(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                const ThresholdDensity& phi, std::uint64_t seed);
Labeling round_descending_thresholds(const LabelingInstance& inst,
                                     const SimplexEmbedding& emb, double b, std::uint64_t seed);
Labeling round_independent_thresholds(const LabelingInstance& inst,
                                      const SimplexEmbedding& emb, double b, std::uint64_t seed);
Labeling round_combined(const LabelingInstance& inst, const SimplexEmbedding& emb,
                        const RoundingParams& params);

/// True iff every node carries an allowed label and terminal k carries k.
bool labeling_respects_lists(const LabelingInstance& inst, const Labeling& labeling);

struct LabelingResult {
  Labeling labeling;
  Cut cut;                  // dichromatic edges of the original graph
  double weight = 0.0;
  double lp_value = 0.0;    // cut-comparable
  int best_sample = -1;
};

/// LP, axis alignment, `samples` draws of round_combined on the aligned graph
/// (sample s uses stream s of params.seed), best original-graph cut kept;
/// ties go to the lowest sample index.
LabelingResult solve_lifted_cut(const LabelingInstance& inst, const RoundingParams& params,
                                int samples);
/// Multiway cut through the CKR relaxation and the same pipeline.
LabelingResult solve_multiway_cut(const Graph& g, std::span<const NodeId> terminals,
                                  const RoundingParams& params, int samples);

struct DensityEstimate {
  double density = 0.0;
  double std_error = 0.0;
  long separated = 0;
  long samples = 0;
};

/// Runs `scheme` on the two points u and u + eps (e^i - e^j) (a two-node lifted
/// instance without terminals, label count u.size()) and returns the
/// separation frequency divided by eps with its binomial standard error.
DensityEstimate estimate_cut_density(RoundingScheme scheme, const Eigen::VectorXd& u, int i,
                                     int j, double eps, long samples,
                                     const RoundingParams& params);

}  // namespace repcut
