#include <algorithm>
#include <cmath>
#include <numeric>

#include "repcut/error.hpp"
#include "repcut/lifted_cut.hpp"

namespace repcut {

void ThresholdDensity::validate() const {
  if (breaks.size() < 2 || values.size() + 1 != breaks.size())
    throw ValidationError("threshold density: need one value per interval");
  if (breaks.front() != 0.0 || breaks.back() != 1.0)
    throw ValidationError("threshold density must be supported on [0, 1)");
  double mass = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(breaks[k + 1] > breaks[k])) throw ValidationError("threshold density: breaks must increase");
    if (!(values[k] >= 0.0) || !std::isfinite(values[k]))
      throw ValidationError("threshold density: values must be finite and nonnegative");
    mass += values[k] * (breaks[k + 1] - breaks[k]);
  }
  if (std::abs(mass - 1.0) > 1e-9) throw ValidationError("threshold density does not integrate to 1");
}

double ThresholdDensity::operator()(double x) const {
  if (x < 0.0 || x >= 1.0) return 0.0;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  return values[static_cast<std::size_t>(it - breaks.begin()) - 1];
}

double ThresholdDensity::sample(CounterRng& rng) const {
  const double target = rng.uniform_open_closed();
  double mass = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double piece = values[k] * (breaks[k + 1] - breaks[k]);
    if (piece > 0.0 && mass + piece >= target)
      return std::min(breaks[k + 1], breaks[k] + (target - mass) / values[k]);
    mass += piece;
  }
  // Rounding left target above the accumulated mass: take the top of the
  // last interval that carries mass.
  for (std::size_t k = values.size(); k-- > 0;)
    if (values[k] > 0.0) return breaks[k + 1];
  return 1.0;
}

void RoundingParams::validate() const {
  if (!(b > 0.0 && b <= 1.0)) throw ValidationError("rounding parameter b must lie in (0, 1]");
  for (double p : {p1, p2, p3, p4})
    if (!(p >= 0.0)) throw ValidationError("scheme probabilities must be nonnegative");
  if (std::abs(p1 + p2 + p3 + p4 - 1.0) > 1e-12)
    throw ValidationError("scheme probabilities must sum to 1");
  phi.validate();
}

namespace {

void check_shapes(const LabelingInstance& inst, const SimplexEmbedding& emb) {
  if (emb.points.rows() != inst.graph.num_nodes() || emb.points.cols() != inst.num_labels)
    throw StructuralError("embedding does not match the labeling instance");
}

void require_threshold_mode(const LabelingInstance& inst) {
  if (inst.mode == LabelingMode::Uml)
    throw PreconditionError("threshold schemes need a lifted or multiway instance");
}

// Labels that get a threshold, in the order the scheme visits them, and the
// label that takes whatever is left.
struct Order {
  std::vector<int> visit;
  int remainder;
};

// Lifted: the extra label has no threshold and always comes last; the others
// are shuffled. Multiway: all labels are shuffled and the last one drawn is
// the remainder.
Order shuffled_order(const LabelingInstance& inst, CounterRng& rng) {
  const int labels = inst.num_labels;
  Order o;
  const int permuted = inst.mode == LabelingMode::Lifted ? labels - 1 : labels;
  o.visit.resize(permuted);
  std::iota(o.visit.begin(), o.visit.end(), 0);
  rng.shuffle(std::span<int>(o.visit));
  if (inst.mode == LabelingMode::Lifted) {
    o.remainder = labels - 1;
  } else {
    o.remainder = o.visit.back();
    o.visit.pop_back();
  }
  return o;
}

Labeling assign_by_thresholds(const SimplexEmbedding& emb, const Order& order,
                              const std::vector<double>& theta) {
  const int n = static_cast<int>(emb.points.rows());
  Labeling out(n, order.remainder);
  for (int v = 0; v < n; ++v)
    for (int c : order.visit)
      if (emb.points(v, c) >= theta[c]) {
        out[v] = c;
        break;
      }
  return out;
}

}  // namespace

Labeling round_kleinberg_tardos(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                CounterRng& rng) {
  check_shapes(inst, emb);
  const int n = inst.graph.num_nodes();
  Labeling out(n, -1);
  int left = n;
  constexpr long kCap = 10'000'000;
  for (long round = 0; left > 0; ++round) {
    if (round >= kCap) throw Error("Kleinberg-Tardos rounding did not finish in 10^7 rounds");
    const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.num_labels)));
    const double rho = rng.uniform_open_closed();
    for (int v = 0; v < n; ++v)
      if (out[v] < 0 && emb.points(v, c) >= rho) {
        out[v] = c;
        --left;
      }
  }
  return out;
}

Labeling round_single_threshold(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                const ThresholdDensity& phi, CounterRng& rng) {
  check_shapes(inst, emb);
  require_threshold_mode(inst);
  phi.validate();
  const double theta = phi.sample(rng);
  const Order order = shuffled_order(inst, rng);
  return assign_by_thresholds(emb, order, std::vector<double>(inst.num_labels, theta));
}

Labeling round_descending_thresholds(const LabelingInstance& inst,
                                     const SimplexEmbedding& emb, double b, CounterRng& rng) {
  check_shapes(inst, emb);
  require_threshold_mode(inst);
  if (!(b > 0.0 && b <= 1.0)) throw ValidationError("threshold bound b must lie in (0, 1]");
  const int labels = inst.num_labels;
  const int drawn = inst.mode == LabelingMode::Lifted ? labels - 1 : labels;
  std::vector<double> theta(labels, 0.0);
  for (int c = 0; c < drawn; ++c) theta[c] = b * rng.uniform_open_closed();
  // Shuffle first so that a stable sort breaks equal thresholds at random.
  std::vector<int> order(drawn);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return theta[x] > theta[y]; });
  Order o;
  if (inst.mode == LabelingMode::Lifted) {
    o.visit = std::move(order);
    o.remainder = labels - 1;
  } else {
    o.remainder = order.back();
    order.pop_back();
    o.visit = std::move(order);
  }
  return assign_by_thresholds(emb, o, theta);
}

Labeling round_independent_thresholds(const LabelingInstance& inst,
                                      const SimplexEmbedding& emb, double b, CounterRng& rng) {
  check_shapes(inst, emb);
  require_threshold_mode(inst);
  if (!(b > 0.0 && b <= 1.0)) throw ValidationError("threshold bound b must lie in (0, 1]");
  const int labels = inst.num_labels;
  const int drawn = inst.mode == LabelingMode::Lifted ? labels - 1 : labels;
  std::vector<double> theta(labels, 0.0);
  for (int c = 0; c < drawn; ++c) theta[c] = b * rng.uniform_open_closed();
  return assign_by_thresholds(emb, shuffled_order(inst, rng), theta);
}

Labeling round_combined(const LabelingInstance& inst, const SimplexEmbedding& emb,
                        const RoundingParams& params, CounterRng& rng) {
  params.validate();
  const double u = rng.uniform();
  if (u < params.p1) return round_kleinberg_tardos(inst, emb, rng);
  if (u < params.p1 + params.p2) return round_single_threshold(inst, emb, params.phi, rng);
  if (u < params.p1 + params.p2 + params.p3)
    return round_descending_thresholds(inst, emb, params.b, rng);
  if (params.p4 > 0.0) return round_independent_thresholds(inst, emb, params.b, rng);
  // u landed in the rounding slack above p1+p2+p3; use the last scheme with mass.
  if (params.p3 > 0.0) return round_descending_thresholds(inst, emb, params.b, rng);
  if (params.p2 > 0.0) return round_single_threshold(inst, emb, params.phi, rng);
  return round_kleinberg_tardos(inst, emb, rng);
}

Labeling round_with(RoundingScheme scheme, const LabelingInstance& inst,
                    const SimplexEmbedding& emb, const RoundingParams& params,
                    CounterRng& rng) {
  switch (scheme) {
    case RoundingScheme::KleinbergTardos: return round_kleinberg_tardos(inst, emb, rng);
    case RoundingScheme::SingleThreshold: return round_single_threshold(inst, emb, params.phi, rng);
    case RoundingScheme::DescendingThresholds:
      return round_descending_thresholds(inst, emb, params.b, rng);
    case RoundingScheme::IndependentThresholds:
      return round_independent_thresholds(inst, emb, params.b, rng);
    case RoundingScheme::Combined: return round_combined(inst, emb, params, rng);
  }
  throw PreconditionError("unknown rounding scheme");
}

Labeling round_kleinberg_tardos(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                std::uint64_t seed) {
  CounterRng rng(seed);
  return round_kleinberg_tardos(inst, emb, rng);
}

Labeling round_single_threshold(const LabelingInstance& inst, const SimplexEmbedding& emb,
                                const ThresholdDensity& phi, std::uint64_t seed) {
  CounterRng rng(seed);
  return round_single_threshold(inst, emb, phi, rng);
}

Labeling round_descending_thresholds(const LabelingInstance& inst,
                                     const SimplexEmbedding& emb, double b, std::uint64_t seed) {
  CounterRng rng(seed);
  return round_descending_thresholds(inst, emb, b, rng);
}

Labeling round_independent_thresholds(const LabelingInstance& inst,
                                      const SimplexEmbedding& emb, double b, std::uint64_t seed) {
  CounterRng rng(seed);
  return round_independent_thresholds(inst, emb, b, rng);
}

Labeling round_combined(const LabelingInstance& inst, const SimplexEmbedding& emb,
                        const RoundingParams& params) {
  CounterRng rng(params.seed);
  return round_combined(inst, emb, params, rng);
}

}  // namespace repcut
