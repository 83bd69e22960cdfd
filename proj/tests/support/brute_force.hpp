#pragma once

#include "repcut/lifted_cut.hpp"

namespace repcut::testing {

/// Minimum dichromatic weight over every labeling that respects the lists,
/// by plain odometer enumeration.
double brute_force_labeling(const LabelingInstance& inst, Labeling* best = nullptr);

/// Random lifted instance: connected graph on n nodes, q terminals, every
/// non-terminal list a random label subset that contains the extra label.
LabelingInstance random_lifted_instance(CounterRng& rng, int n, int q, int extra_edges);

}  // namespace repcut::testing
