#pragma once

#include <cstdint>
#include <vector>

#include "repcut/graph.hpp"
#include "repcut/rng.hpp"
#include "repcut/variants.hpp"

namespace repcut::testing {

/// Random multigraph on n nodes named "v0".. with m edges, integer weights
/// in [1, max_w]. Self-loops are resampled.
Graph random_graph(CounterRng& rng, int n, int m, int max_w = 10);

/// Connected random graph: a random spanning tree plus extra edges.
Graph random_connected_graph(CounterRng& rng, int n, int extra, int max_w = 10);

/// Uniformly random labelled tree (random attachment), integer weights.
Graph random_tree(CounterRng& rng, int n, int max_w = 10);

/// Random nonempty subset of 0..n-1 with size in [1, max_size].
NodeSet random_subset(CounterRng& rng, int n, int max_size);

int uniform_int(CounterRng& rng, int lo, int hi);

inline constexpr Variant kAllVariants[] = {
    Variant::AllToAll,   Variant::SingleToAll, Variant::SingleToSingle, Variant::FixedToSingle,
    Variant::SomeToSingle, Variant::SomeToSome, Variant::SomeToAll};

/// Random instance on random_connected_graph(n, extra) with q sets of size
/// 1..max_set; FixedToSingle gets a uniform fixed node. Not necessarily feasible.
VariantInstance random_variant_instance(CounterRng& rng, Variant v, int n, int extra, int q,
                                        int max_set, int max_w = 10);
/// Same, on a given graph.
VariantInstance random_family_on(CounterRng& rng, Variant v, Graph g, int q, int max_set);

}  // namespace repcut::testing
