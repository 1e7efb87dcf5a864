#pragma once

// Hand-built graphs and decompositions reused across test binaries. Every
// decomposition here was checked by hand; tests re-verify the claimed
// properties, so regressions in the checkers show up as fixture failures.

#include "tdlab/decomposition.hpp"

namespace tdlab::fixtures {

struct GraphWithTD {
  Graph g;
  TreeDecomposition td;
};

// 12-cycle with a three-armed decomposition: width 2, distinct bags, no
// prunable branches, yet the three arm tips form a separable triple whose
// middle-bag condition fails. Exercises the triad detector and the full
// branch surgery pipeline.
GraphWithTD c12_three_arms();

// 6-cycle with a valid path-shaped decomposition that is not linked: the
// end bags need three disjoint connecting paths but only two exist.
GraphWithTD c6_unlinked();

// Cycle with a path-shaped decomposition whose interior bag is a doubled
// band over the two split classes; input for the path-split surgery.
GraphWithTD c8_band();
GraphWithTD c6_band();

// Two disjoint copies of the pendant-rooted subdivided binary tree of the
// given height, with every tree edge stretched into a path of `stretch`
// edges. The decomposition pairs corresponding vertices of the two copies,
// so every branch-vertex search has exactly one linkage per side: the two
// tracks never touch and all structure questions have unique answers.
GraphWithTD twin_tracks(int h, int stretch = 1);

// Two tripod stations whose cross legs are forced through one shared hub
// path of `hub_len` vertices: disjoint tripod pairs are impossible, but the
// pair sharing the hub segment exists. The decomposition is claw-shaped
// with pairwise disjoint bags at the tips.
GraphWithTD shared_bridge(int hub_len = 1);

// shared_bridge(1) with one extra vertex added to every bag, giving the
// image bags a common vertex.
GraphWithTD shared_bridge_apex();

}  // namespace tdlab::fixtures
