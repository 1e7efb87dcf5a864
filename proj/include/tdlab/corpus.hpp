#pragma once

#include <cstdint>
#include <random>

#include "tdlab/graph.hpp"

namespace tdlab {

// Canonical form of a graph on up to 8 vertices: the minimum packed
// upper-triangle adjacency bitmask over all degree-respecting relabelings.
// Equal codes == isomorphic graphs.
std::uint64_t canonical_code(const Graph& g);

// One representative per isomorphism class, vertices relabeled 0..n-1,
// ordered by canonical code. Built by vertex extension with dedup.
std::vector<Graph> all_graphs(int n);
std::vector<Graph> connected_graphs(int n);
std::vector<Graph> all_trees(int n);

// Seeded generators for randomized property tests and experiments.
Graph random_graph(std::mt19937& rng, int n, double edge_prob);
Graph random_tree(std::mt19937& rng, int n);
Graph random_connected_graph(std::mt19937& rng, int n, double extra_edge_prob);

}  // namespace tdlab
