#pragma once

// Slow definition-unrolling reference implementations used only by tests.
// Each one restates its property from first principles so the optimized
// library code can be checked against an independent computation.

#include "tdlab/graph.hpp"

namespace tdlab::oracle {

// v is a cut vertex iff two other vertices of its component get separated.
std::vector<int> cut_vertices_brute(const Graph& g);

// Minimum S-T vertex separator by subset enumeration (Menger dual).
int min_separator_brute(const Graph& g, const VertexSet& S, const VertexSet& T);

// Exhaustive minor test: every map host-vertex -> pattern-vertex-or-unused.
bool has_minor_brute(const Graph& host, const Graph& pattern);

// Width by trying every elimination order / every layout.
int treewidth_brute(const Graph& g);
int pathwidth_brute(const Graph& g);

}  // namespace tdlab::oracle

#include "tdlab/tree_order.hpp"

namespace tdlab::oracle {

// Tree order unrolled from its definition: no memoization, no signature
// canonicalization. Domination is the existential-prefix form, the spine is
// any maximal path whose branch multiset every other maximal path dominates.
Cmp compare_trees_defn(const Graph& a, const Graph& b);
bool dominated_defn(const std::vector<Graph>& A, const std::vector<Graph>& B);
std::vector<int> spine_defn(const Graph& tree);

}  // namespace tdlab::oracle
