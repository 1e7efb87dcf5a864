#pragma once

#include "tdlab/decomposition.hpp"

namespace tdlab {

struct TreewidthResult {
  int value;  // -1 for the empty graph
  TreeDecomposition witness;
};

struct PathwidthResult {
  int value;
  PathDecomposition witness;
  std::vector<int> layout;  // optimal vertex order realizing the value
};

// Exact treewidth by dynamic programming over elimination prefixes.
// Throws when g has more than `cap` vertices.
TreewidthResult exact_treewidth(const Graph& g, int cap = 14);

// Exact pathwidth via the vertex separation number of an optimal layout.
PathwidthResult exact_pathwidth(const Graph& g, int cap = 12);

}  // namespace tdlab
