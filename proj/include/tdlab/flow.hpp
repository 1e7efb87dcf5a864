#pragma once

#include "tdlab/graph.hpp"

namespace tdlab {

// Internally disjoint S-T path system plus a matching separator certificate.
// Paths are fully vertex-disjoint (endpoints included); a vertex in both S
// and T contributes a single-vertex path. The separator meets every S-T
// path and |separator| == paths.size() (max flow == min cut).
struct Linkage {
  std::vector<PathInGraph> paths;
  VertexSet separator;
  int size() const { return static_cast<int>(paths.size()); }
};

// Maximum set of vertex-disjoint paths from S to T.
Linkage disjoint_paths(const Graph& g, const VertexSet& S, const VertexSet& T);

// Same, but at most `limit` augmentations (still returns a separator only
// when the true optimum was reached; otherwise separator stays empty).
Linkage disjoint_paths_capped(const Graph& g, const VertexSet& S,
                              const VertexSet& T, int limit);

bool validate_linkage(const Graph& g, const VertexSet& S, const VertexSet& T,
                      const Linkage& l);

// True when X meets every S-T path of g.
bool is_separator(const Graph& g, const VertexSet& S, const VertexSet& T,
                  const VertexSet& X);

}  // namespace tdlab
