#pragma once

#include <array>
#include <optional>

#include "tdlab/decomposition.hpp"
#include "tdlab/flow.hpp"

namespace tdlab {

// Linkedness: every two nodes t1,t2 are joined by as many disjoint paths
// between their bags as the smallest bag on the tree path between them.
// The returned linkage is maximum, so its size certifies the violation.
struct LinkednessViolation {
  int t1 = -1, t2 = -1;
  int need = 0;
  Linkage linkage;
};
std::optional<LinkednessViolation> check_linked(const Graph& g,
                                                const TreeDecomposition& td);

// No two nodes may carry the same bag.
struct DuplicateBags {
  int t1 = -1, t2 = -1;
};
std::optional<DuplicateBags> check_distinct_bags(const TreeDecomposition& td);

// Every branch at a node must contribute a vertex outside that node's bag.
struct IdleBranch {
  int t0 = -1;
  VertexSet branch;  // nodes of the offending component of the split tree
};
std::optional<IdleBranch> check_branches_contribute(const TreeDecomposition& td);

// Vertices of a bag that reappear inside a branch are "tied" to it. Any two
// such vertices must be joined by a path of three or more vertices whose
// interior lies in the branch's private vertices (those outside the bag).
VertexSet tied_vertices(const TreeDecomposition& td, int t0,
                        const VertexSet& branch);
std::optional<PathInGraph> branch_confined_path(const Graph& g,
                                                const TreeDecomposition& td,
                                                int t0, const VertexSet& branch,
                                                int u, int v);
struct UnjoinedTiedPair {
  int t0 = -1;
  VertexSet branch;
  int u = -1, v = -1;
};
std::optional<UnjoinedTiedPair> check_tied_pairs_joined(
    const Graph& g, const TreeDecomposition& td);

// Three nodes lying in different components of the tree minus some center
// node form a triad; the center is their median and is unique.
int triad_center(const Graph& tree, int t1, int t2, int t3);  // -1 if none

// Torso of a triad: the subgraph induced by the bags of t1,t2,t3 and of all
// nodes separated from none of them, i.e. lying with the center after
// removing any one of the three.
std::vector<int> torso_nodes(const TreeDecomposition& td, int t1, int t2,
                             int t3);
Graph triad_torso(const Graph& g, const TreeDecomposition& td, int t1, int t2,
                  int t3);

// A triad splits when the torso minus the common ground x of the three bags
// partitions into non-null parts h1,h2,h3 (no edges between parts) with
// |h_i ∩ bag(t_j)| == mu == |bag(t_k) - x|/2 >= 1 for all i != j and all k,
// and |h_i ∩ bag(t)| >= mu for every node t between t_j and the center.
struct TriadSplit {
  int t1 = -1, t2 = -1, t3 = -1;
  int center = -1;
  VertexSet x;
  std::array<VertexSet, 3> parts;
  int mu = 0;
};
std::optional<TriadSplit> split_triad(const Graph& g,
                                      const TreeDecomposition& td, int t1,
                                      int t2, int t3);
std::vector<TriadSplit> separable_triads(const Graph& g,
                                         const TreeDecomposition& td);

// Every splitting triad must have some bag(t_i) meeting the center's bag
// outside the common ground. Returns a triad witnessing the failure.
std::optional<TriadSplit> check_triads_meet_center(const Graph& g,
                                                   const TreeDecomposition& td);

}  // namespace tdlab
