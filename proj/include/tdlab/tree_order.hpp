#pragma once

#include "tdlab/graph.hpp"

namespace tdlab {

enum class Cmp { Less, Equal, Greater };

// Canonical rank signature of a tree: vertex count plus the descending list
// of signatures of the branches hanging off a minimal spine. Two trees are
// order-equivalent exactly when their signatures coincide, and the
// signature order below realizes the tree quasi-order.
struct SigNode {
  int n = 0;
  std::vector<SigNode> kids;  // descending under compare_sig
};

Cmp compare_sig(const SigNode& a, const SigNode& b);
// Lexicographic with shorter-list-smaller; also decides multiset domination
// of descending signature lists (not Greater == dominated).
Cmp compare_sig_lists(const std::vector<SigNode>& a,
                      const std::vector<SigNode>& b);
std::string sig_code(const SigNode& s);

// Bridges of a path: for trees every component of g - V(path) hangs off a
// single path vertex; on general graphs a bridge may attach anywhere, and a
// chord (a non-path edge between path vertices) forms a two-vertex bridge.
// The path is given as its ordered vertex sequence.
struct PBridge {
  VertexSet verts;        // component vertices plus attachments
  VertexSet attachments;  // verts on the path
  bool chord = false;
};
std::vector<PBridge> p_bridges(const Graph& g, const std::vector<int>& path);

// Isomorphism-canonical string of an unlabeled tree (nested parentheses).
std::string tree_canonical_code(const Graph& tree);

SigNode tree_signature(const Graph& tree);

struct RankKey {
  SigNode sig;
  std::string code;  // serialized signature; equal codes == equivalent trees
};
RankKey rank_key(const Graph& tree);

Cmp compare_trees(const Graph& a, const Graph& b);

// B dominates A when A's descending signature list is an equivalent prefix
// of B's, or the first difference is smaller on A's side.
bool dominated_by(const std::vector<Graph>& A, const std::vector<Graph>& B);
bool strictly_dominated_by(const std::vector<Graph>& A,
                           const std::vector<Graph>& B);

// Longest path whose hanging-branch multiset is domination-minimal;
// ties resolved by the lexicographically least endpoint pair. Oriented
// from its smaller endpoint.
std::vector<int> spine(const Graph& tree);

// Iterated spine restriction towards t: trees[0] is the input; while t
// avoids the current spine, descend into the branch containing t.
// t lies on paths.back().
struct SpineDecomposition {
  std::vector<Graph> trees;
  std::vector<std::vector<int>> paths;
};
SpineDecomposition spine_decomposition(const Graph& tree, int t);

// Rank-lowering rewiring at a degree-3 vertex t of its innermost spine.
// Exactly one neighbor of t is off that spine; `far` and `near` are
// adjacent vertices inside the off-spine branch such that far, near, the
// off-spine neighbor and t lie on a common path in this order (near may
// equal the off-spine neighbor, far may not). `cut` picks which of the two
// on-spine neighbors loses its edge to t: the edge near-far is subdivided
// twice, the cut side is re-hung on the subdivision vertex next to far,
// and t is merged with its two remaining neighbors. Vertex count is
// preserved and the result compares strictly below the input. Throws on
// invalid inputs.
struct Spine2Result {
  Graph tree;
  int merged;  // id of the merged vertex (t's id)
  int mid1;    // subdivision vertex adjacent to near
  int mid2;    // subdivision vertex adjacent to far (re-hang point)
};
Spine2Result spine2_transform(const Graph& tree, int t, int far, int near,
                              int cut);

}  // namespace tdlab
