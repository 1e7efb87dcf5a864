#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "tdlab/cascade.hpp"
#include "tdlab/graph.hpp"
#include "tdlab/minor.hpp"

namespace tdlab {

struct FamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The target families. P variants are complete binary trees plus one, two
// or three vertices joined to every leaf. Q variants are stacked triangles
// with a designated base edge, plus zero, one or two vertices joined to the
// degree-two vertices of the stack. A is the six-cycle with a triangle of
// chords, C32 the pair of disjoint triangles, CT the plain binary tree.
enum class FamilyName { P, PPrime, PDoublePrime, Q, QPrime, QDoublePrime, A, C32, CT };

std::string family_to_string(FamilyName name);
std::optional<FamilyName> family_from_string(const std::string& s);

struct FamilyGraph {
  FamilyName name = FamilyName::P;
  int k = 0;
  Graph g;
  VertexSet apexes;               // the added universal vertices, if any
  std::optional<Edge> base_edge;  // Q variants
  VertexSet leaves;               // bottom row of the binary tree part
  int root = -1;                  // binary tree root, -1 when absent
};

// Deterministic labelling: the binary tree part uses heap ids (children of
// v at 2v+1 and 2v+2), added vertices take the next free ids. The triangle
// stack at height k has vertices 0..2^k with base edge (0, 1).
FamilyGraph gen_family(FamilyName name, int k);

// First vertex, in id order, whose removal leaves a forest.
std::optional<int> find_apex_forest_vertex(const Graph& h);

struct FamilyEmbedding {
  int k = 0;
  FamilyGraph host;
  // Branch sets for `completion`, a supergraph of the input on at least the
  // input's vertices; restricting to the input vertex set models the input.
  MinorModel model;
  Graph completion;
  // Completion edge whose ends sit in the nodes of the two base vertices.
  std::optional<Edge> base_preimage;
};

// Models h in the tree family, the deleted vertex v landing on the apex.
// Requires h minus v to be a forest. The forest is embedded in a binary
// tree by hanging each child below a spine of left edges, then every
// vertex is stretched to a leaf path in a tree of twice the depth.
FamilyEmbedding embed_into_P(const Graph& h, int v);

// Models h in the triangle stack. Requires h free of K_4 and K_{2,3}
// minors; an outer cyclic order is found by brute force (hence max_n), the
// completion adds the outer cycle and a fan triangulation of every face,
// and the recursion follows the unique triangle on the base edge.
FamilyEmbedding embed_into_Q(const Graph& h, int max_n = 9);

struct ExtractionResult {
  FamilyGraph pattern;
  bool base_edge_removed = false;  // model realizes pattern minus base edge
  MinorModel model;
  // Pattern vertex -> graph vertex required to lie in its branch set.
  std::map<int, int> node_conditions;
};

// Converts an ordered cascade all of whose branch vertices carry the tag
// at the label pair (i, j) into a family minor of g. Tag A yields the tree
// family: the tripods split into two trees, one supplying the binary tree
// pieces and the other the first apex; each bottom piece reaches the apex
// tree directly or by a path beyond its bag, and variants 1 and 2 add
// common-intersection vertices as further apexes. Tag B yields the
// triangle stack minus its base edge by recursion on the branch vertices,
// the two bottom bag labels landing in the nodes of the base ends.
ExtractionResult extract_minor_from_cascade(const Graph& g,
                                            const TreeDecomposition& td,
                                            const Cascade& c, PropertyTag tag,
                                            int i, int j, int variant = 0,
                                            long long cap = 2'000'000);

struct DichotomyReport {
  int pathwidth = -1;
  MinorResult p_result = MinorResult::Inconclusive;
  MinorResult q_result = MinorResult::Inconclusive;
  bool has_p = false;
  bool has_q = false;
  MinorModel p_model;
  MinorModel q_model;
};

// Exact path-width next to minor tests against the two families at height k.
DichotomyReport dichotomy_check(const Graph& g, int k, long long budget = -1,
                                int pw_cap = 12);

}  // namespace tdlab
