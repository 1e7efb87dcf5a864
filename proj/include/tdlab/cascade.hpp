#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdlab/decomposition.hpp"
#include "tdlab/graph.hpp"
#include "tdlab/pattern.hpp"

namespace tdlab {

struct CascadeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Homeomorphic embeddings of trees into trees: injective vertex maps such
// that the paths from the image of a vertex to the images of two distinct
// neighbours leave through distinct edges.

struct Hembedding {
  std::map<int, int> map;  // source vertex -> target vertex
  int at(int v) const { return map.at(v); }
};

bool is_hembedding(const Graph& src, const Graph& dst, const Hembedding& emb);

// All target vertices lying on a path between two image vertices.
VertexSet embedding_span(const Graph& src, const Graph& dst,
                         const Hembedding& emb);

// First embedding in search order (source vertices by BFS from the smallest
// id, candidate images ascending), or nullopt after an exhaustive search.
std::optional<Hembedding> find_embedding(const Graph& src, const Graph& dst);

// Re-rootings between patterns. Monotone maps preserve the left/right
// designations and send the pendant root to the pendant root; weakly
// monotone maps only preserve descendants and the minor/branch split.
bool is_monotone_embedding(const PatternTree& sub, const PatternTree& host,
                           const std::map<int, int>& gamma);
bool is_weakly_monotone_embedding(const PatternTree& sub,
                                  const PatternTree& host,
                                  const std::map<int, int>& gamma);

// ---------------------------------------------------------------------------
// Cascades: embeddings of a T pattern into the tree of a decomposition with
// uniform bag size s at the images of path vertices and bags of size >= s
// across the span. Injective cascades additionally have all pairwise bag
// intersections equal to one set I with |I| < s. Ordered cascades carry
// label tables xi (bijections {1..s-|I|} -> bag - I at each path vertex)
// and, when specified, per-branch-vertex linkages.

struct Cascade {
  PatternTree pattern;
  std::map<int, int> eta;  // pattern vertex -> tree node
  int s = 0;
  bool injective = false;
  VertexSet I;
  bool ordered = false;
  std::map<int, std::vector<int>> xi;  // minor vertex -> labelled bag vertices
  std::map<int, std::vector<PathInGraph>> left_linkage;   // major -> paths
  std::map<int, std::vector<PathInGraph>> right_linkage;  // major -> paths

  int height() const { return pattern.h; }
  int labels() const { return s - static_cast<int>(I.size()); }
  int node(int pattern_vertex) const { return eta.at(pattern_vertex); }
  int label(int minor_vertex, int i) const {  // 1-based label index
    return xi.at(minor_vertex)[static_cast<size_t>(i) - 1];
  }
  Hembedding embedding() const { return Hembedding{eta}; }
};

std::optional<Cascade> find_cascade(const TreeDecomposition& td, int h, int s);

// Maximizes s; among embeddings of that size picks the first whose pairwise
// bag intersections agree.
std::optional<Cascade> find_injective_cascade(const TreeDecomposition& td,
                                              int h);

// Definitional re-check of everything the cascade claims to carry. Empty
// result means valid.
std::vector<std::string> validate_cascade(const Graph& g,
                                          const TreeDecomposition& td,
                                          const Cascade& c);

// Either grows the common intersection (alternative 1: a cascade of height a
// whose bags all share at least k+1 vertices) or produces an injective
// cascade of height b with |I| = k (alternative 2). Searches are exhaustive
// at desk scale; failure of both reports whether the height hypothesis held.
struct RefineResult {
  int alternative = 0;
  Cascade cascade;
};
RefineResult refine_injective(const TreeDecomposition& td, const Cascade& c,
                              int a, int b, int k);

// ---------------------------------------------------------------------------
// Orderings and specified linkages.

// Labels the minor-root bag in sorted order, then walks down the pattern
// choosing at every branch vertex the pair of disjoint path systems that
// minimizes the total number of edges past the departure points, ties broken
// by the lexicographically least edge set. Requires an injective cascade in
// a linked decomposition.
Cascade order_cascade(const Graph& g, const TreeDecomposition& td,
                      const Cascade& c, long long cap = 4'000'000);

// True when the specified linkages at t0 achieve the minimum of the same
// measure over all competing pairs of disjoint path systems.
bool verify_minimality(const Graph& g, const TreeDecomposition& td,
                       const Cascade& c, int t0, long long cap = 4'000'000);

// Region of g induced by the bags of the nodes whose tree path to the image
// of t0 crosses none of the trinity images, minus I.
Graph eta_torso(const Graph& g, const TreeDecomposition& td, const Cascade& c,
                int t0);

// Region of g at or below the image of a minor vertex v, minus I.
Graph outer_graph(const Graph& g, const TreeDecomposition& td,
                  const Cascade& c, int v);

// Path from x to y whose interior lies in the outer graph at v but outside
// the bag of the image of v, of length at least two. Throws when no such
// path exists (a tied-pair requirement upstream must have failed).
PathInGraph w6_path(const Graph& g, const TreeDecomposition& td,
                    const Cascade& c, int v, int x, int y);

// Confinement record at a branch vertex: A and B list the labels whose left
// resp. right path stays inside the torso; C and D record, for paths that
// leave, the labels of the first exit and last re-entry vertex (left paths
// cross the right-child bag, right paths the left-child bag).
struct ConfinementSets {
  VertexSet A, B;
  std::vector<std::array<int, 3>> C, D;
  bool operator==(const ConfinementSets&) const = default;
};
ConfinementSets confinement_sets(const Graph& g, const TreeDecomposition& td,
                                 const Cascade& c, int t0);

bool is_regular(const Graph& g, const TreeDecomposition& td, const Cascade& c);

// Composition with a monotone re-rooting: labels transfer unchanged and the
// linkage at each surviving branch vertex is stitched from the specified
// linkages along the skipped levels. Throws when stitching does not yield
// disjoint simple paths.
Cascade compose_subcascade(const Graph& g, const TreeDecomposition& td,
                           const Cascade& c, const PatternTree& sub,
                           const std::map<int, int>& gamma);

// Composition with a weakly monotone re-rooting: labels transfer, linkages
// are dropped.
Cascade compose_weak_subcascade(const Cascade& c, const PatternTree& sub,
                                const std::map<int, int>& gamma);

// Exhaustive search for a monotone re-rooting of height a whose composed
// cascade has the same confinement record at every branch vertex.
std::optional<Cascade> regularize(const Graph& g, const TreeDecomposition& td,
                                  const Cascade& c, int a,
                                  long long cap = 4'000'000);

// ---------------------------------------------------------------------------
// Routing properties at a branch vertex, checked inside its torso.

enum class PropertyTag { A, B, Cij, AB, C };

// Three internally disjoint paths from one centre; legs may have length
// zero, but at least two must not.
struct Tripod {
  int center = -1;
  std::array<PathInGraph, 3> legs;  // each oriented centre -> foot
  std::array<int, 3> feet() const;
  VertexSet vertices() const;
};

struct PropertyWitness {
  PropertyTag tag = PropertyTag::A;
  int t0 = -1;
  int i = 0, j = 0;
  std::vector<Tripod> tripods;     // A and B carry the two tripods
  std::vector<PathInGraph> paths;  // Cij: R_i,R_j,R_ij,R; AB: L_i,L_j,R_i,R_j;
                                   // C: the 3k/2 common subpaths
  bool mirrored = false;  // B matched with the two shared legs swapped
  VertexSet setA, setB;   // C: the split of the labels
};

enum class SearchStatus { Found, Refuted, Inconclusive };

struct PropertyCheck {
  SearchStatus status = SearchStatus::Refuted;
  std::optional<PropertyWitness> witness;
};

// Exhaustive witness search for tag at t0 with label pair (i, j); tag C
// ignores i and j and uses the confinement record and specified linkages.
PropertyCheck check_property(const Graph& g, const TreeDecomposition& td,
                             const Cascade& c, int t0, PropertyTag tag, int i,
                             int j, long long cap = 2'000'000);

std::vector<std::string> validate_witness(const Graph& g,
                                          const TreeDecomposition& td,
                                          const Cascade& c,
                                          const PropertyWitness& w);

// ---------------------------------------------------------------------------
// Taming: exhaustive search over weakly monotone height-one re-rootings for
// a label pair whose branch vertex carries A or B.

struct TameReport {
  bool found = false;
  int i = 0, j = 0;
  PropertyTag tag = PropertyTag::A;
  Cascade sub;
  std::map<int, int> gamma;
  PropertyWitness witness;
  std::string note;  // honest account of refuted / capped searches
};

TameReport tame(const Graph& g, const TreeDecomposition& td, const Cascade& c,
                long long cap = 2'000'000);

// Restriction of an ordered cascade to the pattern subtree hanging below a
// height-one minor vertex; pure relabelling.
Cascade restrict_to_child(const Cascade& c, int minor_child);

// ---------------------------------------------------------------------------
// The growth bounds that size the searches in principle. They are kept as
// documented formulas and never drive the desk-scale searches.

long long tower_g(int a, int b, int k);
long long tower_color_height(int a, int k);            // g(a, a, k)
long long tower_cascade_height(int a, int h);          // (a+2)h + a
long long tower_refine_height(int a, int b, int w);    // (2(a+2)w + 2)b
long long tower_tame_height(int target_h, int w);

// ---------------------------------------------------------------------------
// Certificates.

std::string cascade_to_json(const Cascade& c);
Cascade cascade_from_json(const std::string& text);

}  // namespace tdlab
