#pragma once

#include <optional>
#include <stdexcept>

#include "tdlab/decomposition.hpp"
#include "tdlab/tree_order.hpp"
#include "tdlab/wprops.hpp"

namespace tdlab {

// Level-n cell: a component of the decomposition tree restricted to nodes
// whose bag holds at least n vertices, together with the rank of that
// component as an unlabeled tree.
struct Cell {
  int n = 0;
  VertexSet nodes;
  RankKey rank;
};

std::vector<Cell> enumerate_cells(const TreeDecomposition& td, int n_min);

// Ranks of all cells, grouped by level and sorted descending within each
// level. Profiles compare from the top level down; within a level the
// descending rank lists compare lexicographically and a proper prefix
// counts as smaller. Every surgery below strictly lowers the profile.
struct SizeProfile {
  std::vector<std::vector<RankKey>> levels;  // index = bag-size threshold
};

SizeProfile size_profile(const TreeDecomposition& td);
Cmp compare_profiles(const SizeProfile& a, const SizeProfile& b);
// Requires both decompositions to cover the same vertex set.
Cmp compare_size(const TreeDecomposition& a, const TreeDecomposition& b);
std::string profile_digest(const SizeProfile& p);

struct SurgeryError : std::runtime_error {
  explicit SurgeryError(const std::string& what) : std::runtime_error(what) {}
};

// Result of one rewrite. Every constructor re-validates the output against
// the graph and re-compares profiles, so `change` is always Less and the
// new decomposition is always a decomposition of the same graph; a rewrite
// that cannot deliver that throws SurgeryError instead.
struct SurgeryOutcome {
  TreeDecomposition td;
  std::string kind;
  std::vector<int> locus;
  std::string before_digest, after_digest;
  Cmp change = Cmp::Less;
};

// Merge node t2 into t1 when their bags are equal; branches at t2 other
// than the one holding t1 are re-hung onto t1. Works for non-adjacent
// duplicates as well.
SurgeryOutcome w4_merge(const Graph& g, const TreeDecomposition& td, int t1,
                        int t2);

// Delete a branch at t0 whose bags contribute nothing outside t0's bag.
SurgeryOutcome w5_prune(const Graph& g, const TreeDecomposition& td, int t0,
                        const VertexSet& branch);

// Subdivide the tree edge t1t2 with a new node carrying the bag
// intersection; applicable only when neither bag contains the other.
SurgeryOutcome surgery_subdivide(const Graph& g, const TreeDecomposition& td,
                                 int t1, int t2);

// Vertices appearing in bags between t1 and t2 inclusive: the bags of t1,
// t2 and of every node lying between them in the tree.
Graph pair_torso(const Graph& g, const TreeDecomposition& td, int t1, int t2);

// Two-terminal split certificate: with x the intersection of the end bags,
// the torso minus x falls apart into h1 and h2 with no edges between them,
// each end bag meets both sides in exactly k vertices, every bag on the
// tree path meets both sides in at least k, and t0 is a path node meeting
// both sides in more than k.
struct PathSplitCertificate {
  int t1 = -1, t2 = -1, t0 = -1;
  VertexSet x;
  VertexSet h1, h2;
  int k = 0;
};

std::optional<PathSplitCertificate> find_pathsplit(const Graph& g,
                                                   const TreeDecomposition& td);

// Duplicate the region between the terminals and route h1 through one copy
// and h2 through the other; the oversized node t0 is replaced by thinner
// copies on both sides.
SurgeryOutcome surgery_pathsplit(const Graph& g, const TreeDecomposition& td,
                                 const PathSplitCertificate& c);

// Rewire the decomposition around a splitting triad none of whose bags
// meets the center bag outside the common ground. The center's cell is
// re-spined: the off-spine arm is cut at the last node whose trace of one
// spine part stays constant, side branches are re-hung next to the spine,
// and the center is merged with two of its cell neighbors. Throws
// SurgeryError (message begins with "inconclusive") when the certificate
// does not exhibit the shape this rewrite needs.
SurgeryOutcome surgery_w7(const Graph& g, const TreeDecomposition& td,
                          const TriadSplit& triad);

struct SurgeryStep {
  int step = 0;
  std::string kind;
  std::vector<int> locus;
  std::string before_digest, after_digest;
};

struct MinimizeResult {
  TreeDecomposition td;
  std::vector<SurgeryStep> log;
  bool reached_fixpoint = false;
  std::vector<std::string> notes;  // honest reports: skipped or stuck rewrites
};

// Apply surgeries until none fits or the step limit is hit. Scheduling is
// deterministic: duplicate-bag merge, idle-branch prune, subdivide,
// pathsplit, triad rewire, each at its lowest locus. Each step strictly
// lowers the size profile, so the loop terminates; the result is a local
// fixpoint, not a claim of global minimality.
MinimizeResult minimize(const Graph& g, const TreeDecomposition& td,
                        int step_limit = 10000);

}  // namespace tdlab
