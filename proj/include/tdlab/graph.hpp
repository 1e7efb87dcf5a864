#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdlab {

// Sorted duplicate-free vertex identifier list. All helpers keep the
// sorted/unique invariant.
using VertexSet = std::vector<int>;
using Edge = std::pair<int, int>;

VertexSet make_set(std::vector<int> xs);
bool set_contains(const VertexSet& s, int v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_inter(const VertexSet& a, const VertexSet& b);
VertexSet set_diff(const VertexSet& a, const VertexSet& b);
bool set_subset(const VertexSet& a, const VertexSet& b);  // a subseteq b
std::string set_to_string(const VertexSet& s);

inline Edge norm_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple graph over small non-negative integer vertex ids. Value type;
// loops are rejected, parallel edges collapse. Vertex ids are preserved
// by induced subgraphs so certificates can always refer to host vertices.
class Graph {
 public:
  Graph() = default;
  Graph(VertexSet vertices, std::vector<Edge> edges);

  static Graph empty(int n);  // vertices 0..n-1, no edges
  static Graph from_edges(int n, const std::vector<Edge>& edges);
  static Graph path_graph(int n);
  static Graph cycle_graph(int n);
  static Graph complete_graph(int n);
  static Graph complete_bipartite(int a, int b);
  static Graph star(int leaves);

  int n() const { return static_cast<int>(verts_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const VertexSet& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_vertex(int v) const { return set_contains(verts_, v); }
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int max_vertex_id() const { return verts_.empty() ? -1 : verts_.back(); }

  Graph induced(const VertexSet& keep) const;
  Graph minus_vertex(int v) const;
  Graph minus_vertices(const VertexSet& drop) const;
  Graph with_edge(int u, int v) const;
  Graph with_vertex(int v) const;

  // Relabels vertices to 0..n-1 by sorted rank.
  Graph compacted() const;

  bool operator==(const Graph& o) const {
    return verts_ == o.verts_ && edges_ == o.edges_;
  }

  std::string to_string() const;

 private:
  VertexSet verts_;
  std::vector<Edge> edges_;  // sorted, first < second
  std::map<int, std::vector<int>> adj_;
  void build_adj();
};

// A path is a vertex sequence; consecutive entries must be adjacent in the
// host graph (or the path has a single vertex).
struct PathInGraph {
  std::vector<int> verts;
  int front() const { return verts.front(); }
  int back() const { return verts.back(); }
  int length() const { return static_cast<int>(verts.size()) - 1; }
};

bool is_valid_path(const Graph& g, const PathInGraph& p);
VertexSet path_vertex_set(const PathInGraph& p);
std::vector<Edge> path_edges(const PathInGraph& p);

}  // namespace tdlab
