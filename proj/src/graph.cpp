#include "tdlab/graph.hpp"

#include <sstream>

namespace tdlab {

VertexSet make_set(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool set_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_inter(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_diff(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string set_to_string(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << '}';
  return os.str();
}

Graph::Graph(VertexSet vertices, std::vector<Edge> edges)
    : verts_(std::move(vertices)) {
  std::sort(verts_.begin(), verts_.end());
  verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
  if (!verts_.empty() && verts_.front() < 0)
    throw std::invalid_argument("negative vertex id");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("loop edge " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!has_vertex(u) || !has_vertex(v))
      throw std::invalid_argument("edge endpoint not a vertex");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  build_adj();
}

void Graph::build_adj() {
  adj_.clear();
  for (int v : verts_) adj_[v];
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& [v, nb] : adj_) std::sort(nb.begin(), nb.end());
}

Graph Graph::empty(int n) {
  VertexSet vs(n);
  for (int i = 0; i < n; ++i) vs[i] = i;
  return Graph(std::move(vs), {});
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  VertexSet vs(n);
  for (int i = 0; i < n; ++i) vs[i] = i;
  return Graph(std::move(vs), edges);
}

Graph Graph::path_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return from_edges(n, es);
}

Graph Graph::cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back(norm_edge(i, (i + 1) % n));
  return from_edges(n, es);
}

Graph Graph::complete_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return from_edges(n, es);
}

Graph Graph::complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.push_back({i, a + j});
  return from_edges(a + b, es);
}

Graph Graph::star(int leaves) { return complete_bipartite(1, leaves); }

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  auto [a, b] = norm_edge(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

const std::vector<int>& Graph::neighbors(int v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw std::out_of_range("no vertex " + std::to_string(v));
  return it->second;
}

Graph Graph::induced(const VertexSet& keep) const {
  VertexSet vs = set_inter(verts_, keep);
  std::vector<Edge> es;
  for (auto [u, v] : edges_)
    if (set_contains(vs, u) && set_contains(vs, v)) es.push_back({u, v});
  return Graph(std::move(vs), std::move(es));
}

Graph Graph::minus_vertex(int v) const { return minus_vertices({v}); }

Graph Graph::minus_vertices(const VertexSet& drop) const {
  return induced(set_diff(verts_, drop));
}

Graph Graph::with_edge(int u, int v) const {
  std::vector<Edge> es = edges_;
  es.push_back(norm_edge(u, v));
  return Graph(verts_, std::move(es));
}

Graph Graph::with_vertex(int v) const {
  VertexSet vs = verts_;
  vs.push_back(v);
  return Graph(make_set(std::move(vs)), edges_);
}

Graph Graph::compacted() const {
  std::map<int, int> rank;
  int i = 0;
  for (int v : verts_) rank[v] = i++;
  std::vector<Edge> es;
  for (auto [u, v] : edges_) es.push_back({rank[u], rank[v]});
  return from_edges(n(), es);
}

std::string Graph::to_string() const {
  std::ostringstream os;
  os << "G(V=" << set_to_string(verts_) << ", E=[";
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (i) os << ' ';
    os << edges_[i].first << '-' << edges_[i].second;
  }
  os << "])";
  return os.str();
}

bool is_valid_path(const Graph& g, const PathInGraph& p) {
  if (p.verts.empty()) return false;
  VertexSet seen;
  for (int v : p.verts) {
    if (!g.has_vertex(v)) return false;
    seen.push_back(v);
  }
  if (make_set(seen).size() != p.verts.size()) return false;  // no repeats
  for (size_t i = 0; i + 1 < p.verts.size(); ++i)
    if (!g.has_edge(p.verts[i], p.verts[i + 1])) return false;
  return true;
}

VertexSet path_vertex_set(const PathInGraph& p) { return make_set(p.verts); }

std::vector<Edge> path_edges(const PathInGraph& p) {
  std::vector<Edge> es;
  for (size_t i = 0; i + 1 < p.verts.size(); ++i)
    es.push_back(norm_edge(p.verts[i], p.verts[i + 1]));
  std::sort(es.begin(), es.end());
  return es;
}

}  // namespace tdlab
