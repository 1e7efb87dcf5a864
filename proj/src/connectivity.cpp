#include "tdlab/connectivity.hpp"

#include <deque>
#include <set>

namespace tdlab {

std::vector<VertexSet> components(const Graph& g) {
  std::set<int> todo(g.vertices().begin(), g.vertices().end());
  std::vector<VertexSet> out;
  while (!todo.empty()) {
    int start = *todo.begin();
    std::deque<int> q{start};
    VertexSet comp{start};
    todo.erase(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : g.neighbors(v)) {
        if (todo.count(w)) {
          todo.erase(w);
          comp.push_back(w);
          q.push_back(w);
        }
      }
    }
    out.push_back(make_set(std::move(comp)));
  }
  return out;
}

bool is_connected(const Graph& g) {
  return g.n() <= 1 || components(g).size() == 1;
}

VertexSet component_of(const Graph& g, int v) {
  for (auto& c : components(g))
    if (set_contains(c, v)) return c;
  throw std::out_of_range("component_of: vertex not in graph");
}

std::map<int, int> bfs_distances(const Graph& g, int src) {
  std::map<int, int> dist;
  dist[src] = 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v)) {
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> shortest_path(const Graph& g, int src, int dst) {
  std::map<int, int> parent;
  parent[src] = src;
  std::deque<int> q{src};
  while (!q.empty() && !parent.count(dst)) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v)) {
      if (!parent.count(w)) {
        parent[w] = v;
        q.push_back(w);
      }
    }
  }
  if (!parent.count(dst)) return {};
  std::vector<int> path{dst};
  while (path.back() != src) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> cut_vertices(const Graph& g) {
  std::vector<int> cuts;
  size_t base = components(g).size();
  for (int v : g.vertices()) {
    Graph h = g.minus_vertex(v);
    if (h.n() == 0) continue;
    // v is a cut vertex iff removing it increases the component count of
    // its own component, i.e. total components grow.
    if (components(h).size() > base - (g.degree(v) == 0 ? 1 : 0)) cuts.push_back(v);
  }
  return cuts;
}

bool is_two_connected(const Graph& g) {
  return g.n() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

bool is_tree(const Graph& g) {
  return is_connected(g) && g.m() == g.n() - 1;
}

namespace {

std::vector<int> find_cycle_through_edge(const Graph& g, int u, int v) {
  // u..v path avoiding the edge uv, then close the cycle.
  Graph h(g.vertices(), [&] {
    std::vector<Edge> es;
    for (auto e : g.edges())
      if (e != norm_edge(u, v)) es.push_back(e);
    return es;
  }());
  auto p = shortest_path(h, u, v);
  return p;  // cycle = p plus the uv edge
}

}  // namespace

std::vector<std::vector<int>> ear_decomposition(const Graph& g) {
  if (!is_two_connected(g)) return {};
  auto [u0, v0] = g.edges().front();
  std::vector<int> cyc = find_cycle_through_edge(g, u0, v0);
  if (cyc.empty()) return {};
  std::vector<std::vector<int>> ears{cyc};
  VertexSet placed = make_set(cyc);
  std::set<Edge> used;
  for (size_t i = 0; i + 1 < cyc.size(); ++i)
    used.insert(norm_edge(cyc[i], cyc[i + 1]));
  used.insert(norm_edge(u0, v0));

  while (used.size() < static_cast<size_t>(g.m())) {
    // Pick the first unused edge with at least one placed endpoint and grow
    // an ear: walk through unplaced vertices until hitting placed again.
    bool progressed = false;
    for (auto [a, b] : g.edges()) {
      if (used.count({a, b})) continue;
      if (!set_contains(placed, a) && !set_contains(placed, b)) continue;
      int start = set_contains(placed, a) ? a : b;
      int next = start == a ? b : a;
      std::vector<int> ear{start, next};
      used.insert({a, b});
      while (!set_contains(placed, ear.back())) {
        int cur = ear.back();
        int prev = ear[ear.size() - 2];
        int step = -1;
        for (int w : g.neighbors(cur)) {
          if (w == prev) continue;
          if (used.count(norm_edge(cur, w))) continue;
          // Prefer closing into placed vertices, else continue outward.
          if (set_contains(placed, w)) {
            step = w;
            break;
          }
          if (step < 0) step = w;
        }
        if (step < 0) break;  // dead end; cannot happen in 2-connected graphs
        used.insert(norm_edge(cur, step));
        ear.push_back(step);
      }
      if (!set_contains(placed, ear.back())) return {};
      for (int v : ear) placed = set_union(placed, {v});
      ears.push_back(ear);
      progressed = true;
      break;
    }
    if (!progressed) return {};
  }
  return ears;
}

bool validate_ear_decomposition(const Graph& g,
                                const std::vector<std::vector<int>>& ears) {
  if (ears.empty()) return false;
  const auto& cyc = ears[0];
  if (cyc.size() < 3) return false;
  std::set<Edge> used;
  for (size_t i = 0; i + 1 < cyc.size(); ++i) {
    if (!g.has_edge(cyc[i], cyc[i + 1])) return false;
    used.insert(norm_edge(cyc[i], cyc[i + 1]));
  }
  if (!g.has_edge(cyc.front(), cyc.back())) return false;
  used.insert(norm_edge(cyc.front(), cyc.back()));
  VertexSet placed = make_set(cyc);
  if (placed.size() != cyc.size()) return false;
  for (size_t k = 1; k < ears.size(); ++k) {
    const auto& ear = ears[k];
    if (ear.size() < 2) return false;
    if (!set_contains(placed, ear.front()) || !set_contains(placed, ear.back()))
      return false;
    for (size_t i = 1; i + 1 < ear.size(); ++i)
      if (set_contains(placed, ear[i])) return false;
    for (size_t i = 0; i + 1 < ear.size(); ++i) {
      if (!g.has_edge(ear[i], ear[i + 1])) return false;
      if (!used.insert(norm_edge(ear[i], ear[i + 1])).second) return false;
    }
    for (int v : ear) placed = set_union(placed, {v});
  }
  return placed == g.vertices() && used.size() == static_cast<size_t>(g.m());
}

}  // namespace tdlab
