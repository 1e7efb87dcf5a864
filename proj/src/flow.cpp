#include "tdlab/flow.hpp"

#include <deque>

#include "tdlab/connectivity.hpp"

namespace tdlab {

namespace {

// Unit-vertex-capacity flow network: vertex v splits into in-node 2i and
// out-node 2i+1 joined by a capacity-1 arc, so disjoint augmenting paths
// correspond to internally vertex-disjoint graph paths.
struct Net {
  struct Arc {
    int to, cap, flow, rev;
  };
  std::vector<std::vector<Arc>> arcs;
  explicit Net(int nodes) : arcs(nodes) {}
  void add(int u, int v, int cap) {
    arcs[u].push_back({v, cap, 0, static_cast<int>(arcs[v].size())});
    arcs[v].push_back({u, 0, 0, static_cast<int>(arcs[u].size()) - 1});
  }
  bool augment(int src, int snk) {
    std::vector<std::pair<int, int>> pred(arcs.size(), {-1, -1});
    pred[src] = {src, -1};
    std::deque<int> q{src};
    while (!q.empty() && pred[snk].first < 0) {
      int v = q.front();
      q.pop_front();
      for (size_t i = 0; i < arcs[v].size(); ++i) {
        const Arc& a = arcs[v][i];
        if (a.cap - a.flow > 0 && pred[a.to].first < 0) {
          pred[a.to] = {v, static_cast<int>(i)};
          q.push_back(a.to);
        }
      }
    }
    if (pred[snk].first < 0) return false;
    for (int v = snk; v != src;) {
      auto [u, i] = pred[v];
      arcs[u][i].flow += 1;
      arcs[arcs[u][i].to][arcs[u][i].rev].flow -= 1;
      v = u;
    }
    return true;
  }
  std::vector<bool> residual_reachable(int src) const {
    std::vector<bool> seen(arcs.size(), false);
    seen[src] = true;
    std::deque<int> q{src};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const Arc& a : arcs[v]) {
        if (a.cap - a.flow > 0 && !seen[a.to]) {
          seen[a.to] = true;
          q.push_back(a.to);
        }
      }
    }
    return seen;
  }
};

Linkage run(const Graph& g, const VertexSet& S, const VertexSet& T, int limit) {
  std::map<int, int> idx;
  int k = 0;
  for (int v : g.vertices()) idx[v] = k++;
  int n = g.n();
  int src = 2 * n, snk = 2 * n + 1;
  Net net(2 * n + 2);
  auto vin = [&](int v) { return 2 * idx[v]; };
  auto vout = [&](int v) { return 2 * idx[v] + 1; };
  // Only vertex arcs are unit; terminal and edge arcs stay uncuttable so
  // the min cut consists purely of vertices.
  int inf = n + 1;
  for (int v : g.vertices()) net.add(vin(v), vout(v), 1);
  for (auto [u, v] : g.edges()) {
    net.add(vout(u), vin(v), inf);
    net.add(vout(v), vin(u), inf);
  }
  for (int s : S)
    if (g.has_vertex(s)) net.add(src, vin(s), inf);
  for (int t : T)
    if (g.has_vertex(t)) net.add(vout(t), snk, inf);

  int value = 0;
  bool optimal = false;
  while (true) {
    if (limit >= 0 && value >= limit) break;
    if (!net.augment(src, snk)) {
      optimal = true;
      break;
    }
    ++value;
  }
  if (limit < 0) optimal = true;

  Linkage out;
  if (optimal) {
    auto seen = net.residual_reachable(src);
    for (int v : g.vertices())
      if (seen[vin(v)] && !seen[vout(v)]) out.separator.push_back(v);
    out.separator = make_set(out.separator);
  }

  // Decompose the integral flow into unit paths. Every arc carries at most
  // one unit because each passes through some unit vertex arc.
  for (Net::Arc& first : net.arcs[src]) {
    if (first.flow < 1) continue;
    first.flow -= 1;
    PathInGraph p;
    int cur = first.to;
    while (cur != snk) {
      if (cur % 2 == 0 && cur < 2 * n) {
        // in-node; crossing to the out-node records the graph vertex
        p.verts.push_back(g.vertices()[cur / 2]);
      }
      bool stepped = false;
      for (Net::Arc& a : net.arcs[cur]) {
        if (a.cap > 0 && a.flow >= 1) {
          a.flow -= 1;
          cur = a.to;
          stepped = true;
          break;
        }
      }
      if (!stepped) throw std::logic_error("flow decomposition stuck");
    }
    out.paths.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Linkage disjoint_paths(const Graph& g, const VertexSet& S, const VertexSet& T) {
  return run(g, S, T, -1);
}

Linkage disjoint_paths_capped(const Graph& g, const VertexSet& S,
                              const VertexSet& T, int limit) {
  return run(g, S, T, limit);
}

bool validate_linkage(const Graph& g, const VertexSet& S, const VertexSet& T,
                      const Linkage& l) {
  VertexSet used;
  for (const auto& p : l.paths) {
    if (!is_valid_path(g, p)) return false;
    if (!set_contains(S, p.front()) || !set_contains(T, p.back())) return false;
    for (int v : p.verts) used.push_back(v);
  }
  VertexSet dedup = make_set(used);
  if (dedup.size() != used.size()) return false;  // pairwise disjoint
  if (!l.separator.empty() || l.paths.empty()) {
    if (!is_separator(g, S, T, l.separator)) return false;
    if (l.separator.size() != l.paths.size()) return false;
  }
  return true;
}

bool is_separator(const Graph& g, const VertexSet& S, const VertexSet& T,
                  const VertexSet& X) {
  // Any S-T path avoiding X would survive in g - X with live endpoints.
  VertexSet s_live = set_diff(set_inter(S, g.vertices()), X);
  VertexSet t_live = set_diff(set_inter(T, g.vertices()), X);
  if (!set_inter(s_live, t_live).empty()) return false;
  Graph h = g.minus_vertices(X);
  for (const auto& comp : components(h)) {
    if (!set_inter(comp, s_live).empty() && !set_inter(comp, t_live).empty())
      return false;
  }
  return true;
}

}  // namespace tdlab
