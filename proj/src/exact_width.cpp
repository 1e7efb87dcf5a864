#include "tdlab/exact_width.hpp"

#include <bit>

namespace tdlab {

namespace {

struct Masks {
  std::vector<int> ids;            // index -> vertex id
  std::map<int, int> idx;          // vertex id -> index
  std::vector<unsigned> adj;       // index -> neighbor mask
  explicit Masks(const Graph& g) {
    for (int v : g.vertices()) {
      idx[v] = static_cast<int>(ids.size());
      ids.push_back(v);
    }
    adj.assign(ids.size(), 0);
    for (auto [u, v] : g.edges()) {
      adj[idx[u]] |= 1u << idx[v];
      adj[idx[v]] |= 1u << idx[u];
    }
  }
};

// Vertices outside eliminated|{v} reachable from v through eliminated ones:
// the neighborhood v would have after contracting the eliminated prefix away.
unsigned fill_neighbors(const Masks& mk, unsigned eliminated, int v) {
  unsigned seen = mk.adj[v];
  unsigned grow = seen & eliminated;
  while (grow) {
    unsigned next = 0;
    while (grow) {
      int u = std::countr_zero(grow);
      grow &= grow - 1;
      next |= mk.adj[u] & ~seen;
    }
    seen |= next;
    grow = next & eliminated;
  }
  return seen & ~eliminated & ~(1u << v);
}

}  // namespace

TreewidthResult exact_treewidth(const Graph& g, int cap) {
  int n = g.n();
  if (n > cap)
    throw std::invalid_argument("exact_treewidth: " + std::to_string(n) +
                                " vertices exceeds cap " + std::to_string(cap));
  TreewidthResult out;
  if (n == 0) {
    out.value = -1;
    return out;
  }
  Masks mk(g);
  unsigned full = n == 32 ? ~0u : (1u << n) - 1;
  // best[S] = cheapest max fill-degree over orders eliminating exactly S first
  std::vector<int> best(full + 1, 0);
  for (unsigned S = 1; S <= full; ++S) {
    int b = n + 1;
    for (unsigned rest = S; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      unsigned R = S & ~(1u << v);
      int cost = std::max(best[R], std::popcount(fill_neighbors(mk, R, v)));
      b = std::min(b, cost);
    }
    best[S] = b;
  }
  out.value = best[full];

  // Recover one optimal elimination order, then the standard bag/parent
  // construction over it.
  std::vector<int> elim(n);
  unsigned S = full;
  for (int i = n - 1; i >= 0; --i) {
    for (unsigned rest = S; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      unsigned R = S & ~(1u << v);
      if (std::max(best[R], std::popcount(fill_neighbors(mk, R, v))) == best[S]) {
        elim[i] = v;
        S = R;
        break;
      }
    }
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[elim[i]] = i;
  TreeDecomposition td;
  std::vector<Edge> tree_edges;
  VertexSet nodes;
  unsigned done = 0;
  for (int i = 0; i < n; ++i) {
    int v = elim[i];
    unsigned q = fill_neighbors(mk, done, v);
    VertexSet bag{mk.ids[v]};
    int parent = -1;
    for (unsigned rest = q; rest;) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      bag.push_back(mk.ids[u]);
      if (parent < 0 || pos[u] < pos[parent]) parent = u;
    }
    nodes.push_back(i);
    td.bags[i] = make_set(std::move(bag));
    if (parent >= 0)
      tree_edges.push_back(norm_edge(i, pos[parent]));
    else if (i + 1 < n)
      tree_edges.push_back(norm_edge(i, i + 1));
    else if (i > 0)
      tree_edges.push_back(norm_edge(i, i - 1));
    done |= 1u << v;
  }
  // A parentless early node attached forward may duplicate edges; Graph dedups.
  td.tree = Graph(nodes, tree_edges);
  out.witness = std::move(td);
  return out;
}

PathwidthResult exact_pathwidth(const Graph& g, int cap) {
  int n = g.n();
  if (n > cap)
    throw std::invalid_argument("exact_pathwidth: " + std::to_string(n) +
                                " vertices exceeds cap " + std::to_string(cap));
  PathwidthResult out;
  if (n == 0) {
    out.value = -1;
    return out;
  }
  Masks mk(g);
  unsigned full = (1u << n) - 1;
  auto boundary = [&](unsigned S) {
    int b = 0;
    for (unsigned rest = S; rest;) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      if (mk.adj[u] & ~S) ++b;
    }
    return b;
  };
  std::vector<int> f(full + 1, 0);
  for (unsigned S = 1; S <= full; ++S) {
    int inner = n + 1;
    for (unsigned rest = S; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      inner = std::min(inner, f[S & ~(1u << v)]);
    }
    f[S] = std::max(boundary(S), inner);
  }
  out.value = f[full];

  std::vector<int> order(n);
  unsigned S = full;
  for (int i = n - 1; i >= 0; --i) {
    for (unsigned rest = S; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      unsigned R = S & ~(1u << v);
      if (std::max(boundary(S), f[R]) == f[S]) {
        order[i] = v;
        S = R;
        break;
      }
    }
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  for (int i = 0; i < n; ++i) {
    VertexSet bag{mk.ids[order[i]]};
    for (int u = 0; u < n; ++u)
      if (pos[u] < i) {
        bool live = false;
        for (unsigned rest = mk.adj[u]; rest && !live;) {
          int w = std::countr_zero(rest);
          rest &= rest - 1;
          live = pos[w] >= i;
        }
        if (live) bag.push_back(mk.ids[u]);
      }
    out.witness.bags.push_back(make_set(std::move(bag)));
    out.layout.push_back(mk.ids[order[i]]);
  }
  return out;
}

}  // namespace tdlab
