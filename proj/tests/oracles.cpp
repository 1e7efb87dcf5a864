#include "oracles.hpp"

#include <numeric>

#include "tdlab/connectivity.hpp"

namespace tdlab::oracle {

std::vector<int> cut_vertices_brute(const Graph& g) {
  std::vector<int> out;
  for (int v : g.vertices()) {
    VertexSet comp = component_of(g, v);
    Graph h = g.minus_vertex(v);
    bool cut = false;
    for (size_t i = 0; i < comp.size() && !cut; ++i) {
      for (size_t j = i + 1; j < comp.size() && !cut; ++j) {
        if (comp[i] == v || comp[j] == v) continue;
        cut = shortest_path(h, comp[i], comp[j]).empty();
      }
    }
    if (cut) out.push_back(v);
  }
  return out;
}

int min_separator_brute(const Graph& g, const VertexSet& S, const VertexSet& T) {
  const VertexSet& vs = g.vertices();
  int n = g.n();
  auto separated = [&](const VertexSet& X) {
    VertexSet s_live = set_diff(set_inter(S, vs), X);
    VertexSet t_live = set_diff(set_inter(T, vs), X);
    if (!set_inter(s_live, t_live).empty()) return false;
    Graph h = g.minus_vertices(X);
    for (int s : s_live)
      for (int t : t_live)
        if (!shortest_path(h, s, t).empty()) return false;
    return true;
  };
  for (int k = 0; k <= n; ++k) {
    // all k-subsets of vertices
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      VertexSet X;
      for (int i : pick) X.push_back(vs[i]);
      if (separated(X)) return k;
      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (k == 0 && n == 0) break;
  }
  return n;
}

bool has_minor_brute(const Graph& host, const Graph& pattern) {
  if (pattern.n() == 0) return true;
  int hn = host.n();
  int pn = pattern.n();
  const VertexSet& hv = host.vertices();
  const VertexSet& pv = pattern.vertices();
  // assignment[i] in [0..pn], 0 = unused, else branch set of pv[a-1]
  std::vector<int> assign(hn, 0);
  while (true) {
    bool ok = true;
    for (int p = 1; p <= pn && ok; ++p) {
      VertexSet bs;
      for (int i = 0; i < hn; ++i)
        if (assign[i] == p) bs.push_back(hv[i]);
      if (bs.empty() || !is_connected(host.induced(bs))) ok = false;
    }
    if (ok) {
      bool edges_ok = true;
      for (auto [a, b] : pattern.edges()) {
        int pa = static_cast<int>(std::lower_bound(pv.begin(), pv.end(), a) -
                                  pv.begin()) + 1;
        int pb = static_cast<int>(std::lower_bound(pv.begin(), pv.end(), b) -
                                  pv.begin()) + 1;
        bool touch = false;
        for (auto [u, v] : host.edges()) {
          int iu = static_cast<int>(std::lower_bound(hv.begin(), hv.end(), u) -
                                    hv.begin());
          int iv = static_cast<int>(std::lower_bound(hv.begin(), hv.end(), v) -
                                    hv.begin());
          if ((assign[iu] == pa && assign[iv] == pb) ||
              (assign[iu] == pb && assign[iv] == pa)) {
            touch = true;
            break;
          }
        }
        if (!touch) {
          edges_ok = false;
          break;
        }
      }
      if (edges_ok) return true;
    }
    int i = 0;
    while (i < hn && assign[i] == pn) assign[i++] = 0;
    if (i == hn) break;
    ++assign[i];
  }
  return false;
}

namespace {

int order_width_tw(const Graph& g, const std::vector<int>& order) {
  // simulate elimination: neighbors clique-fill
  std::map<int, VertexSet> nb;
  for (int v : g.vertices()) nb[v] = g.neighbors(v);
  int width = 0;
  VertexSet gone;
  for (int v : order) {
    VertexSet cur = set_diff(nb[v], gone);
    width = std::max(width, static_cast<int>(cur.size()));
    for (int a : cur)
      for (int b : cur)
        if (a != b && !set_contains(nb[a], b)) nb[a] = set_union(nb[a], {b});
    gone = set_union(gone, {v});
  }
  return width;
}

int order_width_pw(const Graph& g, const std::vector<int>& order) {
  // vertex separation: prefix boundary sizes along the layout
  int width = 0;
  VertexSet placed;
  for (size_t i = 0; i < order.size(); ++i) {
    placed = set_union(placed, {order[i]});
    int boundary = 0;
    for (int u : placed)
      for (int w : g.neighbors(u))
        if (!set_contains(placed, w)) {
          ++boundary;
          break;
        }
    width = std::max(width, boundary);
  }
  return width;
}

template <typename F>
int min_over_orders(const Graph& g, F f) {
  std::vector<int> order = g.vertices();
  int best = g.n();
  do {
    best = std::min(best, f(g, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

int treewidth_brute(const Graph& g) {
  if (g.n() == 0) return -1;
  return min_over_orders(g, order_width_tw);
}

int pathwidth_brute(const Graph& g) {
  if (g.n() == 0) return -1;
  return min_over_orders(g, order_width_pw);
}

namespace {

std::vector<Graph> branch_trees(const Graph& tree, const std::vector<int>& path) {
  std::vector<Graph> out;
  for (const auto& br : p_bridges(tree, path))
    out.push_back(tree.induced(br.verts));
  return out;
}

std::vector<Graph> sorted_desc_defn(std::vector<Graph> ts) {
  std::stable_sort(ts.begin(), ts.end(), [](const Graph& x, const Graph& y) {
    return compare_trees_defn(x, y) == Cmp::Greater;
  });
  return ts;
}

// all maximal paths (leaf to leaf; single vertex when the tree is trivial)
std::vector<std::vector<int>> maximal_paths(const Graph& tree) {
  if (tree.n() == 1) return {{tree.vertices()[0]}};
  std::vector<int> leaves;
  for (int v : tree.vertices())
    if (tree.degree(v) == 1) leaves.push_back(v);
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < leaves.size(); ++i)
    for (size_t j = i + 1; j < leaves.size(); ++j)
      out.push_back(shortest_path(tree, leaves[i], leaves[j]));
  return out;
}

}  // namespace

bool dominated_defn(const std::vector<Graph>& A, const std::vector<Graph>& B) {
  std::vector<Graph> As = sorted_desc_defn(A);
  std::vector<Graph> Bs = sorted_desc_defn(B);
  size_t k = As.size(), l = Bs.size();
  auto equiv_prefix = [&](size_t p) {
    for (size_t i = 0; i < p; ++i)
      if (compare_trees_defn(As[i], Bs[i]) != Cmp::Equal) return false;
    return true;
  };
  if (k <= l && equiv_prefix(k)) return true;
  for (size_t p = 0; p < std::min(k, l); ++p)
    if (equiv_prefix(p) && compare_trees_defn(As[p], Bs[p]) == Cmp::Less)
      return true;
  return false;
}

std::vector<int> spine_defn(const Graph& tree) {
  auto paths = maximal_paths(tree);
  std::vector<std::vector<Graph>> lists;
  for (const auto& p : paths) lists.push_back(branch_trees(tree, p));
  for (size_t i = 0; i < paths.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < paths.size() && minimal; ++j)
      minimal = dominated_defn(lists[i], lists[j]);
    if (minimal) return paths[i];
  }
  throw std::logic_error("spine_defn: no minimal maximal path");
}

Cmp compare_trees_defn(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) return a.n() < b.n() ? Cmp::Less : Cmp::Greater;
  auto La = branch_trees(a, spine_defn(a));
  auto Lb = branch_trees(b, spine_defn(b));
  bool ab = dominated_defn(La, Lb);
  bool ba = dominated_defn(Lb, La);
  if (ab && ba) return Cmp::Equal;
  if (ab) return Cmp::Less;
  if (ba) return Cmp::Greater;
  throw std::logic_error("tree order oracle: incomparable multisets");
}

}  // namespace tdlab::oracle
