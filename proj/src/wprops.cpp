#include "tdlab/wprops.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "tdlab/connectivity.hpp"

namespace tdlab {

std::optional<LinkednessViolation> check_linked(const Graph& g,
                                                const TreeDecomposition& td) {
  VertexSet ids = td.node_ids();
  for (size_t a = 0; a < ids.size(); ++a) {
    for (size_t b = a + 1; b < ids.size(); ++b) {
      int t1 = ids[a], t2 = ids[b];
      int need = -1;
      for (int t : tree_path(td.tree, t1, t2)) {
        int sz = static_cast<int>(td.bag(t).size());
        if (need < 0 || sz < need) need = sz;
      }
      Linkage l = disjoint_paths(g, td.bag(t1), td.bag(t2));
      if (l.size() < need) return LinkednessViolation{t1, t2, need, l};
    }
  }
  return std::nullopt;
}

std::optional<DuplicateBags> check_distinct_bags(const TreeDecomposition& td) {
  std::map<VertexSet, int> seen;
  for (int t : td.node_ids()) {
    auto [it, fresh] = seen.emplace(td.bag(t), t);
    if (!fresh) return DuplicateBags{it->second, t};
  }
  return std::nullopt;
}

std::optional<IdleBranch> check_branches_contribute(
    const TreeDecomposition& td) {
  for (int t0 : td.node_ids()) {
    for (const VertexSet& branch : tree_components_minus(td.tree, t0)) {
      if (set_diff(bags_union(td, branch), td.bag(t0)).empty())
        return IdleBranch{t0, branch};
    }
  }
  return std::nullopt;
}

VertexSet tied_vertices(const TreeDecomposition& td, int t0,
                        const VertexSet& branch) {
  return set_inter(td.bag(t0), bags_union(td, branch));
}

std::optional<PathInGraph> branch_confined_path(const Graph& g,
                                                const TreeDecomposition& td,
                                                int t0, const VertexSet& branch,
                                                int u, int v) {
  if (u == v) throw std::invalid_argument("confined path: equal ends");
  VertexSet priv = set_diff(bags_union(td, branch), td.bag(t0));
  // BFS from u through private vertices only; v must be entered last.
  std::map<int, int> parent;
  std::queue<int> q;
  for (int w : g.neighbors(u)) {
    if (set_contains(priv, w) && !parent.count(w)) {
      parent[w] = u;
      q.push(w);
    }
  }
  while (!q.empty()) {
    int w = q.front();
    q.pop();
    if (g.has_edge(w, v)) {
      std::vector<int> rev{v, w};
      for (int x = w; x != u; x = parent[x]) rev.push_back(parent[x]);
      std::reverse(rev.begin(), rev.end());
      return PathInGraph{rev};
    }
    for (int x : g.neighbors(w)) {
      if (set_contains(priv, x) && !parent.count(x)) {
        parent[x] = w;
        q.push(x);
      }
    }
  }
  return std::nullopt;
}

std::optional<UnjoinedTiedPair> check_tied_pairs_joined(
    const Graph& g, const TreeDecomposition& td) {
  for (int t0 : td.node_ids()) {
    for (const VertexSet& branch : tree_components_minus(td.tree, t0)) {
      VertexSet tied = tied_vertices(td, t0, branch);
      for (size_t a = 0; a < tied.size(); ++a)
        for (size_t b = a + 1; b < tied.size(); ++b)
          if (!branch_confined_path(g, td, t0, branch, tied[a], tied[b]))
            return UnjoinedTiedPair{t0, branch, tied[a], tied[b]};
    }
  }
  return std::nullopt;
}

int triad_center(const Graph& tree, int t1, int t2, int t3) {
  if (t1 == t2 || t1 == t3 || t2 == t3) return -1;
  // the median: last common vertex of the paths t1->t2 and t1->t3
  std::vector<int> p2 = tree_path(tree, t1, t2);
  std::vector<int> p3 = tree_path(tree, t1, t3);
  size_t i = 0;
  while (i < p2.size() && i < p3.size() && p2[i] == p3[i]) ++i;
  int m = p2[i - 1];
  if (m == t1 || m == t2 || m == t3) return -1;
  return m;
}

std::vector<int> torso_nodes(const TreeDecomposition& td, int t1, int t2,
                             int t3) {
  int c = triad_center(td.tree, t1, t2, t3);
  if (c < 0) throw std::invalid_argument("torso: not a triad");
  VertexSet keep = td.node_ids();
  for (int ti : {t1, t2, t3}) {
    for (const VertexSet& comp : tree_components_minus(td.tree, ti))
      if (set_contains(comp, c)) keep = set_inter(keep, comp);
  }
  keep = set_union(keep, make_set({t1, t2, t3}));
  return keep;
}

Graph triad_torso(const Graph& g, const TreeDecomposition& td, int t1, int t2,
                  int t3) {
  return g.induced(bags_union(td, make_set(torso_nodes(td, t1, t2, t3))));
}

std::optional<TriadSplit> split_triad(const Graph& g,
                                      const TreeDecomposition& td, int t1,
                                      int t2, int t3) {
  int c = triad_center(td.tree, t1, t2, t3);
  if (c < 0) return std::nullopt;
  const std::array<int, 3> ts{t1, t2, t3};
  VertexSet x = set_inter(set_inter(td.bag(t1), td.bag(t2)), td.bag(t3));
  int sz = static_cast<int>(set_diff(td.bag(t1), x).size());
  for (int ti : ts)
    if (static_cast<int>(set_diff(td.bag(ti), x).size()) != sz)
      return std::nullopt;
  if (sz < 2 || sz % 2 != 0) return std::nullopt;
  int mu = sz / 2;

  Graph torso = triad_torso(g, td, t1, t2, t3);
  Graph rest = torso.induced(set_diff(torso.vertices(), x));
  std::vector<VertexSet> comps = components(rest);
  int nc = static_cast<int>(comps.size());
  if (nc < 3) return std::nullopt;

  std::array<std::vector<int>, 3> paths;  // tree nodes between t_i and center
  for (int j = 0; j < 3; ++j) paths[j] = tree_path(td.tree, ts[j], c);

  // parts may not cross component boundaries, so assign whole components
  std::vector<int> who(nc, 0);
  while (true) {
    std::array<VertexSet, 3> parts;
    for (int i = 0; i < nc; ++i)
      parts[who[i]] = set_union(parts[who[i]], comps[i]);
    bool ok = !parts[0].empty() && !parts[1].empty() && !parts[2].empty();
    for (int i = 0; ok && i < 3; ++i) {
      for (int j = 0; ok && j < 3; ++j) {
        if (i == j) continue;
        if (static_cast<int>(set_inter(parts[i], td.bag(ts[j])).size()) != mu)
          ok = false;
        for (int t : paths[j])
          if (ok &&
              static_cast<int>(set_inter(parts[i], td.bag(t)).size()) < mu)
            ok = false;
      }
    }
    if (ok) return TriadSplit{t1, t2, t3, c, x, parts, mu};
    int k = nc - 1;
    while (k >= 0 && who[k] == 2) who[k--] = 0;
    if (k < 0) break;
    ++who[k];
  }
  return std::nullopt;
}

std::vector<TriadSplit> separable_triads(const Graph& g,
                                         const TreeDecomposition& td) {
  std::vector<TriadSplit> out;
  VertexSet ids = td.node_ids();
  for (size_t a = 0; a < ids.size(); ++a)
    for (size_t b = a + 1; b < ids.size(); ++b)
      for (size_t c = b + 1; c < ids.size(); ++c)
        if (auto s = split_triad(g, td, ids[a], ids[b], ids[c]))
          out.push_back(*s);
  return out;
}

std::optional<TriadSplit> check_triads_meet_center(
    const Graph& g, const TreeDecomposition& td) {
  for (const TriadSplit& s : separable_triads(g, td)) {
    bool meets = false;
    for (int ti : {s.t1, s.t2, s.t3})
      if (!set_diff(set_inter(td.bag(ti), td.bag(s.center)), s.x).empty())
        meets = true;
    if (!meets) return s;
  }
  return std::nullopt;
}

}  // namespace tdlab
