#include "tdlab/tree_order.hpp"

#include <sstream>

#include "tdlab/connectivity.hpp"

namespace tdlab {

Cmp compare_sig(const SigNode& a, const SigNode& b) {
  if (a.n != b.n) return a.n < b.n ? Cmp::Less : Cmp::Greater;
  return compare_sig_lists(a.kids, b.kids);
}

Cmp compare_sig_lists(const std::vector<SigNode>& a,
                      const std::vector<SigNode>& b) {
  size_t common = std::min(a.size(), b.size());
  for (size_t i = 0; i < common; ++i) {
    Cmp c = compare_sig(a[i], b[i]);
    if (c != Cmp::Equal) return c;
  }
  if (a.size() != b.size())
    return a.size() < b.size() ? Cmp::Less : Cmp::Greater;
  return Cmp::Equal;
}

std::string sig_code(const SigNode& s) {
  std::ostringstream os;
  os << '(' << s.n;
  for (const auto& k : s.kids) os << sig_code(k);
  os << ')';
  return os.str();
}

std::vector<PBridge> p_bridges(const Graph& g, const std::vector<int>& path) {
  VertexSet path_verts = make_set(path);
  std::vector<PBridge> out;
  Graph rest = g.minus_vertices(path_verts);
  for (const auto& comp : components(rest)) {
    PBridge br;
    VertexSet att;
    for (int v : comp)
      for (int w : g.neighbors(v))
        if (set_contains(path_verts, w)) att.push_back(w);
    br.attachments = make_set(std::move(att));
    br.verts = set_union(comp, br.attachments);
    out.push_back(std::move(br));
  }
  std::vector<Edge> traversed;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    traversed.push_back(norm_edge(path[i], path[i + 1]));
  std::sort(traversed.begin(), traversed.end());
  for (auto [u, v] : g.edges()) {
    if (!set_contains(path_verts, u) || !set_contains(path_verts, v)) continue;
    if (std::binary_search(traversed.begin(), traversed.end(), norm_edge(u, v)))
      continue;
    PBridge br;
    br.verts = {u, v};
    br.attachments = {u, v};
    br.chord = true;
    out.push_back(std::move(br));
  }
  return out;
}

namespace {

std::string ahu_rooted(const Graph& tree, int root, int parent) {
  std::vector<std::string> kids;
  for (int w : tree.neighbors(root))
    if (w != parent) kids.push_back(ahu_rooted(tree, w, root));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  s += ')';
  return s;
}

std::string ahu_canonical(const Graph& tree) {
  std::string best;
  for (int v : tree.vertices()) {
    std::string s = ahu_rooted(tree, v, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

std::vector<SigNode> bridge_sigs(const Graph& tree, const std::vector<int>& path) {
  std::vector<SigNode> sigs;
  for (const auto& br : p_bridges(tree, path))
    sigs.push_back(tree_signature(tree.induced(br.verts)));
  std::sort(sigs.begin(), sigs.end(), [](const SigNode& x, const SigNode& y) {
    return compare_sig(x, y) == Cmp::Greater;
  });
  return sigs;
}

}  // namespace

std::string tree_canonical_code(const Graph& tree) {
  if (tree.n() == 0 || !is_tree(tree))
    throw std::invalid_argument("tree_canonical_code: not a nonempty tree");
  return ahu_canonical(tree);
}

std::vector<int> spine(const Graph& tree) {
  if (tree.n() == 0 || !is_tree(tree))
    throw std::invalid_argument("spine: input is not a nonempty tree");
  if (tree.n() == 1) return {tree.vertices()[0]};
  std::vector<int> leaves;
  for (int v : tree.vertices())
    if (tree.degree(v) == 1) leaves.push_back(v);
  std::vector<int> best_path;
  std::vector<SigNode> best_list;
  for (size_t i = 0; i < leaves.size(); ++i) {
    for (size_t j = i + 1; j < leaves.size(); ++j) {
      std::vector<int> path = shortest_path(tree, leaves[i], leaves[j]);
      std::vector<SigNode> list = bridge_sigs(tree, path);
      if (best_path.empty() ||
          compare_sig_lists(list, best_list) == Cmp::Less) {
        best_path = std::move(path);
        best_list = std::move(list);
      }
      // ties keep the earlier (lexicographically least) endpoint pair
    }
  }
  if (best_path.front() > best_path.back())
    std::reverse(best_path.begin(), best_path.end());
  return best_path;
}

SigNode tree_signature(const Graph& tree) {
  if (tree.n() == 0 || !is_tree(tree))
    throw std::invalid_argument("tree_signature: input is not a nonempty tree");
  static thread_local std::map<std::string, SigNode> cache;
  std::string key = ahu_canonical(tree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SigNode out;
  out.n = tree.n();
  out.kids = bridge_sigs(tree, spine(tree));
  cache[key] = out;
  return out;
}

RankKey rank_key(const Graph& tree) {
  RankKey rk;
  rk.sig = tree_signature(tree);
  rk.code = sig_code(rk.sig);
  return rk;
}

Cmp compare_trees(const Graph& a, const Graph& b) {
  return compare_sig(tree_signature(a), tree_signature(b));
}

namespace {

std::vector<SigNode> sorted_sigs(const std::vector<Graph>& trees) {
  std::vector<SigNode> sigs;
  for (const auto& t : trees) sigs.push_back(tree_signature(t));
  std::sort(sigs.begin(), sigs.end(), [](const SigNode& x, const SigNode& y) {
    return compare_sig(x, y) == Cmp::Greater;
  });
  return sigs;
}

}  // namespace

bool dominated_by(const std::vector<Graph>& A, const std::vector<Graph>& B) {
  return compare_sig_lists(sorted_sigs(A), sorted_sigs(B)) != Cmp::Greater;
}

bool strictly_dominated_by(const std::vector<Graph>& A,
                           const std::vector<Graph>& B) {
  return compare_sig_lists(sorted_sigs(A), sorted_sigs(B)) == Cmp::Less;
}

SpineDecomposition spine_decomposition(const Graph& tree, int t) {
  if (!tree.has_vertex(t))
    throw std::invalid_argument("spine_decomposition: t not in tree");
  SpineDecomposition sd;
  sd.trees.push_back(tree);
  sd.paths.push_back(spine(tree));
  while (!set_contains(make_set(sd.paths.back()), t)) {
    const Graph& cur = sd.trees.back();
    bool found = false;
    for (const auto& br : p_bridges(cur, sd.paths.back())) {
      if (set_contains(br.verts, t)) {
        sd.trees.push_back(cur.induced(br.verts));
        sd.paths.push_back(spine(sd.trees.back()));
        found = true;
        break;
      }
    }
    if (!found)
      throw std::logic_error("spine_decomposition: lost track of t");
  }
  return sd;
}

Spine2Result spine2_transform(const Graph& tree, int t, int far, int near,
                              int cut) {
  if (!is_tree(tree)) throw std::invalid_argument("spine2: not a tree");
  if (!tree.has_vertex(t) || !tree.has_vertex(far) || !tree.has_vertex(near) ||
      !tree.has_vertex(cut))
    throw std::invalid_argument("spine2: vertex not in tree");
  if (tree.degree(t) != 3)
    throw std::invalid_argument("spine2: pivot must have degree 3");
  if (!tree.has_edge(near, far))
    throw std::invalid_argument("spine2: near and far must be adjacent");
  SpineDecomposition sd = spine_decomposition(tree, t);
  const std::vector<int>& P = sd.paths.back();
  auto on_spine = [&](int v) {
    return std::find(P.begin(), P.end(), v) != P.end();
  };
  int off = -1;
  std::vector<int> spine_nbrs;
  for (int w : tree.neighbors(t)) {
    if (on_spine(w))
      spine_nbrs.push_back(w);
    else
      off = w;
  }
  if (off < 0 || spine_nbrs.size() != 2)
    throw std::logic_error("spine2: pivot is not interior on its spine");
  if (cut != spine_nbrs[0] && cut != spine_nbrs[1])
    throw std::invalid_argument("spine2: cut must be an on-spine neighbor");
  int keep = cut == spine_nbrs[0] ? spine_nbrs[1] : spine_nbrs[0];
  // far, near, off, t must occur in this order on a path (near == off ok).
  std::vector<int> q = shortest_path(tree, far, t);
  int ql = static_cast<int>(q.size());
  if (ql < 3 || q[1] != near || q[ql - 2] != off || far == off)
    throw std::invalid_argument(
        "spine2: need far, near adjacent beyond the off-spine neighbor");

  int mid1 = tree.max_vertex_id() + 1;  // adjacent to near
  int mid2 = tree.max_vertex_id() + 2;  // adjacent to far, takes the cut side
  std::vector<Edge> edges;
  for (auto [u, v] : tree.edges()) {
    Edge e = norm_edge(u, v);
    if (e == norm_edge(near, far)) continue;  // subdivided below
    if (e == norm_edge(t, cut)) continue;     // re-hung below
    if (e == norm_edge(t, keep) || e == norm_edge(t, off)) continue;
    // contract keep,off into t
    if (u == keep || u == off) u = t;
    if (v == keep || v == off) v = t;
    if (u == v) continue;
    edges.push_back(norm_edge(u, v));
  }
  int near_m = near == off ? t : near;
  edges.push_back(norm_edge(near_m, mid1));
  edges.push_back(norm_edge(mid1, mid2));
  edges.push_back(norm_edge(mid2, far));
  edges.push_back(norm_edge(cut, mid2));
  VertexSet verts = set_diff(tree.vertices(), make_set({keep, off}));
  verts = set_union(verts, make_set({mid1, mid2}));
  Spine2Result res{Graph(verts, edges), t, mid1, mid2};
  if (!is_tree(res.tree)) throw std::logic_error("spine2: result not a tree");
  return res;
}

}  // namespace tdlab
