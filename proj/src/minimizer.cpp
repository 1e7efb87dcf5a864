#include "tdlab/minimizer.hpp"

#include <algorithm>
#include <sstream>

#include "tdlab/connectivity.hpp"

namespace tdlab {

namespace {

VertexSet nodes_at_level(const TreeDecomposition& td, int n) {
  VertexSet keep;
  for (const auto& [t, b] : td.bags)
    if (static_cast<int>(b.size()) >= n) keep.push_back(t);
  return make_set(std::move(keep));
}

bool rank_desc(const RankKey& a, const RankKey& b) {
  return compare_sig(a.sig, b.sig) == Cmp::Greater;
}

}  // namespace

std::vector<Cell> enumerate_cells(const TreeDecomposition& td, int n_min) {
  std::vector<Cell> out;
  for (int n = n_min; n <= td.max_bag_size(); ++n) {
    Graph restricted = td.tree.induced(nodes_at_level(td, n));
    for (const auto& comp : components(restricted))
      out.push_back({n, comp, rank_key(restricted.induced(comp))});
  }
  return out;
}

SizeProfile size_profile(const TreeDecomposition& td) {
  SizeProfile p;
  p.levels.resize(td.max_bag_size() + 1);
  for (const Cell& c : enumerate_cells(td, 0)) p.levels[c.n].push_back(c.rank);
  for (auto& level : p.levels)
    std::sort(level.begin(), level.end(), rank_desc);
  return p;
}

Cmp compare_profiles(const SizeProfile& a, const SizeProfile& b) {
  static const std::vector<RankKey> none;
  int top = static_cast<int>(std::max(a.levels.size(), b.levels.size())) - 1;
  for (int n = top; n >= 0; --n) {
    const auto& va = n < static_cast<int>(a.levels.size()) ? a.levels[n] : none;
    const auto& vb = n < static_cast<int>(b.levels.size()) ? b.levels[n] : none;
    for (size_t i = 0; i < std::min(va.size(), vb.size()); ++i) {
      Cmp c = compare_sig(va[i].sig, vb[i].sig);
      if (c != Cmp::Equal) return c;
    }
    if (va.size() != vb.size())
      return va.size() < vb.size() ? Cmp::Less : Cmp::Greater;
  }
  return Cmp::Equal;
}

Cmp compare_size(const TreeDecomposition& a, const TreeDecomposition& b) {
  if (bags_union(a, a.node_ids()) != bags_union(b, b.node_ids()))
    throw SurgeryError("compare_size: decompositions cover different vertex sets");
  return compare_profiles(size_profile(a), size_profile(b));
}

std::string profile_digest(const SizeProfile& p) {
  unsigned long long h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (size_t n = 0; n < p.levels.size(); ++n) {
    mix('L');
    mix(static_cast<unsigned char>(n));
    for (const auto& r : p.levels[n]) {
      for (char ch : r.code) mix(static_cast<unsigned char>(ch));
      mix(';');
    }
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

namespace {

SurgeryOutcome finish(const Graph& g, const TreeDecomposition& before,
                      TreeDecomposition after, const std::string& kind,
                      std::vector<int> locus) {
  auto viols = validate_decomposition(g, after);
  if (!viols.empty())
    throw SurgeryError(kind + ": output invalid (" + viols.front().rule + ": " +
                       viols.front().detail + ")");
  SizeProfile pb = size_profile(before);
  SizeProfile pa = size_profile(after);
  Cmp change = compare_profiles(pa, pb);
  if (change != Cmp::Less)
    throw SurgeryError(kind + ": output size did not decrease");
  if (after.width() > before.width())
    throw SurgeryError(kind + ": width increased");
  SurgeryOutcome out;
  out.td = std::move(after);
  out.kind = kind;
  out.locus = std::move(locus);
  out.before_digest = profile_digest(pb);
  out.after_digest = profile_digest(pa);
  out.change = change;
  return out;
}

void require_node(const TreeDecomposition& td, int t, const std::string& who) {
  if (!td.tree.has_vertex(t))
    throw SurgeryError(who + ": no tree node " + std::to_string(t));
}

// Nodes strictly between t1 and t2: the component of the tree minus both
// that holds the interior of their path, plus any branches off it.
VertexSet between_nodes(const Graph& tree, int t1, int t2) {
  VertexSet c1 = component_of(tree.minus_vertex(t1), t2);
  VertexSet c2 = component_of(tree.minus_vertex(t2), t1);
  return set_inter(c1, c2);
}

}  // namespace

SurgeryOutcome w4_merge(const Graph& g, const TreeDecomposition& td, int t1,
                        int t2) {
  if (t1 > t2) std::swap(t1, t2);
  require_node(td, t1, "merge");
  require_node(td, t2, "merge");
  if (t1 == t2) throw SurgeryError("merge: nodes coincide");
  if (td.bag(t1) != td.bag(t2)) throw SurgeryError("merge: bags differ");

  int toward = tree_path(td.tree, t2, t1)[1];
  std::vector<Edge> edges;
  for (auto [u, v] : td.tree.edges()) {
    if (u != t2 && v != t2) {
      edges.push_back({u, v});
      continue;
    }
    int other = u == t2 ? v : u;
    if (other != toward) edges.push_back(norm_edge(t1, other));
  }
  TreeDecomposition out;
  out.tree = Graph(set_diff(td.tree.vertices(), {t2}), edges);
  out.bags = td.bags;
  out.bags.erase(t2);
  return finish(g, td, std::move(out), "w4_merge", {t1, t2});
}

SurgeryOutcome w5_prune(const Graph& g, const TreeDecomposition& td, int t0,
                        const VertexSet& branch) {
  require_node(td, t0, "prune");
  if (branch.empty()) throw SurgeryError("prune: empty branch");
  for (int t : branch) require_node(td, t, "prune");
  if (set_contains(branch, t0)) throw SurgeryError("prune: branch holds its node");
  if (component_of(td.tree.minus_vertex(t0), branch.front()) != branch)
    throw SurgeryError("prune: not a whole branch at node " + std::to_string(t0));
  if (!set_subset(bags_union(td, branch), td.bag(t0)))
    throw SurgeryError("prune: branch contributes outside the bag of node " +
                       std::to_string(t0));

  TreeDecomposition out;
  out.tree = td.tree.minus_vertices(branch);
  out.bags = td.bags;
  for (int t : branch) out.bags.erase(t);
  std::vector<int> locus{t0};
  locus.insert(locus.end(), branch.begin(), branch.end());
  return finish(g, td, std::move(out), "w5_prune", std::move(locus));
}

SurgeryOutcome surgery_subdivide(const Graph& g, const TreeDecomposition& td,
                                 int t1, int t2) {
  if (t1 > t2) std::swap(t1, t2);
  require_node(td, t1, "subdivide");
  require_node(td, t2, "subdivide");
  if (!td.tree.has_edge(t1, t2))
    throw SurgeryError("subdivide: nodes not adjacent");
  const VertexSet& b1 = td.bag(t1);
  const VertexSet& b2 = td.bag(t2);
  if (set_subset(b1, b2) || set_subset(b2, b1))
    throw SurgeryError("subdivide: not applicable, one bag contains the other");

  int m = td.tree.max_vertex_id() + 1;
  std::vector<Edge> edges;
  for (auto e : td.tree.edges())
    if (e != norm_edge(t1, t2)) edges.push_back(e);
  edges.push_back(norm_edge(t1, m));
  edges.push_back(norm_edge(m, t2));
  TreeDecomposition out;
  out.tree = Graph(set_union(td.tree.vertices(), {m}), edges);
  out.bags = td.bags;
  out.bags[m] = set_inter(b1, b2);
  return finish(g, td, std::move(out), "subdivide", {t1, t2});
}

Graph pair_torso(const Graph& g, const TreeDecomposition& td, int t1, int t2) {
  require_node(td, t1, "pair_torso");
  require_node(td, t2, "pair_torso");
  if (t1 == t2) throw SurgeryError("pair_torso: nodes coincide");
  VertexSet region = set_union(between_nodes(td.tree, t1, t2), make_set({t1, t2}));
  return g.induced(bags_union(td, region));
}

std::optional<PathSplitCertificate> find_pathsplit(const Graph& g,
                                                   const TreeDecomposition& td) {
  const VertexSet nodes = td.node_ids();
  for (size_t a = 0; a < nodes.size(); ++a) {
    for (size_t b = a + 1; b < nodes.size(); ++b) {
      int t1 = nodes[a], t2 = nodes[b];
      VertexSet x = set_inter(td.bag(t1), td.bag(t2));
      int s1 = static_cast<int>(td.bag(t1).size() - x.size());
      int s2 = static_cast<int>(td.bag(t2).size() - x.size());
      if (s1 != s2 || s1 < 2 || s1 % 2 != 0) continue;
      int k = s1 / 2;

      Graph torso = pair_torso(g, td, t1, t2);
      auto comps = components(torso.minus_vertices(x));
      int c = static_cast<int>(comps.size());
      if (c < 2 || c > 16) continue;
      std::vector<int> path = tree_path(td.tree, t1, t2);

      for (unsigned mask = 1; mask + 1 < (1u << c); ++mask) {
        VertexSet h1, h2;
        for (int i = 0; i < c; ++i)
          (mask >> i & 1 ? h1 : h2) = set_union(mask >> i & 1 ? h1 : h2, comps[i]);
        auto trace = [&](int t, const VertexSet& h) {
          return static_cast<int>(set_inter(td.bag(t), h).size());
        };
        if (trace(t1, h1) != k || trace(t1, h2) != k || trace(t2, h1) != k ||
            trace(t2, h2) != k)
          continue;
        bool ok = true;
        int t0 = -1, best = -1;
        for (int t : path) {
          int c1 = trace(t, h1), c2 = trace(t, h2);
          if (c1 < k || c2 < k) {
            ok = false;
            break;
          }
          if (c1 > k && c2 > k) {
            int sz = static_cast<int>(td.bag(t).size());
            if (sz > best || (sz == best && t < t0)) {
              best = sz;
              t0 = t;
            }
          }
        }
        if (!ok || t0 < 0) continue;
        return PathSplitCertificate{t1, t2, t0, x, h1, h2, k};
      }
    }
  }
  return std::nullopt;
}

SurgeryOutcome surgery_pathsplit(const Graph& g, const TreeDecomposition& td,
                                 const PathSplitCertificate& c) {
  require_node(td, c.t1, "pathsplit");
  require_node(td, c.t2, "pathsplit");
  if (c.t1 == c.t2) throw SurgeryError("pathsplit: terminals coincide");
  if (c.x != set_inter(td.bag(c.t1), td.bag(c.t2)))
    throw SurgeryError("pathsplit: x is not the terminal bag intersection");
  Graph torso = pair_torso(g, td, c.t1, c.t2);
  if (c.h1.empty() || c.h2.empty() || !set_inter(c.h1, c.h2).empty())
    throw SurgeryError("pathsplit: sides must be disjoint and non-empty");
  if (set_union(c.h1, c.h2) != set_diff(torso.vertices(), c.x))
    throw SurgeryError("pathsplit: sides do not cover the torso minus x");
  for (auto [u, v] : torso.edges())
    if ((set_contains(c.h1, u) && set_contains(c.h2, v)) ||
        (set_contains(c.h2, u) && set_contains(c.h1, v)))
      throw SurgeryError("pathsplit: an edge joins the two sides");
  if (c.k < 1) throw SurgeryError("pathsplit: k must be positive");
  auto trace = [&](int t, const VertexSet& h) {
    return set_inter(td.bag(t), h);
  };
  for (int t : {c.t1, c.t2})
    for (const VertexSet* h : {&c.h1, &c.h2})
      if (static_cast<int>(trace(t, *h).size()) != c.k)
        throw SurgeryError("pathsplit: terminal bag trace is not k");
  std::vector<int> path = tree_path(td.tree, c.t1, c.t2);
  for (int t : path)
    if (static_cast<int>(trace(t, c.h1).size()) < c.k ||
        static_cast<int>(trace(t, c.h2).size()) < c.k)
      throw SurgeryError("pathsplit: a path bag trace is below k");
  if (std::find(path.begin(), path.end(), c.t0) == path.end())
    throw SurgeryError("pathsplit: t0 is not on the terminal path");
  if (static_cast<int>(trace(c.t0, c.h1).size()) <= c.k ||
      static_cast<int>(trace(c.t0, c.h2).size()) <= c.k)
    throw SurgeryError("pathsplit: t0 traces do not exceed k");

  // Region duplication: copy 1 carries side 1 plus the constant side-2
  // trace of t1; copy 2 the mirror. The two copies are chained, and the
  // shared node where they meet gets the same bag from both formulas.
  VertexSet between = between_nodes(td.tree, c.t1, c.t2);
  VertexSet region = set_union(between, make_set({c.t1, c.t2}));
  int mid = td.tree.max_vertex_id() + 1;
  int next = mid + 1;
  std::map<int, int> copy1, copy2;
  copy1[c.t1] = c.t1;
  copy1[c.t2] = mid;
  copy2[c.t1] = mid;
  copy2[c.t2] = c.t2;
  for (int r : between) {
    copy1[r] = next++;
    copy2[r] = next++;
  }

  std::vector<Edge> edges;
  for (auto [u, v] : td.tree.edges()) {
    if (set_contains(region, u) && set_contains(region, v)) {
      edges.push_back(norm_edge(copy1[u], copy1[v]));
      edges.push_back(norm_edge(copy2[u], copy2[v]));
    } else {
      edges.push_back({u, v});
    }
  }
  VertexSet verts = set_diff(td.tree.vertices(), between);
  for (const auto& [r, id] : copy1) verts = set_union(verts, {id});
  for (const auto& [r, id] : copy2) verts = set_union(verts, {id});

  TreeDecomposition out;
  out.tree = Graph(verts, edges);
  for (int t : set_diff(td.tree.vertices(), region)) out.bags[t] = td.bag(t);
  VertexSet w1h2 = trace(c.t1, c.h2);
  VertexSet w2h1 = trace(c.t2, c.h1);
  VertexSet pathset = make_set(path);
  for (int r : region) {
    bool onp = set_contains(pathset, r);
    VertexSet b1 = set_inter(td.bag(r), c.h1);
    VertexSet b2 = set_inter(td.bag(r), c.h2);
    if (onp) {
      b1 = set_union(set_union(b1, w1h2), c.x);
      b2 = set_union(set_union(b2, w2h1), c.x);
    }
    auto put = [&out](int t, VertexSet b) {
      auto it = out.bags.find(t);
      if (it != out.bags.end() && it->second != b)
        throw SurgeryError("pathsplit: shared copy node got two distinct bags");
      out.bags[t] = std::move(b);
    };
    put(copy1[r], std::move(b1));
    put(copy2[r], std::move(b2));
  }
  return finish(g, td, std::move(out), "pathsplit", {c.t1, c.t2, c.t0});
}

SurgeryOutcome surgery_w7(const Graph& g, const TreeDecomposition& td,
                          const TriadSplit& triad) {
  auto sp = split_triad(g, td, triad.t1, triad.t2, triad.t3);
  if (!sp) throw SurgeryError("w7: triad does not split");
  const TriadSplit s = *sp;
  const int t0 = s.center;
  const int ts[3] = {s.t1, s.t2, s.t3};
  for (int i = 0; i < 3; ++i)
    if (!set_diff(set_inter(td.bag(ts[i]), td.bag(t0)), s.x).empty())
      throw SurgeryError("w7: not applicable, a triad bag meets the center bag "
                         "outside the common ground");

  const int n = static_cast<int>(td.bag(ts[0]).size());
  const int k = s.mu;
  int tp[3];
  for (int i = 0; i < 3; ++i) tp[i] = tree_path(td.tree, t0, ts[i])[1];

  VertexSet keep = nodes_at_level(td, n);
  if (!set_contains(keep, t0))
    throw SurgeryError("w7: inconclusive, center bag below the triad level");
  Graph restricted = td.tree.induced(keep);
  Graph cell = restricted.induced(component_of(restricted, t0));
  if (cell.degree(t0) != 3)
    throw SurgeryError("w7: inconclusive, center degree in its cell is not 3");
  if (make_set(cell.neighbors(t0)) != make_set({tp[0], tp[1], tp[2]}))
    throw SurgeryError("w7: inconclusive, cell neighbors differ from the triad "
                       "directions");

  auto sd = spine_decomposition(cell, t0);
  const std::vector<int>& P = sd.paths.back();
  size_t idx = std::find(P.begin(), P.end(), t0) - P.begin();
  if (idx == 0 || idx + 1 >= P.size())
    throw SurgeryError("w7: inconclusive, center sits at a spine end");

  int off = -1;
  for (int i = 0; i < 3; ++i)
    if (tp[i] != P[idx - 1] && tp[i] != P[idx + 1]) {
      if (off >= 0) throw SurgeryError("w7: inconclusive, two arms off the spine");
      off = i;
    }
  if (off < 0) throw SurgeryError("w7: inconclusive, no arm off the spine");
  const int T3 = ts[off], TP3 = tp[off];
  int spineIdx[2], w = 0;
  for (int i = 0; i < 3; ++i)
    if (i != off) spineIdx[w++] = i;

  if (set_inter(td.bag(T3), td.bag(TP3)) != s.x)
    throw SurgeryError("w7: inconclusive, off-arm bags meet beyond the common "
                       "ground");

  // Pick the spine part whose trace stays constant entering the off arm;
  // that part is routed away, the other keeps its terminal.
  std::vector<int> arm = tree_path(td.tree, TP3, T3);
  int i2 = -1;
  for (int i : spineIdx) {
    VertexSet tr = set_inter(s.parts[i], td.bag(TP3));
    if (set_inter(s.parts[i], td.bag(arm[1])) == tr) {
      i2 = i;
      break;
    }
  }
  if (i2 < 0)
    throw SurgeryError("w7: inconclusive, no spine part keeps a constant trace "
                       "into the off arm");
  const int i1 = spineIdx[0] == i2 ? spineIdx[1] : spineIdx[0];
  const VertexSet& h1 = s.parts[i1];
  const VertexSet& h2 = s.parts[i2];
  const VertexSet& h3 = s.parts[off];
  const int TP1 = tp[i1], TP2 = tp[i2];

  VertexSet tr2 = set_inter(h2, td.bag(TP3));
  size_t j = 1;
  while (j + 1 < arm.size() && set_inter(h2, td.bag(arm[j + 1])) == tr2) ++j;
  const int r3 = arm[j];
  if (r3 == T3)
    throw SurgeryError("w7: inconclusive, the constant trace reaches the arm end");
  if (static_cast<int>(set_inter(h1, td.bag(r3)).size()) != k ||
      static_cast<int>(set_inter(h2, td.bag(r3)).size()) != k)
    throw SurgeryError("w7: inconclusive, traces at the cut node are not k");
  const int r3p = arm[j - 1];

  // Re-hang side branches of the center-to-cut path so that the rewire
  // below cannot disconnect them: side-2 branches move next to arm 1, and
  // branches at the center itself move off before the center merges.
  VertexSet spinePath = make_set(tree_path(td.tree, t0, r3p));
  std::vector<Edge> edges;
  for (auto e : td.tree.edges()) edges.push_back(e);
  auto drop_edge = [&edges](Edge e) {
    auto it = std::find(edges.begin(), edges.end(), e);
    if (it == edges.end())
      throw SurgeryError("w7: internal error, expected edge missing");
    edges.erase(it);
  };
  for (const auto& B : components(td.tree.minus_vertices(spinePath))) {
    if (set_contains(B, ts[0]) || set_contains(B, ts[1]) || set_contains(B, ts[2]))
      continue;
    int rB = -1, rpB = -1;
    for (int u : B) {
      for (int v : td.tree.neighbors(u))
        if (set_contains(spinePath, v)) {
          rB = u;
          rpB = v;
        }
      if (rB >= 0) break;
    }
    int iB = 0;
    VertexSet load = set_diff(td.bag(rB), s.x);
    for (int l = 1; l <= 3; ++l) {
      const VertexSet& part = l == 1 ? h1 : l == 2 ? h2 : h3;
      if (set_subset(load, part)) {
        iB = l;
        break;
      }
    }
    if (iB == 0)
      throw SurgeryError("w7: inconclusive, a side branch fits no split part");
    if (iB == 2 || (iB == 3 && rpB == t0)) {
      drop_edge(norm_edge(rB, rpB));
      edges.push_back(norm_edge(TP1, rB));
    } else if (iB == 1 && rpB == t0) {
      drop_edge(norm_edge(rB, rpB));
      edges.push_back(norm_edge(TP2, rB));
    }
  }

  // Rewire: cut the center from arm 1, merge it with the heads of arms 2
  // and 3, subdivide the arm-3 edge at the cut twice and hang arm 1 on the
  // subdivision node next to the cut node.
  const int m1 = td.tree.max_vertex_id() + 1;  // next to r3p
  const int m2 = m1 + 1;                       // next to r3, takes arm 1
  drop_edge(norm_edge(t0, TP1));
  drop_edge(norm_edge(t0, TP2));
  drop_edge(norm_edge(t0, TP3));
  drop_edge(norm_edge(r3p, r3));
  for (auto& e : edges) {
    if (e.first == TP2 || e.first == TP3) e = norm_edge(t0, e.second);
    else if (e.second == TP2 || e.second == TP3) e = norm_edge(e.first, t0);
  }
  const int nearm = r3p == TP3 ? t0 : r3p;
  edges.push_back(norm_edge(nearm, m1));
  edges.push_back(norm_edge(m1, m2));
  edges.push_back(norm_edge(m2, r3));
  edges.push_back(norm_edge(TP1, m2));
  VertexSet verts = set_diff(td.tree.vertices(), make_set({TP2, TP3}));
  verts = set_union(verts, make_set({m1, m2}));

  TreeDecomposition out;
  out.tree = Graph(verts, edges);
  out.bags = td.bags;
  out.bags.erase(TP2);
  out.bags.erase(TP3);
  VertexSet h3cap = set_inter(h3, td.bag(t0));
  out.bags[m2] = set_union(td.bag(r3), h3cap);
  out.bags[m1] = set_union(set_diff(td.bag(r3), h2), h3cap);
  out.bags[t0] = td.bag(TP2);
  for (size_t q = 1; q < j; ++q)
    out.bags[arm[q]] = set_union(set_diff(td.bag(arm[q]), h2), h3cap);
  return finish(g, td, std::move(out), "w7", {ts[0], ts[1], ts[2]});
}

MinimizeResult minimize(const Graph& g, const TreeDecomposition& td,
                        int step_limit) {
  auto viols = validate_decomposition(g, td);
  if (!viols.empty())
    throw SurgeryError("minimize: input invalid (" + viols.front().rule + ": " +
                       viols.front().detail + ")");
  MinimizeResult res;
  res.td = td;
  for (int step = 1; step <= step_limit; ++step) {
    std::optional<SurgeryOutcome> out;
    if (auto dup = check_distinct_bags(res.td)) {
      out = w4_merge(g, res.td, dup->t1, dup->t2);
    } else if (auto idle = check_branches_contribute(res.td)) {
      out = w5_prune(g, res.td, idle->t0, idle->branch);
    }
    if (!out) {
      for (auto [u, v] : res.td.tree.edges()) {
        if (!set_subset(res.td.bag(u), res.td.bag(v)) &&
            !set_subset(res.td.bag(v), res.td.bag(u))) {
          out = surgery_subdivide(g, res.td, u, v);
          break;
        }
      }
    }
    if (!out) {
      if (auto ps = find_pathsplit(g, res.td))
        out = surgery_pathsplit(g, res.td, *ps);
    }
    if (!out) {
      if (auto bad = check_triads_meet_center(g, res.td)) {
        try {
          out = surgery_w7(g, res.td, *bad);
        } catch (const SurgeryError& e) {
          res.notes.push_back("stuck: triad (" + std::to_string(bad->t1) + "," +
                              std::to_string(bad->t2) + "," +
                              std::to_string(bad->t3) + "): " + e.what());
          return res;
        }
      }
    }
    if (!out) {
      res.reached_fixpoint = true;
      return res;
    }
    res.log.push_back({step, out->kind, out->locus, out->before_digest,
                       out->after_digest});
    res.td = std::move(out->td);
  }
  res.notes.push_back("step limit reached");
  return res;
}

}  // namespace tdlab
