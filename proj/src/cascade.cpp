#include "tdlab/cascade.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tdlab/connectivity.hpp"
#include "tdlab/wprops.hpp"

namespace tdlab {

namespace {

int step_toward(const Graph& tree, int a, int b) {
  return tree_path(tree, a, b)[1];
}

std::vector<int> oriented(const PathInGraph& p, int front) {
  if (p.verts.front() == front) return p.verts;
  return std::vector<int>(p.verts.rbegin(), p.verts.rend());
}

}  // namespace

// ---------------------------------------------------------------------------
// Homeomorphic embeddings.

bool is_hembedding(const Graph& src, const Graph& dst, const Hembedding& emb) {
  VertexSet images;
  for (int v : src.vertices()) {
    auto it = emb.map.find(v);
    if (it == emb.map.end() || !dst.has_vertex(it->second)) return false;
    images.push_back(it->second);
  }
  if (make_set(images).size() != src.vertices().size()) return false;
  for (int t : src.vertices()) {
    const auto& nbrs = src.neighbors(t);
    for (size_t x = 0; x < nbrs.size(); ++x)
      for (size_t y = x + 1; y < nbrs.size(); ++y)
        if (step_toward(dst, emb.at(t), emb.at(nbrs[x])) ==
            step_toward(dst, emb.at(t), emb.at(nbrs[y])))
          return false;
  }
  return true;
}

VertexSet embedding_span(const Graph& src, const Graph& dst,
                         const Hembedding& emb) {
  std::vector<int> out;
  for (int v : src.vertices()) out.push_back(emb.at(v));
  for (const auto& e : src.edges())
    for (int n : tree_path(dst, emb.at(e.first), emb.at(e.second)))
      out.push_back(n);
  return make_set(out);
}

std::optional<Hembedding> find_embedding(const Graph& src, const Graph& dst) {
  std::vector<int> order;
  std::map<int, int> par;
  VertexSet seen;
  for (int root : src.vertices()) {
    if (set_contains(seen, root)) continue;
    std::vector<int> queue{root};
    par[root] = -1;
    seen = set_union(seen, make_set({root}));
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      order.push_back(v);
      for (int w : src.neighbors(v))
        if (!set_contains(seen, w)) {
          seen = set_union(seen, make_set({w}));
          par[w] = v;
          queue.push_back(w);
        }
    }
  }
  std::map<int, int> emb;
  VertexSet used;
  std::optional<Hembedding> result;
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == order.size()) {
      Hembedding h{emb};
      if (!is_hembedding(src, dst, h)) return false;
      result = h;
      return true;
    }
    int t = order[k];
    int p = par.at(t);
    for (int cand : dst.vertices()) {
      if (set_contains(used, cand)) continue;
      if (dst.degree(cand) < src.degree(t)) continue;
      if (p != -1) {
        int step = step_toward(dst, emb.at(p), cand);
        bool clash = false;
        for (int q : src.neighbors(p)) {
          if (q == t) continue;
          auto it = emb.find(q);
          if (it != emb.end() &&
              step_toward(dst, emb.at(p), it->second) == step) {
            clash = true;
            break;
          }
        }
        if (clash) continue;
      }
      emb[t] = cand;
      used = set_union(used, make_set({cand}));
      if (go(k + 1)) return true;
      emb.erase(t);
      used = set_diff(used, make_set({cand}));
    }
    return false;
  };
  go(0);
  return result;
}

bool is_monotone_embedding(const PatternTree& sub, const PatternTree& host,
                           const std::map<int, int>& gamma) {
  if (sub.kind != PatternKind::T || host.kind != PatternKind::T) return false;
  for (int v : sub.tree.vertices())
    if (!gamma.count(v)) return false;
  if (!is_hembedding(sub.tree, host.tree, Hembedding{gamma})) return false;
  if (gamma.at(sub.minor_root) != host.minor_root) return false;
  for (int t : sub.majors()) {
    int w = gamma.at(t);
    if (!host.is_major(w)) return false;
    if (!host.is_ancestor(gamma.at(sub.parent.at(t)), w)) return false;
    Trinity st = sub.trinity(t);
    Trinity ht = host.trinity(w);
    if (gamma.at(st.left) != ht.left || gamma.at(st.right) != ht.right)
      return false;
  }
  return true;
}

bool is_weakly_monotone_embedding(const PatternTree& sub,
                                  const PatternTree& host,
                                  const std::map<int, int>& gamma) {
  if (sub.kind != PatternKind::T || host.kind != PatternKind::T) return false;
  for (int v : sub.tree.vertices())
    if (!gamma.count(v)) return false;
  if (!is_hembedding(sub.tree, host.tree, Hembedding{gamma})) return false;
  for (int m : sub.minors())
    if (host.is_major(gamma.at(m))) return false;
  for (int t : sub.tree.vertices())
    for (int u : sub.tree.vertices())
      if (sub.is_ancestor(t, u) &&
          !host.is_ancestor(gamma.at(t), gamma.at(u)))
        return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cascade search.

namespace {

struct CascadeSearchOpts {
  int h = 1;
  int s = 1;
  bool injective = false;
  int exact_I = -1;     // with injective: require |I| == exact_I
  int min_common = -1;  // require |intersection over all image bags| >= this
};

std::optional<Cascade> search_cascade(const TreeDecomposition& td,
                                      const CascadeSearchOpts& o) {
  PatternTree pat = build_pattern(PatternKind::T, o.h);
  std::vector<int> order;
  {
    std::vector<int> queue{pat.root()};
    VertexSet seen = make_set({pat.root()});
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      order.push_back(v);
      for (int w : pat.tree.neighbors(v))
        if (!set_contains(seen, w)) {
          seen = set_union(seen, make_set({w}));
          queue.push_back(w);
        }
    }
  }
  std::map<int, int> eta;
  VertexSet used;
  VertexSet I;
  bool haveI = false;
  VertexSet common;
  std::optional<Cascade> res;
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == order.size()) {
      Cascade c;
      c.pattern = pat;
      c.eta = eta;
      c.s = o.s;
      c.injective = o.injective;
      if (o.injective) c.I = I;
      res = c;
      return true;
    }
    int t = order[k];
    bool minor = !pat.is_major(t);
    int p = pat.parent.at(t);
    for (int cand : td.node_ids()) {
      if (set_contains(used, cand)) continue;
      const VertexSet& bag = td.bag(cand);
      int bs = static_cast<int>(bag.size());
      if (minor ? bs != o.s : bs < o.s) continue;
      if (p != -1) {
        auto path = tree_path(td.tree, eta.at(p), cand);
        bool ok = true;
        for (int n : path)
          if (static_cast<int>(td.bag(n).size()) < o.s) {
            ok = false;
            break;
          }
        if (!ok) continue;
        int step = path[1];
        for (int q : pat.tree.neighbors(p)) {
          if (q == t) continue;
          auto it = eta.find(q);
          if (it != eta.end() &&
              step_toward(td.tree, eta.at(p), it->second) == step) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      VertexSet savedI = I, savedCommon = common;
      bool savedHave = haveI;
      bool ok = true;
      if (o.injective) {
        for (const auto& [pv, n2] : eta) {
          VertexSet inter = set_inter(bag, td.bag(n2));
          if (!haveI) {
            I = inter;
            haveI = true;
          } else if (inter != I) {
            ok = false;
            break;
          }
        }
        if (ok && haveI) {
          if (static_cast<int>(I.size()) >= o.s) ok = false;
          if (o.exact_I >= 0 && static_cast<int>(I.size()) != o.exact_I)
            ok = false;
        }
      }
      if (ok && o.min_common >= 0) {
        common = eta.empty() ? bag : set_inter(common, bag);
        if (static_cast<int>(common.size()) < o.min_common) ok = false;
      }
      if (!ok) {
        I = savedI;
        haveI = savedHave;
        common = savedCommon;
        continue;
      }
      eta[t] = cand;
      used = set_union(used, make_set({cand}));
      if (go(k + 1)) return true;
      eta.erase(t);
      used = set_diff(used, make_set({cand}));
      I = savedI;
      haveI = savedHave;
      common = savedCommon;
    }
    return false;
  };
  go(0);
  return res;
}

}  // namespace

std::optional<Cascade> find_cascade(const TreeDecomposition& td, int h,
                                    int s) {
  CascadeSearchOpts o;
  o.h = h;
  o.s = s;
  return search_cascade(td, o);
}

std::optional<Cascade> find_injective_cascade(const TreeDecomposition& td,
                                              int h) {
  for (int s = td.max_bag_size(); s >= 1; --s) {
    CascadeSearchOpts o;
    o.h = h;
    o.s = s;
    o.injective = true;
    if (auto c = search_cascade(td, o)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Disjoint path systems.

namespace {

// Systems of pairwise vertex-disjoint simple paths: path k starts at
// starts[k] and ends at the first vertex of targets[k] it reaches; target
// vertices cannot be crossed, interior vertices must avoid interior_ban[k].
struct PathSystemEnum {
  const Graph& g;
  std::vector<int> starts;
  std::vector<VertexSet> targets;
  std::vector<VertexSet> interior_ban;
  long long cap;
  long long steps = 0;
  bool capped = false;

  std::vector<PathInGraph> current;
  VertexSet used;

  PathSystemEnum(const Graph& g_, std::vector<int> starts_,
                 std::vector<VertexSet> targets_,
                 std::vector<VertexSet> interior_ban_, long long cap_)
      : g(g_),
        starts(std::move(starts_)),
        targets(std::move(targets_)),
        interior_ban(std::move(interior_ban_)),
        cap(cap_) {}

  bool run(const std::function<bool(const std::vector<PathInGraph>&)>& cb) {
    for (int v : starts) {
      if (!g.has_vertex(v)) return false;
      used = set_union(used, make_set({v}));
    }
    if (make_set(starts).size() != starts.size()) return false;
    return route(0, cb);
  }

  bool route(size_t k,
             const std::function<bool(const std::vector<PathInGraph>&)>& cb) {
    if (capped) return true;
    if (k == starts.size()) return cb(current);
    std::vector<int> prefix{starts[k]};
    return extend(k, prefix, cb);
  }

  bool extend(size_t k, std::vector<int>& prefix,
              const std::function<bool(const std::vector<PathInGraph>&)>& cb) {
    if (capped) return true;
    if (++steps > cap) {
      capped = true;
      return true;
    }
    int v = prefix.back();
    for (int w : g.neighbors(v)) {
      if (set_contains(used, w)) continue;
      if (set_contains(targets[k], w)) {
        prefix.push_back(w);
        used = set_union(used, make_set({w}));
        current.push_back(PathInGraph{prefix});
        bool stop = route(k + 1, cb);
        current.pop_back();
        used = set_diff(used, make_set({w}));
        prefix.pop_back();
        if (stop) return true;
        continue;
      }
      if (set_contains(interior_ban[k], w)) continue;
      prefix.push_back(w);
      used = set_union(used, make_set({w}));
      bool stop = extend(k, prefix, cb);
      used = set_diff(used, make_set({w}));
      prefix.pop_back();
      if (stop) return true;
    }
    return false;
  }
};

// Shared setup for the competitor systems at a branch vertex: paths start
// at the labelled parent-bag vertices and end anywhere in the child bag,
// meeting both bags only at their ends.
std::vector<std::vector<PathInGraph>> enumerate_side_systems(
    const Graph& ambient, const std::vector<int>& starts,
    const VertexSet& source_bag, const VertexSet& target_bag, long long cap,
    bool& capped, long long& steps_used) {
  std::vector<std::vector<PathInGraph>> out;
  PathSystemEnum en{ambient,
                    starts,
                    std::vector<VertexSet>(starts.size(), target_bag),
                    std::vector<VertexSet>(starts.size(),
                                           set_union(source_bag, target_bag)),
                    cap};
  en.run([&](const std::vector<PathInGraph>& sys) {
    out.push_back(sys);
    return false;
  });
  capped = capped || en.capped;
  steps_used += en.steps;
  return out;
}

long long pair_measure(const std::vector<PathInGraph>& P,
                       const std::vector<PathInGraph>& Q) {
  std::set<Edge> tails;
  for (size_t i = 0; i < P.size(); ++i) {
    const auto& a = P[i].verts;
    const auto& b = Q[i].verts;
    size_t k = 0;
    while (k + 1 < a.size() && k + 1 < b.size() && a[k + 1] == b[k + 1]) ++k;
    for (size_t x = k; x + 1 < a.size(); ++x)
      tails.insert(norm_edge(a[x], a[x + 1]));
    for (size_t x = k; x + 1 < b.size(); ++x)
      tails.insert(norm_edge(b[x], b[x + 1]));
  }
  return static_cast<long long>(tails.size());
}

std::vector<Edge> system_edges(const std::vector<PathInGraph>& P,
                               const std::vector<PathInGraph>& Q) {
  std::set<Edge> es;
  for (const auto& p : P)
    for (const auto& e : path_edges(p)) es.insert(e);
  for (const auto& q : Q)
    for (const auto& e : path_edges(q)) es.insert(e);
  return std::vector<Edge>(es.begin(), es.end());
}

std::vector<std::vector<int>> system_verts(const std::vector<PathInGraph>& P,
                                           const std::vector<PathInGraph>& Q) {
  std::vector<std::vector<int>> out;
  for (const auto& p : P) out.push_back(p.verts);
  for (const auto& q : Q) out.push_back(q.verts);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Torso and outer regions.

Graph eta_torso(const Graph& g, const TreeDecomposition& td, const Cascade& c,
                int t0) {
  Trinity tri = c.pattern.trinity(t0);
  int center = c.node(t0);
  VertexSet boundary = make_set(
      {c.node(tri.parent), c.node(tri.left), c.node(tri.right)});
  VertexSet kept;
  for (int n : td.node_ids()) {
    auto path = tree_path(td.tree, n, center);
    bool crosses = false;
    for (size_t i = 1; i + 1 < path.size(); ++i)
      if (set_contains(boundary, path[i])) {
        crosses = true;
        break;
      }
    if (!crosses) kept.push_back(n);
  }
  return g.induced(set_diff(bags_union(td, kept), c.I));
}

Graph outer_graph(const Graph& g, const TreeDecomposition& td,
                  const Cascade& c, int v) {
  if (c.pattern.is_major(v))
    throw CascadeError("outer graph: vertex is not a path vertex");
  int node = c.node(v);
  // Everything past the image of v, seen from the pattern: drop the side
  // holding the image of the adjacent branch vertex towards the root.
  int ref = v == c.pattern.minor_root ? c.node(c.pattern.major_root)
                                      : c.node(c.pattern.parent.at(v));
  VertexSet kept = make_set({node});
  for (const auto& comp : tree_components_minus(td.tree, node))
    if (!set_contains(comp, ref)) kept = set_union(kept, comp);
  return g.induced(set_diff(bags_union(td, kept), c.I));
}

// ---------------------------------------------------------------------------
// Validation.

std::vector<std::string> validate_cascade(const Graph& g,
                                          const TreeDecomposition& td,
                                          const Cascade& c) {
  std::vector<std::string> issues;
  if (c.pattern.kind != PatternKind::T) {
    issues.push_back("pattern is not a T pattern");
    return issues;
  }
  PatternTree expect = build_pattern(PatternKind::T, c.pattern.h);
  if (!(c.pattern.tree == expect.tree)) {
    issues.push_back("pattern tree does not match its height");
    return issues;
  }
  for (int v : c.pattern.tree.vertices())
    if (!c.eta.count(v)) {
      issues.push_back("eta is not defined on pattern vertex " +
                       std::to_string(v));
      return issues;
    }
  for (const auto& [t, n] : c.eta)
    if (!td.tree.has_vertex(n)) {
      issues.push_back("eta image " + std::to_string(n) + " is not a node");
      return issues;
    }
  if (!is_hembedding(c.pattern.tree, td.tree, c.embedding()))
    issues.push_back("eta is not a homeomorphic embedding");
  for (int m : c.pattern.minors())
    if (static_cast<int>(td.bag(c.node(m)).size()) != c.s)
      issues.push_back("bag at the image of path vertex " + std::to_string(m) +
                       " does not have size " + std::to_string(c.s));
  for (int n : embedding_span(c.pattern.tree, td.tree, c.embedding()))
    if (static_cast<int>(td.bag(n).size()) < c.s)
      issues.push_back("span node " + std::to_string(n) +
                       " has a bag smaller than " + std::to_string(c.s));
  if (c.injective) {
    if (static_cast<int>(c.I.size()) >= c.s)
      issues.push_back("shared set I is not smaller than s");
    auto vs = c.pattern.tree.vertices();
    for (size_t x = 0; x < vs.size(); ++x)
      for (size_t y = x + 1; y < vs.size(); ++y)
        if (set_inter(td.bag(c.node(vs[x])), td.bag(c.node(vs[y]))) != c.I)
          issues.push_back("bags at images of " + std::to_string(vs[x]) +
                           " and " + std::to_string(vs[y]) +
                           " do not meet exactly in I");
  }
  if (!c.ordered) return issues;
  if (!c.injective)
    issues.push_back("ordered cascade must be injective");
  int L = c.labels();
  for (int m : c.pattern.minors()) {
    auto it = c.xi.find(m);
    if (it == c.xi.end()) {
      issues.push_back("missing labels at path vertex " + std::to_string(m));
      continue;
    }
    if (static_cast<int>(it->second.size()) != L ||
        make_set(it->second) != set_diff(td.bag(c.node(m)), c.I))
      issues.push_back("labels at path vertex " + std::to_string(m) +
                       " do not enumerate its bag minus I");
  }
  Graph ambient = g.minus_vertices(c.I);
  for (int t0 : c.pattern.majors()) {
    Trinity tri = c.pattern.trinity(t0);
    for (int side = 0; side < 2; ++side) {
      const auto& store = side == 0 ? c.left_linkage : c.right_linkage;
      int child = side == 0 ? tri.left : tri.right;
      const char* word = side == 0 ? "left" : "right";
      auto it = store.find(t0);
      if (it == store.end()) {
        // no specified linkage: the ordering still promises one exists
        std::vector<int> starts;
        std::vector<VertexSet> targets;
        for (int i = 1; i <= L; ++i) {
          starts.push_back(c.label(tri.parent, i));
          targets.push_back(make_set({c.label(child, i)}));
        }
        PathSystemEnum en{ambient, starts, targets,
                          std::vector<VertexSet>(starts.size()), 2'000'000};
        bool found = en.run([](const std::vector<PathInGraph>&) {
          return true;
        });
        if (en.capped)
          issues.push_back(std::string("existence of a ") + word +
                           " linkage at branch vertex " + std::to_string(t0) +
                           " unverified: search capped");
        else if (!found)
          issues.push_back(std::string("no ") + word +
                           " linkage exists at branch vertex " +
                           std::to_string(t0));
        continue;
      }
      const auto& paths = it->second;
      if (static_cast<int>(paths.size()) != L) {
        issues.push_back(std::string(word) + " linkage at " +
                         std::to_string(t0) + " has the wrong path count");
        continue;
      }
      for (int i = 0; i < L; ++i) {
        const auto& p = paths[i];
        if (!is_valid_path(g, p)) {
          issues.push_back(std::string(word) + " path " + std::to_string(i + 1) +
                           " at " + std::to_string(t0) + " is not a path");
          continue;
        }
        if (!set_inter(path_vertex_set(p), c.I).empty())
          issues.push_back(std::string(word) + " path " + std::to_string(i + 1) +
                           " at " + std::to_string(t0) + " meets I");
        VertexSet ends = make_set({p.front(), p.back()});
        VertexSet want =
            make_set({c.label(tri.parent, i + 1), c.label(child, i + 1)});
        if (ends != want)
          issues.push_back(std::string(word) + " path " + std::to_string(i + 1) +
                           " at " + std::to_string(t0) +
                           " has the wrong ends");
        for (int jx = 0; jx < i; ++jx)
          if (!set_inter(path_vertex_set(p), path_vertex_set(paths[jx]))
                   .empty())
            issues.push_back(std::string(word) + " paths " +
                             std::to_string(jx + 1) + " and " +
                             std::to_string(i + 1) + " at " +
                             std::to_string(t0) + " are not disjoint");
      }
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Refinement.

RefineResult refine_injective(const TreeDecomposition& td, const Cascade& c,
                              int a, int b, int k) {
  {
    CascadeSearchOpts o;
    o.h = a;
    o.s = c.s;
    o.min_common = k + 1;
    if (auto got = search_cascade(td, o)) return RefineResult{1, *got};
  }
  {
    CascadeSearchOpts o;
    o.h = b;
    o.s = c.s;
    o.injective = true;
    o.exact_I = k;
    if (auto got = search_cascade(td, o)) return RefineResult{2, *got};
  }
  long long need = tower_refine_height(a, b, td.width() + 1);
  std::ostringstream msg;
  msg << "refine: neither alternative found at desk scale";
  if (c.height() < need)
    msg << " (height " << c.height() << " is below the guaranteed bound "
        << need << ")";
  throw CascadeError(msg.str());
}

// ---------------------------------------------------------------------------
// Ordering.

Cascade order_cascade(const Graph& g, const TreeDecomposition& td,
                      const Cascade& c, long long cap) {
  if (!c.injective)
    throw CascadeError("order: cascade is not injective");
  if (auto bad = check_linked(g, td))
    throw CascadeError("order: decomposition is not linked between nodes " +
                       std::to_string(bad->t1) + " and " +
                       std::to_string(bad->t2));
  Cascade out = c;
  out.ordered = true;
  out.xi.clear();
  out.left_linkage.clear();
  out.right_linkage.clear();
  out.xi[c.pattern.minor_root] =
      set_diff(td.bag(c.node(c.pattern.minor_root)), c.I);
  Graph ambient = g.minus_vertices(c.I);
  int L = c.labels();
  auto majors = c.pattern.majors();
  std::sort(majors.begin(), majors.end(), [&](int x, int y) {
    return std::pair(c.pattern.height.at(x), x) <
           std::pair(c.pattern.height.at(y), y);
  });
  long long budget_used = 0;
  for (int t0 : majors) {
    Trinity tri = c.pattern.trinity(t0);
    std::vector<int> starts;
    for (int i = 1; i <= L; ++i) starts.push_back(out.xi.at(tri.parent)[i - 1]);
    VertexSet src_bag = set_diff(td.bag(c.node(tri.parent)), c.I);
    VertexSet left_bag = set_diff(td.bag(c.node(tri.left)), c.I);
    VertexSet right_bag = set_diff(td.bag(c.node(tri.right)), c.I);
    bool capped = false;
    auto lefts = enumerate_side_systems(ambient, starts, src_bag, left_bag,
                                        cap, capped, budget_used);
    auto rights = enumerate_side_systems(ambient, starts, src_bag, right_bag,
                                         cap, capped, budget_used);
    if (capped)
      throw CascadeError("order: inconclusive, path search capped at branch "
                         "vertex " +
                         std::to_string(t0));
    if (lefts.empty() || rights.empty())
      throw CascadeError("order: no disjoint path system at branch vertex " +
                         std::to_string(t0));
    if (static_cast<long long>(lefts.size()) *
            static_cast<long long>(rights.size()) >
        cap)
      throw CascadeError(
          "order: inconclusive, too many system pairs at branch vertex " +
          std::to_string(t0));
    long long best = LLONG_MAX;
    std::vector<Edge> best_edges;
    std::vector<std::vector<int>> best_verts;
    size_t bi = 0, bj = 0;
    for (size_t x = 0; x < lefts.size(); ++x)
      for (size_t y = 0; y < rights.size(); ++y) {
        long long m = pair_measure(lefts[x], rights[y]);
        if (m > best) continue;
        auto es = system_edges(lefts[x], rights[y]);
        auto vs = system_verts(lefts[x], rights[y]);
        if (m < best || std::tie(es, vs) < std::tie(best_edges, best_verts)) {
          best = m;
          best_edges = std::move(es);
          best_verts = std::move(vs);
          bi = x;
          bj = y;
        }
      }
    out.left_linkage[t0] = lefts[bi];
    out.right_linkage[t0] = rights[bj];
    std::vector<int> xl, xr;
    for (int i = 0; i < L; ++i) {
      xl.push_back(lefts[bi][i].back());
      xr.push_back(rights[bj][i].back());
    }
    out.xi[tri.left] = xl;
    out.xi[tri.right] = xr;
  }
  return out;
}

bool verify_minimality(const Graph& g, const TreeDecomposition& td,
                       const Cascade& c, int t0, long long cap) {
  if (!c.ordered || !c.left_linkage.count(t0) || !c.right_linkage.count(t0))
    throw CascadeError("minimality: no specified linkages at " +
                       std::to_string(t0));
  Trinity tri = c.pattern.trinity(t0);
  Graph ambient = g.minus_vertices(c.I);
  int L = c.labels();
  std::vector<int> starts;
  for (int i = 1; i <= L; ++i) starts.push_back(c.label(tri.parent, i));
  VertexSet src_bag = set_diff(td.bag(c.node(tri.parent)), c.I);
  VertexSet left_bag = set_diff(td.bag(c.node(tri.left)), c.I);
  VertexSet right_bag = set_diff(td.bag(c.node(tri.right)), c.I);
  bool capped = false;
  long long steps = 0;
  auto lefts = enumerate_side_systems(ambient, starts, src_bag, left_bag, cap,
                                      capped, steps);
  auto rights = enumerate_side_systems(ambient, starts, src_bag, right_bag,
                                       cap, capped, steps);
  if (capped)
    throw CascadeError("minimality: inconclusive, search capped at " +
                       std::to_string(t0));
  long long best = LLONG_MAX;
  for (const auto& P : lefts)
    for (const auto& Q : rights) best = std::min(best, pair_measure(P, Q));
  std::vector<PathInGraph> sp, sq;
  for (int i = 0; i < L; ++i) {
    sp.push_back(PathInGraph{
        oriented(c.left_linkage.at(t0)[i], c.label(tri.parent, i + 1))});
    sq.push_back(PathInGraph{
        oriented(c.right_linkage.at(t0)[i], c.label(tri.parent, i + 1))});
  }
  return pair_measure(sp, sq) == best;
}

// ---------------------------------------------------------------------------
// Confinement.

ConfinementSets confinement_sets(const Graph& g, const TreeDecomposition& td,
                                 const Cascade& c, int t0) {
  if (!c.ordered || !c.left_linkage.count(t0) || !c.right_linkage.count(t0))
    throw CascadeError("confinement: no specified linkages at " +
                       std::to_string(t0));
  Trinity tri = c.pattern.trinity(t0);
  VertexSet torso = eta_torso(g, td, c, t0).vertices();
  ConfinementSets out;
  int L = c.labels();
  auto label_of = [&](int minor, int v) {
    const auto& xs = c.xi.at(minor);
    for (int i = 0; i < static_cast<int>(xs.size()); ++i)
      if (xs[i] == v) return i + 1;
    return 0;
  };
  for (int side = 0; side < 2; ++side) {
    const auto& paths =
        side == 0 ? c.left_linkage.at(t0) : c.right_linkage.at(t0);
    int far_minor = side == 0 ? tri.right : tri.left;
    for (int i = 0; i < L; ++i) {
      auto verts = oriented(paths[i], c.label(tri.parent, i + 1));
      size_t first_out = verts.size(), last_out = verts.size();
      for (size_t x = 0; x < verts.size(); ++x)
        if (!set_contains(torso, verts[x])) {
          if (first_out == verts.size()) first_out = x;
          last_out = x;
        }
      if (first_out == verts.size()) {
        (side == 0 ? out.A : out.B).push_back(i + 1);
        continue;
      }
      int exit_label = label_of(far_minor, verts[first_out - 1]);
      int reentry_label = label_of(far_minor, verts[last_out + 1]);
      if (exit_label && reentry_label)
        (side == 0 ? out.C : out.D)
            .push_back({i + 1, exit_label, reentry_label});
    }
  }
  return out;
}

bool is_regular(const Graph& g, const TreeDecomposition& td,
                const Cascade& c) {
  auto majors = c.pattern.majors();
  if (majors.empty()) return true;
  ConfinementSets first = confinement_sets(g, td, c, majors[0]);
  for (size_t k = 1; k < majors.size(); ++k)
    if (!(confinement_sets(g, td, c, majors[k]) == first)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subcascades.

namespace {

std::vector<int> stitch(const std::vector<std::vector<int>>& pieces) {
  std::vector<int> out;
  for (const auto& p : pieces) {
    if (out.empty()) {
      out = p;
      continue;
    }
    if (out.back() != p.front())
      throw CascadeError("subcascade: linkage pieces do not meet end to end");
    out.insert(out.end(), p.begin() + 1, p.end());
  }
  if (make_set(out).size() != out.size())
    throw CascadeError("subcascade: stitched linkage revisits a vertex");
  return out;
}

}  // namespace

Cascade compose_subcascade(const Graph& g, const TreeDecomposition& td,
                           const Cascade& c, const PatternTree& sub,
                           const std::map<int, int>& gamma) {
  (void)g;
  (void)td;
  if (!is_monotone_embedding(sub, c.pattern, gamma))
    throw CascadeError("subcascade: re-rooting is not monotone");
  if (!c.ordered)
    throw CascadeError("subcascade: cascade is not ordered");
  Cascade out;
  out.pattern = sub;
  out.s = c.s;
  out.I = c.I;
  out.injective = c.injective;
  out.ordered = true;
  for (int v : sub.tree.vertices()) out.eta[v] = c.eta.at(gamma.at(v));
  for (int m : sub.minors()) out.xi[m] = c.xi.at(gamma.at(m));
  int L = c.labels();
  for (int t0 : sub.majors()) {
    Trinity tri = sub.trinity(t0);
    int host_major = gamma.at(t0);
    int top = gamma.at(tri.parent);
    auto ppath = tree_path(c.pattern.tree, top, host_major);
    std::vector<std::vector<std::vector<int>>> chain(L);
    for (size_t k = 0; k + 2 < ppath.size(); k += 2) {
      int vm = ppath[k];
      int w = ppath[k + 1];
      int vnext = ppath[k + 2];
      Trinity wt = c.pattern.trinity(w);
      if (vnext != wt.left && vnext != wt.right)
        throw CascadeError("subcascade: descent leaves the branch children");
      const auto& link =
          wt.left == vnext ? c.left_linkage.at(w) : c.right_linkage.at(w);
      for (int i = 0; i < L; ++i)
        chain[i].push_back(oriented(link[i], c.label(vm, i + 1)));
    }
    int last_minor = ppath[ppath.size() - 2];
    std::vector<PathInGraph> lefts, rights;
    for (int i = 0; i < L; ++i) {
      auto pieces = chain[i];
      pieces.push_back(oriented(c.left_linkage.at(host_major)[i],
                                c.label(last_minor, i + 1)));
      lefts.push_back(PathInGraph{stitch(pieces)});
      pieces = chain[i];
      pieces.push_back(oriented(c.right_linkage.at(host_major)[i],
                                c.label(last_minor, i + 1)));
      rights.push_back(PathInGraph{stitch(pieces)});
    }
    for (int side = 0; side < 2; ++side) {
      const auto& sys = side == 0 ? lefts : rights;
      for (size_t x = 0; x < sys.size(); ++x)
        for (size_t y = x + 1; y < sys.size(); ++y)
          if (!set_inter(path_vertex_set(sys[x]), path_vertex_set(sys[y]))
                   .empty())
            throw CascadeError(
                "subcascade: stitched linkage paths are not disjoint");
    }
    out.left_linkage[t0] = lefts;
    out.right_linkage[t0] = rights;
  }
  return out;
}

Cascade compose_weak_subcascade(const Cascade& c, const PatternTree& sub,
                                const std::map<int, int>& gamma) {
  if (!is_weakly_monotone_embedding(sub, c.pattern, gamma))
    throw CascadeError("subcascade: re-rooting is not weakly monotone");
  Cascade out;
  out.pattern = sub;
  out.s = c.s;
  out.I = c.I;
  out.injective = c.injective;
  out.ordered = c.ordered;
  for (int v : sub.tree.vertices()) out.eta[v] = c.eta.at(gamma.at(v));
  if (c.ordered)
    for (int m : sub.minors()) out.xi[m] = c.xi.at(gamma.at(m));
  return out;
}

std::optional<Cascade> regularize(const Graph& g, const TreeDecomposition& td,
                                  const Cascade& c, int a, long long cap) {
  if (!c.ordered)
    throw CascadeError("regularize: cascade is not ordered");
  auto host_majors = c.pattern.majors();
  std::map<int, std::string> sig;
  for (int w : host_majors) {
    ConfinementSets cs = confinement_sets(g, td, c, w);
    std::ostringstream os;
    os << "A" << set_to_string(cs.A) << "B" << set_to_string(cs.B) << "C";
    for (auto& t : cs.C) os << "(" << t[0] << "," << t[1] << "," << t[2] << ")";
    os << "D";
    for (auto& t : cs.D) os << "(" << t[0] << "," << t[1] << "," << t[2] << ")";
    sig[w] = os.str();
  }
  std::vector<std::string> classes;
  for (int w : host_majors)
    if (std::find(classes.begin(), classes.end(), sig[w]) == classes.end())
      classes.push_back(sig[w]);
  PatternTree sub = build_pattern(PatternKind::T, a);
  auto sub_majors = sub.majors();
  std::sort(sub_majors.begin(), sub_majors.end(), [&](int x, int y) {
    return std::pair(sub.height.at(x), x) < std::pair(sub.height.at(y), y);
  });
  long long tried = 0;
  for (const auto& cls : classes) {
    std::map<int, int> gm;  // sub major -> host major
    std::optional<Cascade> found;
    std::function<bool(size_t)> assign = [&](size_t k) -> bool {
      if (k == sub_majors.size()) {
        if (++tried > cap)
          throw CascadeError("regularize: inconclusive, search capped");
        std::map<int, int> gamma;
        gamma[sub.minor_root] = c.pattern.minor_root;
        for (const auto& [t, w] : gm) {
          gamma[t] = w;
          Trinity st = sub.trinity(t);
          Trinity ht = c.pattern.trinity(w);
          gamma[st.left] = ht.left;
          gamma[st.right] = ht.right;
        }
        Cascade composed = compose_subcascade(g, td, c, sub, gamma);
        if (is_regular(g, td, composed)) {
          found = composed;
          return true;
        }
        return false;
      }
      int t = sub_majors[k];
      int anchor = -1;
      if (sub.parent.at(t) != sub.minor_root) {
        int pm = sub.parent.at(t);  // parent minor of t inside sub
        // its image is the trinity child of the already-assigned parent major
        int q = sub.parent.at(pm);
        Trinity ht = c.pattern.trinity(gm.at(q));
        anchor = sub.trinity(q).left == pm ? ht.left : ht.right;
      }
      for (int w : host_majors) {
        if (sig[w] != cls) continue;
        bool taken = false;
        for (const auto& [t2, w2] : gm)
          if (w2 == w) taken = true;
        if (taken) continue;
        if (anchor != -1 && !c.pattern.is_ancestor(anchor, w)) continue;
        gm[t] = w;
        if (assign(k + 1)) return true;
        gm.erase(t);
      }
      return false;
    };
    if (assign(0)) return found;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tripods and properties.

std::array<int, 3> Tripod::feet() const {
  return {legs[0].back(), legs[1].back(), legs[2].back()};
}

VertexSet Tripod::vertices() const {
  std::vector<int> out;
  for (const auto& l : legs)
    for (int v : l.verts) out.push_back(v);
  return make_set(out);
}

namespace {

std::vector<Edge> tripod_edges(const Tripod& t) {
  std::set<Edge> es;
  for (const auto& l : t.legs)
    for (const auto& e : path_edges(l)) es.insert(e);
  return std::vector<Edge>(es.begin(), es.end());
}

// Legal tripod: legs run from the centre, pairwise meeting only there, at
// most one of length zero.
bool tripod_ok(const Graph& g, const Tripod& t) {
  int zero = 0;
  VertexSet seen = make_set({t.center});
  for (const auto& l : t.legs) {
    if (!is_valid_path(g, l) || l.front() != t.center) return false;
    if (l.length() == 0) ++zero;
    for (size_t i = 1; i < l.verts.size(); ++i) {
      if (set_contains(seen, l.verts[i])) return false;
      seen = set_union(seen, make_set({l.verts[i]}));
    }
  }
  return zero <= 1;
}

// Enumerates tripods with the given feet in g avoiding `banned`; cb
// returning true stops the walk.
bool enum_tripods(const Graph& g, const std::array<int, 3>& feet,
                  const VertexSet& banned, long long& steps, long long cap,
                  bool& capped, const std::function<bool(const Tripod&)>& cb) {
  for (int f : feet)
    if (!g.has_vertex(f) || set_contains(banned, f)) return false;
  for (int center : g.vertices()) {
    if (set_contains(banned, center)) continue;
    Tripod t;
    t.center = center;
    VertexSet used = set_union(banned, make_set({center}));
    std::function<bool(int)> leg = [&](int k) -> bool {
      if (k == 3) return cb(t);
      if (center == feet[k]) {
        t.legs[k] = PathInGraph{{center}};
        return leg(k + 1);
      }
      std::vector<int> prefix{center};
      std::function<bool()> extend = [&]() -> bool {
        if (++steps > cap) {
          capped = true;
          return true;
        }
        int v = prefix.back();
        for (int w : g.neighbors(v)) {
          if (set_contains(used, w)) continue;
          if (w == feet[k]) {
            prefix.push_back(w);
            used = set_union(used, make_set({w}));
            t.legs[k] = PathInGraph{prefix};
            bool stop = leg(k + 1);
            used = set_diff(used, make_set({w}));
            prefix.pop_back();
            if (stop) return true;
            continue;
          }
          bool is_foot = false;
          for (int f : feet)
            if (f == w) is_foot = true;
          if (is_foot) continue;  // feet belong to their own leg only
          prefix.push_back(w);
          used = set_union(used, make_set({w}));
          bool stop = extend();
          used = set_diff(used, make_set({w}));
          prefix.pop_back();
          if (stop) return true;
        }
        return false;
      };
      return extend();
    };
    if (leg(0)) return true;
    if (capped) return true;
  }
  return false;
}

bool graph_intersection_is_path(const VertexSet& vs,
                                const std::vector<Edge>& es) {
  if (vs.empty()) return false;
  if (es.size() + 1 != vs.size()) return false;
  std::map<int, int> deg;
  for (int v : vs) deg[v] = 0;
  for (const auto& e : es) {
    if (!set_contains(vs, e.first) || !set_contains(vs, e.second)) return false;
    ++deg[e.first];
    ++deg[e.second];
  }
  int ones = 0;
  for (const auto& [v, d] : deg) {
    if (d > 2) return false;
    if (d <= 1) ++ones;
  }
  if (vs.size() == 1) return es.empty();
  if (ones != 2) return false;
  // connectivity of the shared piece
  Graph piece(vs, es);
  return is_connected(piece);
}

// The intersection discipline of tag B: the tripods share exactly one
// segment, lying on leg `li` of L_i and leg `lj` of L_j, clear of both
// centres.
bool b_intersection_ok(const Tripod& Li, const Tripod& Lj, int li, int lj) {
  VertexSet vi = Li.vertices(), vj = Lj.vertices();
  VertexSet shared = set_inter(vi, vj);
  if (shared.empty()) return false;
  auto ei = tripod_edges(Li);
  auto ej = tripod_edges(Lj);
  std::vector<Edge> shared_e;
  for (const auto& e : ei)
    if (std::find(ej.begin(), ej.end(), e) != ej.end()) shared_e.push_back(e);
  VertexSet leg_v =
      set_inter(path_vertex_set(Li.legs[li]), path_vertex_set(Lj.legs[lj]));
  std::vector<Edge> leg_e;
  for (const auto& e : path_edges(Li.legs[li]))
    for (const auto& f : path_edges(Lj.legs[lj]))
      if (e == f) leg_e.push_back(e);
  std::sort(leg_e.begin(), leg_e.end());
  std::sort(shared_e.begin(), shared_e.end());
  if (shared != leg_v || shared_e != leg_e) return false;
  if (set_contains(shared, Li.center) || set_contains(shared, Lj.center))
    return false;
  return graph_intersection_is_path(shared, shared_e);
}

// Shortest connector between two vertex sets with interior outside `forbid`;
// ends lie on the sets themselves.
std::optional<PathInGraph> connector(const Graph& g, const VertexSet& from,
                                     const VertexSet& to,
                                     const VertexSet& forbid) {
  // direct edge first
  for (int u : from)
    for (int v : to)
      if (g.has_edge(u, v)) return PathInGraph{{u, v}};
  std::map<int, int> prev;
  std::vector<int> frontier;
  for (int u : from)
    if (g.has_vertex(u))
      for (int w : g.neighbors(u))
        if (!set_contains(forbid, w) && !prev.count(w) &&
            !set_contains(from, w) && !set_contains(to, w)) {
          prev[w] = u;
          frontier.push_back(w);
        }
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier)
      for (int w : g.neighbors(v)) {
        if (set_contains(to, w)) {
          std::vector<int> rev{w, v};
          int x = v;
          while (!set_contains(from, prev.at(x))) {
            x = prev.at(x);
            rev.push_back(x);
          }
          rev.push_back(prev.at(x));
          return PathInGraph{std::vector<int>(rev.rbegin(), rev.rend())};
        }
        if (set_contains(forbid, w) || prev.count(w) ||
            set_contains(from, w))
          continue;
        prev[w] = v;
        next.push_back(w);
      }
    frontier = next;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> segment_of(const std::vector<int>& path, int x,
                                           int y) {
  auto px = std::find(path.begin(), path.end(), x);
  auto py = std::find(path.begin(), path.end(), y);
  if (px == path.end() || py == path.end()) return std::nullopt;
  if (px <= py) return std::vector<int>(px, py + 1);
  std::vector<int> seg(py, px + 1);
  return std::vector<int>(seg.rbegin(), seg.rend());
}

bool is_contiguous_in(const std::vector<int>& seg,
                      const std::vector<int>& path) {
  auto sub = segment_of(path, seg.front(), seg.back());
  if (!sub) return false;
  if (*sub == seg) return true;
  std::vector<int> rev(seg.rbegin(), seg.rend());
  return *sub == rev;
}

}  // namespace

PropertyCheck check_property(const Graph& g, const TreeDecomposition& td,
                             const Cascade& c, int t0, PropertyTag tag, int i,
                             int j, long long cap) {
  if (!c.ordered)
    throw CascadeError("property: cascade is not ordered");
  Trinity tri = c.pattern.trinity(t0);
  Graph torso = eta_torso(g, td, c, t0);
  int L = c.labels();
  if (tag != PropertyTag::C &&
      (i < 1 || i > L || j < 1 || j > L || i == j))
    throw CascadeError("property: label pair out of range");
  auto lab = [&](int minor, int k) { return c.label(minor, k); };
  long long steps = 0;
  bool capped = false;
  PropertyCheck out;
  auto finish = [&]() {
    if (!out.witness && capped) out.status = SearchStatus::Inconclusive;
    return out;
  };

  if (tag == PropertyTag::A) {
    for (int m2 : {i, j})
      for (int m3 : {i, j}) {
        int o2 = m2 == i ? j : i, o3 = m3 == i ? j : i;
        std::array<int, 3> fi{lab(tri.parent, i), lab(tri.left, m2),
                              lab(tri.right, m3)};
        std::array<int, 3> fj{lab(tri.parent, j), lab(tri.left, o2),
                              lab(tri.right, o3)};
        enum_tripods(torso, fi, {}, steps, cap, capped, [&](const Tripod& Li) {
          return enum_tripods(torso, fj, Li.vertices(), steps, cap, capped,
                              [&](const Tripod& Lj) {
                                PropertyWitness w;
                                w.tag = tag;
                                w.t0 = t0;
                                w.i = i;
                                w.j = j;
                                w.tripods = {Li, Lj};
                                out.witness = w;
                                out.status = SearchStatus::Found;
                                return true;
                              });
        });
        if (out.witness || capped) return finish();
      }
    return finish();
  }

  if (tag == PropertyTag::B) {
    for (int b1 : {0, 1})
      for (int b2 : {0, 1})
        for (int b3 : {0, 1}) {
          int vi1 = lab(tri.parent, b1 ? j : i),
              vj1 = lab(tri.parent, b1 ? i : j);
          int vi2 = lab(tri.left, b2 ? j : i), vj2 = lab(tri.left, b2 ? i : j);
          int vi3 = lab(tri.right, b3 ? j : i),
              vj3 = lab(tri.right, b3 ? i : j);
          enum_tripods(
              torso, {vi1, vi2, vi3}, {}, steps, cap, capped,
              [&](const Tripod& Li) {
                return enum_tripods(
                    torso, {vj1, vj2, vj3}, {}, steps, cap, capped,
                    [&](const Tripod& Lj) {
                      bool fwd = b_intersection_ok(Li, Lj, 2, 1);
                      bool mir = !fwd && b_intersection_ok(Li, Lj, 1, 2);
                      if (!fwd && !mir) return false;
                      PropertyWitness w;
                      w.tag = tag;
                      w.t0 = t0;
                      w.i = i;
                      w.j = j;
                      w.tripods = {Li, Lj};
                      w.mirrored = mir;
                      out.witness = w;
                      out.status = SearchStatus::Found;
                      return true;
                    });
              });
          if (out.witness || capped) return finish();
        }
    return finish();
  }

  if (tag == PropertyTag::Cij) {
    PathSystemEnum en{torso,
                      {lab(tri.parent, i), lab(tri.parent, j),
                       lab(tri.left, j)},
                      {make_set({lab(tri.left, i)}),
                       make_set({lab(tri.right, j)}),
                       make_set({lab(tri.right, i)})},
                      std::vector<VertexSet>(3),
                      cap};
    en.run([&](const std::vector<PathInGraph>& sys) {
      VertexSet all = set_union(
          set_union(path_vertex_set(sys[0]), path_vertex_set(sys[1])),
          path_vertex_set(sys[2]));
      const std::array<std::pair<int, int>, 3> pairs{
          std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}};
      for (auto [x, y] : pairs) {
        auto r = connector(torso, path_vertex_set(sys[x]),
                           path_vertex_set(sys[y]), all);
        if (r) {
          PropertyWitness w;
          w.tag = tag;
          w.t0 = t0;
          w.i = i;
          w.j = j;
          w.paths = {sys[0], sys[1], sys[2], *r};
          out.witness = w;
          out.status = SearchStatus::Found;
          return true;
        }
      }
      return false;
    });
    capped = capped || en.capped;
    return finish();
  }

  if (tag == PropertyTag::AB) {
    std::optional<std::vector<PathInGraph>> lsys, rsys;
    {
      PathSystemEnum en{torso,
                        {lab(tri.parent, i), lab(tri.parent, j)},
                        {make_set({lab(tri.left, i)}),
                         make_set({lab(tri.left, j)})},
                        std::vector<VertexSet>(2),
                        cap};
      en.run([&](const std::vector<PathInGraph>& sys) {
        lsys = sys;
        return true;
      });
      capped = capped || en.capped;
    }
    {
      PathSystemEnum en{torso,
                        {lab(tri.parent, i), lab(tri.parent, j)},
                        {make_set({lab(tri.right, i)}),
                         make_set({lab(tri.right, j)})},
                        std::vector<VertexSet>(2),
                        cap};
      en.run([&](const std::vector<PathInGraph>& sys) {
        rsys = sys;
        return true;
      });
      capped = capped || en.capped;
    }
    if (lsys && rsys) {
      PropertyWitness w;
      w.tag = tag;
      w.t0 = t0;
      w.i = i;
      w.j = j;
      w.paths = {(*lsys)[0], (*lsys)[1], (*rsys)[0], (*rsys)[1]};
      out.witness = w;
      out.status = SearchStatus::Found;
    }
    return finish();
  }

  // tag C: the split of the labels and common subpaths of both linkages
  ConfinementSets cs = confinement_sets(g, td, c, t0);
  if (L % 2 != 0) return finish();
  if (!set_inter(cs.A, cs.B).empty()) return finish();
  if (static_cast<int>(cs.A.size()) != L / 2 ||
      static_cast<int>(cs.B.size()) != L / 2)
    return finish();
  VertexSet torso_v = torso.vertices();
  std::vector<std::vector<int>> lv, rv;
  for (int k = 0; k < L; ++k) {
    lv.push_back(oriented(c.left_linkage.at(t0)[k], lab(tri.parent, k + 1)));
    rv.push_back(oriented(c.right_linkage.at(t0)[k], lab(tri.parent, k + 1)));
  }
  std::vector<std::vector<int>> fixed;
  for (int k : cs.A) {
    const auto& seg = lv[k - 1];
    bool sub = false;
    for (const auto& q : rv)
      if (is_contiguous_in(seg, q)) sub = true;
    if (!sub || !set_subset(make_set(seg), torso_v)) return finish();
    fixed.push_back(seg);
  }
  for (int k : cs.B) {
    const auto& seg = rv[k - 1];
    bool sub = false;
    for (const auto& q : lv)
      if (is_contiguous_in(seg, q)) sub = true;
    if (!sub || !set_subset(make_set(seg), torso_v)) return finish();
    fixed.push_back(seg);
  }
  // one extra path per matched pair (k in B, l in A)
  std::vector<int> As(cs.A.begin(), cs.A.end());
  std::vector<int> Bs(cs.B.begin(), cs.B.end());
  std::vector<int> perm(As.size());
  for (size_t x = 0; x < perm.size(); ++x) perm[x] = static_cast<int>(x);
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<std::vector<int>> extras;
    bool ok = true;
    for (size_t x = 0; x < Bs.size() && ok; ++x) {
      int kb = Bs[x], la = As[perm[x]];
      int from = lab(tri.left, kb), to = lab(tri.right, la);
      std::optional<std::vector<int>> got;
      for (const auto& p : lv) {
        auto seg = segment_of(p, from, to);
        if (!seg) continue;
        for (const auto& q : rv)
          if (is_contiguous_in(*seg, q)) {
            got = seg;
            break;
          }
        if (got) break;
      }
      if (!got || !set_subset(make_set(*got), torso_v)) {
        ok = false;
        break;
      }
      extras.push_back(*got);
    }
    if (!ok) continue;
    std::vector<std::vector<int>> all = fixed;
    all.insert(all.end(), extras.begin(), extras.end());
    bool disjoint = true;
    for (size_t x = 0; x < all.size() && disjoint; ++x)
      for (size_t y = x + 1; y < all.size() && disjoint; ++y)
        if (!set_inter(make_set(all[x]), make_set(all[y])).empty())
          disjoint = false;
    if (!disjoint) continue;
    PropertyWitness w;
    w.tag = tag;
    w.t0 = t0;
    w.setA = cs.A;
    w.setB = cs.B;
    for (const auto& p : all) w.paths.push_back(PathInGraph{p});
    out.witness = w;
    out.status = SearchStatus::Found;
    return finish();
  } while (std::next_permutation(perm.begin(), perm.end()));
  return finish();
}

std::vector<std::string> validate_witness(const Graph& g,
                                          const TreeDecomposition& td,
                                          const Cascade& c,
                                          const PropertyWitness& w) {
  std::vector<std::string> issues;
  Trinity tri = c.pattern.trinity(w.t0);
  Graph torso = eta_torso(g, td, c, w.t0);
  auto lab = [&](int minor, int k) { return c.label(minor, k); };
  auto in_torso = [&](const VertexSet& vs) {
    return set_subset(vs, torso.vertices());
  };
  if (w.tag == PropertyTag::A || w.tag == PropertyTag::B) {
    if (w.tripods.size() != 2) {
      issues.push_back("expected two tripods");
      return issues;
    }
    const Tripod& Li = w.tripods[0];
    const Tripod& Lj = w.tripods[1];
    for (const Tripod& t : w.tripods) {
      if (!tripod_ok(torso, t)) issues.push_back("tripod is malformed");
      if (!in_torso(t.vertices()))
        issues.push_back("tripod leaves the torso");
    }
    auto fi = Li.feet(), fj = Lj.feet();
    if (fi[0] != lab(tri.parent, w.i) || fj[0] != lab(tri.parent, w.j))
      issues.push_back("parent feet do not carry labels i and j");
    if (make_set({fi[1], fj[1]}) !=
        make_set({lab(tri.left, w.i), lab(tri.left, w.j)}))
      issues.push_back("left feet are not the labelled pair");
    if (make_set({fi[2], fj[2]}) !=
        make_set({lab(tri.right, w.i), lab(tri.right, w.j)}))
      issues.push_back("right feet are not the labelled pair");
    if (w.tag == PropertyTag::A) {
      if (!set_inter(Li.vertices(), Lj.vertices()).empty())
        issues.push_back("tripods are not disjoint");
    } else {
      bool ok = w.mirrored ? b_intersection_ok(Li, Lj, 1, 2)
                           : b_intersection_ok(Li, Lj, 2, 1);
      if (!ok) issues.push_back("tripods do not share exactly one leg segment");
    }
    return issues;
  }
  if (w.tag == PropertyTag::Cij) {
    if (w.paths.size() != 4) {
      issues.push_back("expected four paths");
      return issues;
    }
    const std::array<std::pair<int, int>, 3> ends{
        std::pair{lab(tri.parent, w.i), lab(tri.left, w.i)},
        std::pair{lab(tri.parent, w.j), lab(tri.right, w.j)},
        std::pair{lab(tri.left, w.j), lab(tri.right, w.i)}};
    for (int k = 0; k < 3; ++k) {
      if (!is_valid_path(torso, w.paths[k]))
        issues.push_back("path is not a torso path");
      else if (make_set({w.paths[k].front(), w.paths[k].back()}) !=
               make_set({ends[k].first, ends[k].second}))
        issues.push_back("path has the wrong ends");
    }
    for (int x = 0; x < 3; ++x)
      for (int y = x + 1; y < 3; ++y)
        if (!set_inter(path_vertex_set(w.paths[x]),
                       path_vertex_set(w.paths[y]))
                 .empty())
          issues.push_back("the three paths are not disjoint");
    const PathInGraph& r = w.paths[3];
    if (!is_valid_path(torso, r) || r.length() < 1) {
      issues.push_back("connector is not a torso path");
      return issues;
    }
    bool front_on = false, back_on = false;
    int fk = -1, bk = -1;
    for (int k = 0; k < 3; ++k) {
      if (set_contains(path_vertex_set(w.paths[k]), r.front())) {
        front_on = true;
        fk = k;
      }
      if (set_contains(path_vertex_set(w.paths[k]), r.back())) {
        back_on = true;
        bk = k;
      }
    }
    if (!front_on || !back_on || fk == bk)
      issues.push_back("connector does not join two distinct paths");
    for (size_t x = 1; x + 1 < r.verts.size(); ++x)
      for (int k = 0; k < 3; ++k)
        if (set_contains(path_vertex_set(w.paths[k]), r.verts[x]))
          issues.push_back("connector interior touches the paths");
    return issues;
  }
  if (w.tag == PropertyTag::AB) {
    if (w.paths.size() != 4) {
      issues.push_back("expected four paths");
      return issues;
    }
    const std::array<std::pair<int, int>, 4> ends{
        std::pair{lab(tri.parent, w.i), lab(tri.left, w.i)},
        std::pair{lab(tri.parent, w.j), lab(tri.left, w.j)},
        std::pair{lab(tri.parent, w.i), lab(tri.right, w.i)},
        std::pair{lab(tri.parent, w.j), lab(tri.right, w.j)}};
    for (int k = 0; k < 4; ++k) {
      if (!is_valid_path(torso, w.paths[k]))
        issues.push_back("path is not a torso path");
      else if (make_set({w.paths[k].front(), w.paths[k].back()}) !=
               make_set({ends[k].first, ends[k].second}))
        issues.push_back("path has the wrong ends");
    }
    if (!set_inter(path_vertex_set(w.paths[0]), path_vertex_set(w.paths[1]))
             .empty())
      issues.push_back("the two left paths are not disjoint");
    if (!set_inter(path_vertex_set(w.paths[2]), path_vertex_set(w.paths[3]))
             .empty())
      issues.push_back("the two right paths are not disjoint");
    return issues;
  }
  // tag C
  ConfinementSets cs = confinement_sets(g, td, c, w.t0);
  int L = c.labels();
  if (L % 2 != 0) issues.push_back("label count is odd");
  if (cs.A != w.setA || cs.B != w.setB)
    issues.push_back("stored split does not match the confinement record");
  if (!set_inter(cs.A, cs.B).empty() ||
      static_cast<int>(cs.A.size()) != L / 2 ||
      static_cast<int>(cs.B.size()) != L / 2)
    issues.push_back("confinement record is not an even split");
  if (static_cast<int>(w.paths.size()) != L + L / 2)
    issues.push_back("wrong number of common subpaths");
  std::vector<std::vector<int>> lv, rv;
  for (int k = 0; k < L; ++k) {
    lv.push_back(oriented(c.left_linkage.at(w.t0)[k], lab(tri.parent, k + 1)));
    rv.push_back(
        oriented(c.right_linkage.at(w.t0)[k], lab(tri.parent, k + 1)));
  }
  for (size_t x = 0; x < w.paths.size(); ++x) {
    const auto& seg = w.paths[x].verts;
    bool inl = false, inr = false;
    for (const auto& p : lv)
      if (is_contiguous_in(seg, p)) inl = true;
    for (const auto& q : rv)
      if (is_contiguous_in(seg, q)) inr = true;
    if (!inl || !inr)
      issues.push_back("a listed path is not a common subpath");
    if (!set_subset(make_set(seg), torso.vertices()))
      issues.push_back("a listed path leaves the torso");
    for (size_t y = x + 1; y < w.paths.size(); ++y)
      if (!set_inter(path_vertex_set(w.paths[x]),
                     path_vertex_set(w.paths[y]))
               .empty())
        issues.push_back("listed paths are not disjoint");
  }
  size_t idx = 0;
  for (int k : cs.A) {
    VertexSet want = make_set({lab(tri.parent, k), lab(tri.left, k)});
    if (idx < w.paths.size() &&
        make_set({w.paths[idx].front(), w.paths[idx].back()}) != want)
      issues.push_back("split path has the wrong ends");
    ++idx;
  }
  for (int k : cs.B) {
    VertexSet want = make_set({lab(tri.parent, k), lab(tri.right, k)});
    if (idx < w.paths.size() &&
        make_set({w.paths[idx].front(), w.paths[idx].back()}) != want)
      issues.push_back("split path has the wrong ends");
    ++idx;
  }
  VertexSet left_used, right_used;
  for (; idx < w.paths.size(); ++idx) {
    int f = w.paths[idx].front(), bck = w.paths[idx].back();
    int kb = 0, la = 0;
    for (int k : cs.B)
      if (lab(tri.left, k) == f || lab(tri.left, k) == bck) kb = k;
    for (int k : cs.A)
      if (lab(tri.right, k) == f || lab(tri.right, k) == bck) la = k;
    if (!kb || !la)
      issues.push_back("an extra path does not join the matched label bags");
    else {
      if (set_contains(left_used, kb) || set_contains(right_used, la))
        issues.push_back("extra paths reuse a label");
      left_used = set_union(left_used, make_set({kb}));
      right_used = set_union(right_used, make_set({la}));
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// W6 paths.

PathInGraph w6_path(const Graph& g, const TreeDecomposition& td,
                    const Cascade& c, int v, int x, int y) {
  if (c.pattern.is_major(v))
    throw CascadeError("w6: vertex is not a path vertex");
  if (x == y) throw CascadeError("w6: endpoints coincide");
  const VertexSet& bag = td.bag(c.node(v));
  if (!set_contains(bag, x) || !set_contains(bag, y))
    throw CascadeError("w6: endpoints are not in the bag at the image");
  Graph outer = outer_graph(g, td, c, v);
  VertexSet allowed = set_diff(outer.vertices(), bag);
  std::map<int, int> prev;
  std::vector<int> frontier;
  for (int w : g.neighbors(x))
    if (set_contains(allowed, w)) {
      prev[w] = x;
      frontier.push_back(w);
    }
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      if (g.has_edge(u, y)) {
        std::vector<int> rev{y, u};
        int t = u;
        while (prev.at(t) != x) {
          t = prev.at(t);
          rev.push_back(t);
        }
        rev.push_back(x);
        return PathInGraph{std::vector<int>(rev.rbegin(), rev.rend())};
      }
      for (int w : g.neighbors(u)) {
        if (!set_contains(allowed, w) || prev.count(w)) continue;
        prev[w] = u;
        next.push_back(w);
      }
    }
    frontier = next;
  }
  throw CascadeError("w6: no path with interior past the bag joins " +
                     std::to_string(x) + " and " + std::to_string(y) +
                     " at node " + std::to_string(c.node(v)) +
                     "; the tied-pair property must fail upstream");
}

// ---------------------------------------------------------------------------
// Taming.

TameReport tame(const Graph& g, const TreeDecomposition& td, const Cascade& c,
                long long cap) {
  if (!c.ordered)
    throw CascadeError("tame: cascade is not ordered");
  PatternTree sub = build_pattern(PatternKind::T, 1);
  Trinity stri = sub.trinity(sub.major_root);
  std::vector<std::map<int, int>> gammas;
  auto minors = c.pattern.minors();
  for (int w : c.pattern.majors()) {
    Trinity tri = c.pattern.trinity(w);
    for (int m0 : minors) {
      if (!c.pattern.is_ancestor(m0, w)) continue;
      for (int swap : {0, 1}) {
        int anchorL = swap ? tri.right : tri.left;
        int anchorR = swap ? tri.left : tri.right;
        for (int mL : minors) {
          if (!c.pattern.is_ancestor(anchorL, mL)) continue;
          for (int mR : minors) {
            if (!c.pattern.is_ancestor(anchorR, mR)) continue;
            std::map<int, int> gamma;
            gamma[sub.minor_root] = m0;
            gamma[sub.major_root] = w;
            gamma[stri.left] = mL;
            gamma[stri.right] = mR;
            gammas.push_back(gamma);
          }
        }
      }
    }
  }
  TameReport rep;
  long long refuted = 0, inconclusive = 0;
  int L = c.labels();
  for (PropertyTag tag : {PropertyTag::A, PropertyTag::B})
    for (int i = 1; i <= L; ++i)
      for (int j = 1; j <= L; ++j) {
        if (i == j) continue;
        for (const auto& gamma : gammas) {
          Cascade composed = compose_weak_subcascade(c, sub, gamma);
          PropertyCheck pc =
              check_property(g, td, composed, sub.major_root, tag, i, j, cap);
          if (pc.status == SearchStatus::Found) {
            rep.found = true;
            rep.i = i;
            rep.j = j;
            rep.tag = tag;
            rep.sub = composed;
            rep.gamma = gamma;
            rep.witness = *pc.witness;
            return rep;
          }
          if (pc.status == SearchStatus::Inconclusive)
            ++inconclusive;
          else
            ++refuted;
        }
      }
  std::ostringstream os;
  os << "no height-one re-rooting carries A or B: " << refuted
     << " searches refuted";
  if (inconclusive) os << ", " << inconclusive << " capped";
  rep.note = os.str();
  return rep;
}

Cascade restrict_to_child(const Cascade& c, int minor_child) {
  if (c.height() < 2)
    throw CascadeError("restrict: nothing hangs below a height-one pattern");
  Trinity top = c.pattern.trinity(c.pattern.major_root);
  if (minor_child != top.left && minor_child != top.right)
    throw CascadeError("restrict: not a child of the branch root");
  PatternTree sub = build_pattern(PatternKind::T, c.height() - 1);
  std::map<int, int> phi;  // sub vertex -> host pattern vertex
  phi[sub.minor_root] = minor_child;
  std::function<void(int, int)> walk = [&](int sm, int hm) {
    phi[sm] = hm;
    if (!sub.is_major(sm)) return;
    Trinity st = sub.trinity(sm);
    Trinity ht = c.pattern.trinity(hm);
    walk(st.left, ht.left);
    walk(st.right, ht.right);
    // descend through the next branch vertices, if any
    for (int side = 0; side < 2; ++side) {
      int sminor = side == 0 ? st.left : st.right;
      int hminor = side == 0 ? ht.left : ht.right;
      auto skids = sub.children(sminor);
      auto hkids = c.pattern.children(hminor);
      if (!skids.empty()) walk(skids[0], hkids[0]);
    }
  };
  int host_major = c.pattern.children(minor_child)[0];
  walk(sub.major_root, host_major);
  Cascade out;
  out.pattern = sub;
  out.s = c.s;
  out.I = c.I;
  out.injective = c.injective;
  out.ordered = c.ordered;
  for (const auto& [sv, hv] : phi) out.eta[sv] = c.eta.at(hv);
  if (c.ordered)
    for (int m : sub.minors())
      if (c.xi.count(phi.at(m))) out.xi[m] = c.xi.at(phi.at(m));
  for (int t : sub.majors()) {
    int hm = phi.at(t);
    if (c.left_linkage.count(hm)) out.left_linkage[t] = c.left_linkage.at(hm);
    if (c.right_linkage.count(hm))
      out.right_linkage[t] = c.right_linkage.at(hm);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Growth bounds. The two-parameter recursion g(a,b,1)=a, g(a,1,k)=g(a,a,k-1),
// g(a,b,k)=g(a,b-1,k)+g(a,a,k-1) collapses to g(a,b,k)=b*a^(k-1) for k>=2.

namespace {

const long long kSat = LLONG_MAX / 4;

long long sat_mul(long long a, long long b) {
  if (a <= 0 || b <= 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

long long sat_pow(long long a, long long e) {
  long long out = 1;
  for (long long k = 0; k < e; ++k) {
    out = sat_mul(out, a);
    if (out >= kSat) return kSat;
  }
  return out;
}

}  // namespace

long long tower_g(int a, int b, int k) {
  if (k <= 1) return a;
  return sat_mul(b, sat_pow(a, k - 1));
}

long long tower_color_height(int a, int k) { return tower_g(a, a, k); }

long long tower_cascade_height(int a, int h) {
  return sat_mul(a + 2, h) + a;
}

long long tower_refine_height(int a, int b, int w) {
  return sat_mul(sat_mul(2 * (a + 2), w) + 2, b);
}

long long tower_tame_height(int target_h, int w) {
  long long a3 = 3LL * target_h;
  long long pairs2 = static_cast<long long>(w) * (w - 1);  // 2 * C(w, 2)
  long long a2 = tower_g(static_cast<int>(std::min<long long>(a3, 1 << 20)),
                         static_cast<int>(std::min<long long>(a3, 1 << 20)),
                         static_cast<int>(std::min<long long>(pairs2, 60)));
  long long a1 = sat_mul(5, a2);
  return sat_mul(a1, a1);  // g(a1, a1, 2)
}

// ---------------------------------------------------------------------------
// Certificates.

std::string cascade_to_json(const Cascade& c) {
  nlohmann::json j;
  j["kind"] = "T";
  j["h"] = c.pattern.h;
  j["s"] = c.s;
  j["injective"] = c.injective;
  j["ordered"] = c.ordered;
  j["I"] = c.I;
  nlohmann::json eta = nlohmann::json::array();
  for (const auto& [t, n] : c.eta) eta.push_back({t, n});
  j["eta"] = eta;
  if (!c.xi.empty()) {
    nlohmann::json xi = nlohmann::json::object();
    for (const auto& [m, xs] : c.xi) xi[std::to_string(m)] = xs;
    j["xi"] = xi;
  }
  auto dump_link = [](const std::map<int, std::vector<PathInGraph>>& link) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [m, paths] : link) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& p : paths) arr.push_back(p.verts);
      o[std::to_string(m)] = arr;
    }
    return o;
  };
  if (!c.left_linkage.empty()) j["left"] = dump_link(c.left_linkage);
  if (!c.right_linkage.empty()) j["right"] = dump_link(c.right_linkage);
  return j.dump(2) + "\n";
}

Cascade cascade_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CascadeError(std::string("certificate parse error: ") + e.what());
  }
  try {
    Cascade c;
    c.pattern = build_pattern(PatternKind::T, j.at("h").get<int>());
    c.s = j.at("s").get<int>();
    c.injective = j.at("injective").get<bool>();
    c.ordered = j.at("ordered").get<bool>();
    c.I = j.at("I").get<VertexSet>();
    for (const auto& e : j.at("eta"))
      c.eta[e.at(0).get<int>()] = e.at(1).get<int>();
    if (j.count("xi"))
      for (auto it = j["xi"].begin(); it != j["xi"].end(); ++it)
        c.xi[std::stoi(it.key())] = it.value().get<std::vector<int>>();
    auto load_link = [&](const char* key,
                         std::map<int, std::vector<PathInGraph>>& link) {
      if (!j.count(key)) return;
      for (auto it = j[key].begin(); it != j[key].end(); ++it) {
        std::vector<PathInGraph> paths;
        for (const auto& arr : it.value())
          paths.push_back(PathInGraph{arr.get<std::vector<int>>()});
        link[std::stoi(it.key())] = paths;
      }
    };
    load_link("left", c.left_linkage);
    load_link("right", c.right_linkage);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw CascadeError(std::string("certificate field error: ") + e.what());
  }
}

}  // namespace tdlab
