#include "tdlab/families.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tdlab/connectivity.hpp"
#include "tdlab/exact_width.hpp"

namespace tdlab {

namespace {

// Complete binary tree in heap order: children of v at 2v+1 and 2v+2.
Graph heap_tree(int k) {
  int n = (1 << (k + 1)) - 1;
  std::vector<Edge> es;
  for (int v = 0; v < (1 << k) - 1; ++v) {
    es.push_back(norm_edge(v, 2 * v + 1));
    es.push_back(norm_edge(v, 2 * v + 2));
  }
  return Graph::from_edges(n, es);
}

VertexSet heap_leaves(int k) {
  std::vector<int> out;
  for (int v = (1 << k) - 1; v <= (1 << (k + 1)) - 2; ++v) out.push_back(v);
  return make_set(out);
}

// Vertex map of one copy of the stack of height k-1 inside the stack of
// height k. The shared triangle is (0, 1, 2) with base (0, 1); copy 1 hangs
// its base on (0, 2), copy 2 on (1, 2). sub_n is the copy's vertex count.
int q_inject(int copy, int v, int sub_n) {
  if (v == 0) return copy == 1 ? 0 : 1;
  if (v == 1) return 2;
  return copy == 1 ? v + 1 : v + sub_n - 1;
}

Graph gen_q(int k) {
  if (k == 1) return Graph::complete_graph(3);
  Graph sub = gen_q(k - 1);
  int sn = sub.n();
  std::set<Edge> es{norm_edge(0, 1), norm_edge(0, 2), norm_edge(1, 2)};
  for (int copy : {1, 2})
    for (const auto& e : sub.edges())
      es.insert(norm_edge(q_inject(copy, e.first, sn),
                          q_inject(copy, e.second, sn)));
  return Graph::from_edges(2 * sn - 1, std::vector<Edge>(es.begin(), es.end()));
}

// The automorphism of the stack swapping the two base ends.
std::map<int, int> q_base_swap(int k) {
  if (k == 1) return {{0, 1}, {1, 0}, {2, 2}};
  auto sub = q_base_swap(k - 1);
  int sn = (1 << (k - 1)) + 1;
  std::map<int, int> s{{0, 1}, {1, 0}, {2, 2}};
  for (int x = 2; x < sn; ++x) {
    s[q_inject(1, x, sn)] = q_inject(2, sub.at(x), sn);
    s[q_inject(2, x, sn)] = q_inject(1, sub.at(x), sn);
  }
  return s;
}

bool is_forest_graph(const Graph& g) {
  return g.m() == g.n() - static_cast<int>(components(g).size());
}

bool sets_touch(const Graph& g, const VertexSet& a, const VertexSet& b) {
  for (int u : a)
    for (int w : g.neighbors(u))
      if (set_contains(b, w)) return true;
  return false;
}

}  // namespace

std::string family_to_string(FamilyName name) {
  switch (name) {
    case FamilyName::P: return "P";
    case FamilyName::PPrime: return "P'";
    case FamilyName::PDoublePrime: return "P''";
    case FamilyName::Q: return "Q";
    case FamilyName::QPrime: return "Q'";
    case FamilyName::QDoublePrime: return "Q''";
    case FamilyName::A: return "A";
    case FamilyName::C32: return "C32";
    case FamilyName::CT: return "CT";
  }
  return "?";
}

std::optional<FamilyName> family_from_string(const std::string& s) {
  for (FamilyName f : {FamilyName::P, FamilyName::PPrime,
                       FamilyName::PDoublePrime, FamilyName::Q,
                       FamilyName::QPrime, FamilyName::QDoublePrime,
                       FamilyName::A, FamilyName::C32, FamilyName::CT})
    if (family_to_string(f) == s) return f;
  return std::nullopt;
}

FamilyGraph gen_family(FamilyName name, int k) {
  FamilyGraph out;
  out.name = name;
  out.k = k;
  switch (name) {
    case FamilyName::CT: {
      if (k < 0) throw FamilyError("gen: height must be at least zero");
      out.g = heap_tree(k);
      out.leaves = heap_leaves(k);
      out.root = 0;
      return out;
    }
    case FamilyName::P:
    case FamilyName::PPrime:
    case FamilyName::PDoublePrime: {
      if (k < 1) throw FamilyError("gen: height must be positive");
      int extra = name == FamilyName::P ? 1
                  : name == FamilyName::PPrime ? 2
                                               : 3;
      Graph tree = heap_tree(k);
      VertexSet lv = heap_leaves(k);
      int base = (1 << (k + 1)) - 1;
      std::vector<Edge> es = tree.edges();
      std::vector<int> apexes;
      for (int a = 0; a < extra; ++a) {
        apexes.push_back(base + a);
        for (int l : lv) es.push_back(norm_edge(base + a, l));
      }
      out.g = Graph::from_edges(base + extra, es);
      out.apexes = make_set(apexes);
      out.leaves = lv;
      out.root = 0;
      return out;
    }
    case FamilyName::Q:
    case FamilyName::QPrime:
    case FamilyName::QDoublePrime: {
      if (k < 1) throw FamilyError("gen: height must be positive");
      Graph q = gen_q(k);
      out.base_edge = norm_edge(0, 1);
      int extra = name == FamilyName::Q ? 0 : name == FamilyName::QPrime ? 1 : 2;
      if (extra == 0) {
        out.g = q;
        return out;
      }
      std::vector<int> low;
      for (int v : q.vertices())
        if (static_cast<int>(q.neighbors(v).size()) == 2) low.push_back(v);
      std::vector<Edge> es = q.edges();
      std::vector<int> apexes;
      for (int a = 0; a < extra; ++a) {
        apexes.push_back(q.n() + a);
        for (int v : low) es.push_back(norm_edge(q.n() + a, v));
      }
      out.g = Graph::from_edges(q.n() + extra, es);
      out.apexes = make_set(apexes);
      return out;
    }
    case FamilyName::A: {
      out.g = Graph::from_edges(
          6, {norm_edge(0, 1), norm_edge(1, 2), norm_edge(2, 3),
              norm_edge(3, 4), norm_edge(4, 5), norm_edge(0, 5),
              norm_edge(0, 2), norm_edge(2, 4), norm_edge(0, 4)});
      return out;
    }
    case FamilyName::C32: {
      out.g = Graph::from_edges(6, {norm_edge(0, 1), norm_edge(0, 2),
                                    norm_edge(1, 2), norm_edge(3, 4),
                                    norm_edge(3, 5), norm_edge(4, 5)});
      return out;
    }
  }
  throw FamilyError("gen: unknown family");
}

std::optional<int> find_apex_forest_vertex(const Graph& h) {
  for (int v : h.vertices())
    if (is_forest_graph(h.minus_vertex(v))) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tree family embedding.

namespace {

constexpr int kMaxHangDepth = 8;

struct Harp {
  const Graph* f = nullptr;
  std::map<int, std::vector<int>> kids;
  MinorModel sets;  // forest vertex -> heap ids
  int maxdepth = 0;
};

void harp_place(Harp& st, int r, long long x, int depth) {
  const auto& ks = st.kids[r];
  int len = std::max<int>(1, static_cast<int>(ks.size()));
  if (depth + len - 1 > kMaxHangDepth)
    throw FamilyError("embed: the forest hangs deeper than the desk cap");
  std::vector<int> spine;
  long long cur = x;
  for (int t = 0; t < len; ++t) {
    spine.push_back(static_cast<int>(cur));
    if (t + 1 < len) cur = 2 * cur + 1;
  }
  st.maxdepth = std::max(st.maxdepth, depth + len - 1);
  st.sets[r] = make_set(spine);
  for (size_t idx = 0; idx < ks.size(); ++idx)
    harp_place(st, ks[idx], 2LL * spine[idx] + 2,
               depth + static_cast<int>(idx) + 1);
}

void harp_root(Harp& st, int r) {
  std::vector<int> stack{r};
  VertexSet seen = make_set({r});
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    st.kids[v];
    for (int w : st.f->neighbors(v)) {
      if (set_contains(seen, w)) continue;
      seen = set_union(seen, make_set({w}));
      st.kids[v].push_back(w);
      stack.push_back(w);
    }
  }
}

int heap_depth(int v) {
  int d = 0;
  while (v > 0) {
    v = (v - 1) / 2;
    ++d;
  }
  return d;
}

}  // namespace

FamilyEmbedding embed_into_P(const Graph& h, int v) {
  if (!h.has_vertex(v)) throw FamilyError("embed: apex vertex is not in the graph");
  Graph f = h.minus_vertex(v);
  if (!is_forest_graph(f))
    throw FamilyError("embed: deleting the chosen vertex leaves a cycle");

  FamilyEmbedding out;
  out.completion = h;
  if (f.n() <= 1) {
    out.k = 1;
    out.host = gen_family(FamilyName::P, 1);
    if (f.n() == 1) out.model[f.vertices()[0]] = make_set({1});
    out.model[v] = out.host.apexes;
    if (!validate_minor_model(out.host.g, h, out.model))
      throw FamilyError("embed: assembled branch sets fail validation");
    return out;
  }

  // Hang every tree of the forest: a vertex occupies a spine of left edges,
  // one per child, and child number idx hangs at the right child of spine
  // vertex idx.
  Harp st;
  st.f = &f;
  auto comps = components(f);
  for (const auto& comp : comps) harp_root(st, comp[0]);
  if (comps.size() == 1) {
    harp_place(st, comps[0][0], 0, 0);
  } else {
    long long sp = 0;
    int d = 0;
    for (const auto& comp : comps) {
      harp_place(st, comp[0], 2 * sp + 2, d + 1);
      sp = 2 * sp + 1;
      ++d;
      if (d > kMaxHangDepth)
        throw FamilyError("embed: the forest hangs deeper than the desk cap");
    }
  }
  int t = std::max(1, st.maxdepth);

  // Stretch to twice the depth: vertex at position x becomes the spine of
  // left edges from x down to the bottom row, children move to right(x) and
  // right(left(x)). Every stretched set then holds exactly one leaf.
  std::map<int, int> pos;
  pos[0] = 0;
  MinorModel lift;
  int deep = 2 * t;
  for (int u = 0; u < (1 << (t + 1)) - 1; ++u) {
    int x = pos.at(u);
    if (u < (1 << t) - 1) {
      pos[2 * u + 1] = 2 * x + 2;
      pos[2 * u + 2] = 2 * (2 * x + 1) + 2;
    }
    std::vector<int> spine;
    int cur = x;
    while (true) {
      spine.push_back(cur);
      if (heap_depth(cur) == deep) break;
      cur = 2 * cur + 1;
    }
    lift[u] = make_set(spine);
  }

  out.k = deep;
  out.host = gen_family(FamilyName::P, deep);
  out.model = compose_minor_models(lift, st.sets);
  out.model[v] = out.host.apexes;
  if (!validate_minor_model(out.host.g, h, out.model))
    throw FamilyError("embed: assembled branch sets fail validation");
  return out;
}

// ---------------------------------------------------------------------------
// Triangle stack embedding.

namespace {

bool order_non_crossing(const Graph& g, const std::vector<int>& order) {
  int n = static_cast<int>(order.size());
  std::map<int, int> pos;
  for (int t = 0; t < n; ++t) pos[order[t]] = t;
  auto inside = [&](int x, int p, int q) {
    int dq = (q - p + n) % n, dx = (x - p + n) % n;
    return 0 < dx && dx < dq;
  };
  auto es = g.edges();
  for (size_t a = 0; a < es.size(); ++a)
    for (size_t b = a + 1; b < es.size(); ++b) {
      int u1 = es[a].first, v1 = es[a].second;
      int u2 = es[b].first, v2 = es[b].second;
      if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) continue;
      if (inside(pos[u2], pos[u1], pos[v1]) !=
          inside(pos[v2], pos[u1], pos[v1]))
        return false;
    }
  return true;
}

struct StackPart {
  int k = 0;
  std::map<int, VertexSet> nodes;  // graph vertex -> stack ids
};

// Inclusion of the height-j stack into height j+1 through copy 1; the node
// that held the second base end picks up the new one.
StackPart stack_lift(const StackPart& part) {
  int sn = (1 << part.k) + 1;
  StackPart out;
  out.k = part.k + 1;
  for (const auto& [u, ids] : part.nodes) {
    std::vector<int> mapped;
    for (int x : ids) mapped.push_back(q_inject(1, x, sn));
    out.nodes[u] = make_set(mapped);
  }
  for (auto& [u, ids] : out.nodes)
    if (set_contains(ids, 2)) {
      ids = set_union(ids, make_set({1}));
      break;
    }
  return out;
}

}  // namespace

FamilyEmbedding embed_into_Q(const Graph& h, int max_n) {
  if (h.n() > max_n)
    throw FamilyError("embed: vertex count exceeds the brute force cap");
  if (find_minor_model(h, Graph::complete_graph(4)).result ==
      MinorResult::Found)
    throw FamilyError("embed: the graph has a K4 minor");
  if (find_minor_model(h, Graph::complete_bipartite(2, 3)).result ==
      MinorResult::Found)
    throw FamilyError("embed: the graph has a K23 minor");

  Graph base = h;
  int next = 0;
  for (int u : base.vertices()) next = std::max(next, u + 1);
  while (base.n() < 3) base = base.with_vertex(next++);
  int n = base.n();

  // Outer order: first vertex fixed, the rest by lexicographically first
  // permutation whose chords do not cross.
  std::vector<int> vs = base.vertices();
  std::vector<int> rest(vs.begin() + 1, vs.end());
  std::vector<int> order;
  do {
    std::vector<int> cand{vs[0]};
    cand.insert(cand.end(), rest.begin(), rest.end());
    if (order_non_crossing(base, cand)) {
      order = cand;
      break;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  if (order.empty())
    throw FamilyError("embed: no outer order avoids crossing edges");

  // Completion: outer cycle plus a fan triangulation of every chordless
  // region, fanned from its lowest-id vertex.
  std::set<Edge> ce(base.edges().begin(), base.edges().end());
  for (int t = 0; t < n; ++t)
    ce.insert(norm_edge(order[t], order[(t + 1) % n]));
  auto has_ce = [&](int u, int w) { return ce.count(norm_edge(u, w)) > 0; };
  std::function<void(std::vector<int>)> tri = [&](std::vector<int> reg) {
    int r = static_cast<int>(reg.size());
    if (r <= 3) return;
    for (int a = 0; a < r; ++a)
      for (int b = a + 2; b < r; ++b) {
        if (a == 0 && b == r - 1) continue;
        if (!has_ce(order[reg[a]], order[reg[b]])) continue;
        std::vector<int> left(reg.begin() + a, reg.begin() + b + 1);
        std::vector<int> right;
        for (int t = b; t != a; t = (t + 1) % r) right.push_back(reg[t]);
        right.push_back(reg[a]);
        tri(left);
        tri(right);
        return;
      }
    int fi = 0;
    for (int t = 1; t < r; ++t)
      if (order[reg[t]] < order[reg[fi]]) fi = t;
    std::rotate(reg.begin(), reg.begin() + fi, reg.end());
    for (int t = 2; t < r - 1; ++t)
      ce.insert(norm_edge(order[reg[0]], order[reg[t]]));
  };
  {
    std::vector<int> all;
    for (int t = 0; t < n; ++t) all.push_back(t);
    tri(all);
  }
  Graph completion(base.vertices(),
                   std::vector<Edge>(ce.begin(), ce.end()));

  // Base edge: lowest outer edge, then recursion on the unique triangle
  // sitting on the current base.
  std::map<int, int> pos;
  for (int t = 0; t < n; ++t) pos[order[t]] = t;
  Edge outer_base = norm_edge(order[0], order[1]);
  for (int t = 0; t < n; ++t) {
    Edge e = norm_edge(order[t], order[(t + 1) % n]);
    if (e < outer_base) outer_base = e;
  }
  int b1 = outer_base.first, b2 = outer_base.second;
  std::vector<int> top;
  bool forward = order[(pos[b1] + 1) % n] != b2;
  for (int t = pos[b1];; t = (t + (forward ? 1 : n - 1)) % n) {
    top.push_back(t);
    if (order[t] == b2) break;
  }

  std::function<StackPart(const std::vector<int>&)> rec =
      [&](const std::vector<int>& reg) -> StackPart {
    int r = static_cast<int>(reg.size());
    int a1 = order[reg[0]], a2 = order[reg[r - 1]];
    StackPart part;
    if (r == 3) {
      part.k = 1;
      part.nodes[a1] = make_set({0});
      part.nodes[a2] = make_set({1});
      part.nodes[order[reg[1]]] = make_set({2});
      return part;
    }
    int ti = -1;
    for (int t = 1; t < r - 1; ++t)
      if (has_ce(a1, order[reg[t]]) && has_ce(a2, order[reg[t]])) {
        if (ti != -1)
          throw FamilyError("embed: base edge sits on two triangles");
        ti = t;
      }
    if (ti == -1)
      throw FamilyError("embed: base edge sits on no triangle");
    std::vector<int> reg1(reg.begin(), reg.begin() + ti + 1);
    std::vector<int> reg2(reg.rbegin(), reg.rbegin() + (r - ti));
    StackPart s1, s2;
    bool bare1 = reg1.size() == 2, bare2 = reg2.size() == 2;
    if (!bare1) s1 = rec(reg1);
    if (!bare2) s2 = rec(reg2);
    part.k = (bare1 ? 0 : s1.k) + (bare2 ? 0 : s2.k) + 1;
    int sn = (1 << (part.k - 1)) + 1;
    while (!bare1 && s1.k < part.k - 1) s1 = stack_lift(s1);
    while (!bare2 && s2.k < part.k - 1) s2 = stack_lift(s2);
    auto add = [&](int u, int id) {
      auto it = part.nodes.find(u);
      if (it == part.nodes.end())
        part.nodes[u] = make_set({id});
      else
        it->second = set_union(it->second, make_set({id}));
    };
    if (bare1)
      add(a1, 0);
    else
      for (const auto& [u, ids] : s1.nodes)
        for (int x : ids) add(u, q_inject(1, x, sn));
    if (bare2)
      add(a2, 1);
    else
      for (const auto& [u, ids] : s2.nodes)
        for (int x : ids) add(u, q_inject(2, x, sn));
    return part;
  };

  StackPart res = rec(top);
  if (res.k != n - 2)
    throw FamilyError("embed: triangle count does not match the stack height");

  FamilyEmbedding out;
  out.k = res.k;
  out.host = gen_family(FamilyName::Q, res.k);
  out.completion = completion;
  out.base_preimage = outer_base;
  out.model = res.nodes;
  if (!set_contains(out.model.at(b1), 0) || !set_contains(out.model.at(b2), 1))
    throw FamilyError("embed: base ends missed their stack corners");
  if (!validate_minor_model(out.host.g, completion, out.model))
    throw FamilyError("embed: assembled branch sets fail validation");
  return out;
}

// ---------------------------------------------------------------------------
// Extraction from cascades.

namespace {

// All simple paths from s to t, neighbors in ascending order; visit returns
// true to stop the walk.
bool for_each_path(const Graph& g, int s, int t, const VertexSet& avoid,
                   const std::function<bool(const std::vector<int>&)>& visit) {
  if (set_contains(avoid, s) || set_contains(avoid, t)) return false;
  std::vector<int> path{s};
  VertexSet used = set_union(avoid, make_set({s}));
  std::function<bool()> step = [&]() -> bool {
    int v = path.back();
    for (int w : g.neighbors(v)) {
      if (set_contains(used, w)) continue;
      path.push_back(w);
      if (w == t) {
        bool stop = visit(path);
        path.pop_back();
        if (stop) return true;
        continue;
      }
      used = set_union(used, make_set({w}));
      bool stop = step();
      used = set_diff(used, make_set({w}));
      path.pop_back();
      if (stop) return true;
    }
    return false;
  };
  if (s == t) return false;
  return step();
}

Graph tripod_union(const std::vector<Tripod>& tripods) {
  std::set<Edge> es;
  std::vector<int> vs;
  for (const Tripod& t : tripods) {
    for (int v : t.vertices()) vs.push_back(v);
    for (const auto& l : t.legs)
      for (const auto& e : path_edges(l)) es.insert(e);
  }
  return Graph(make_set(vs), std::vector<Edge>(es.begin(), es.end()));
}

struct TreeSideInfo {
  std::map<int, int> side;       // major -> witness tripod index feeding the tree
  std::map<int, int> leaf_foot;  // pattern leaf -> tree-side foot vertex
};

TreeSideInfo assign_sides(const Cascade& c,
                          const std::map<int, PropertyWitness>& wit, int i,
                          int j) {
  TreeSideInfo info;
  const PatternTree& pat = c.pattern;
  info.side[pat.major_root] = 0;
  for (int m : pat.majors()) {
    const Tripod& mine = wit.at(m).tripods[info.side.at(m)];
    Trinity tri = pat.trinity(m);
    std::array<int, 2> minors{tri.left, tri.right};
    for (int leg = 1; leg <= 2; ++leg) {
      int t = minors[leg - 1];
      int foot = mine.feet()[leg];
      int lab = foot == c.label(t, i) ? 0 : foot == c.label(t, j) ? 1 : -1;
      if (lab < 0)
        throw FamilyError("extract: a tripod foot misses the child labels");
      auto below = pat.children(t);
      if (below.empty())
        info.leaf_foot[t] = foot;
      else
        info.side[below[0]] = lab;
    }
  }
  return info;
}

}  // namespace

ExtractionResult extract_minor_from_cascade(const Graph& g,
                                            const TreeDecomposition& td,
                                            const Cascade& c, PropertyTag tag,
                                            int i, int j, int variant,
                                            long long cap) {
  if (!c.ordered) throw FamilyError("extract: the cascade is not ordered");
  if (tag != PropertyTag::A && tag != PropertyTag::B)
    throw FamilyError("extract: only tags A and B convert to families");
  if (variant < 0 || variant > 2)
    throw FamilyError("extract: variant must be 0, 1 or 2");
  if (static_cast<int>(c.I.size()) < variant)
    throw FamilyError(
        "extract: the common intersection is too small for the apex count");
  if (tag == PropertyTag::B && variant > 0)
    throw FamilyError(
        "extract: apex variants are not available for the crossing pattern");

  const PatternTree& pat = c.pattern;
  int h = c.height();
  std::map<int, PropertyWitness> wit;
  for (int m : pat.majors()) {
    PropertyCheck pc = check_property(g, td, c, m, tag, i, j, cap);
    if (pc.status != SearchStatus::Found)
      throw FamilyError("extract: the property is not carried at branch vertex " +
                        std::to_string(m));
    wit[m] = *pc.witness;
  }

  ExtractionResult out;

  if (tag == PropertyTag::A) {
    TreeSideInfo info = assign_sides(c, wit, i, j);

    std::vector<Tripod> all;
    for (const auto& [m, w] : wit)
      for (const Tripod& t : w.tripods) all.push_back(t);
    Graph R = tripod_union(all);
    auto comps = components(R);
    if (comps.size() != 2)
      throw FamilyError("extract: the tripods do not form two trees");
    int root_center = wit.at(pat.major_root).tripods[0].center;
    VertexSet tree1 = make_set(comps[0]), tree2 = make_set(comps[1]);
    if (set_contains(tree2, root_center)) std::swap(tree1, tree2);

    // Branch pieces: a major's tree-side tripod, minus the feet handed down
    // to the children. A foot stays up only when handing it down would
    // disconnect the piece, and a bottom piece without its foot can carry
    // no extra apex fans.
    std::map<int, VertexSet> piece;
    std::map<int, bool> foot_given;  // minor vertex -> foot handed down
    std::map<int, int> minor_foot;
    for (int m : pat.majors()) {
      const Tripod& tr = wit.at(m).tripods[info.side.at(m)];
      Trinity tri = pat.trinity(m);
      minor_foot[tri.left] = tr.feet()[1];
      minor_foot[tri.right] = tr.feet()[2];
      VertexSet start = tr.vertices();
      auto up = foot_given.find(tri.parent);
      if (up != foot_given.end() && !up->second)
        start = set_diff(start, make_set({tr.feet()[0]}));
      bool placed = false;
      for (bool gl : {true, false}) {
        for (bool gr : {true, false}) {
          VertexSet p = start;
          if (gl) p = set_diff(p, make_set({tr.feet()[1]}));
          if (gr) p = set_diff(p, make_set({tr.feet()[2]}));
          if (p.empty() || components(g.induced(p)).size() != 1) continue;
          if (gl && !sets_touch(g, p, make_set({tr.feet()[1]}))) continue;
          if (gr && !sets_touch(g, p, make_set({tr.feet()[2]}))) continue;
          if (up != foot_given.end() && !up->second &&
              !sets_touch(g, p, make_set({tr.feet()[0]})))
            continue;
          bool leaf_l = pat.children(tri.left).empty();
          bool leaf_r = pat.children(tri.right).empty();
          if (variant > 0 && ((leaf_l && !gl) || (leaf_r && !gr))) continue;
          piece[m] = p;
          foot_given[tri.left] = gl;
          foot_given[tri.right] = gr;
          placed = true;
          break;
        }
        if (placed) break;
      }
      if (!placed)
        throw FamilyError("extract: no connected branch piece at vertex " +
                          std::to_string(m));
    }

    // Bottom pieces: the foot (when handed down) plus connector paths whose
    // interiors run past the bag, one to the second tree and one per extra
    // apex vertex.
    int x = variant >= 1 ? c.I[0] : -1;
    int y = variant >= 2 ? c.I[1] : -1;
    for (int l : pat.leaves()) {
      int foot = minor_foot.at(l);
      bool owned = foot_given.at(l);
      VertexSet lp = owned ? make_set({foot}) : VertexSet{};
      Graph outer = outer_graph(g, td, c, l);
      const VertexSet& lbag = td.bag(c.node(l));
      std::vector<VertexSet> targets{tree2};
      if (variant >= 1) targets.push_back(make_set({x}));
      if (variant >= 2) targets.push_back(make_set({y}));
      for (const VertexSet& target : targets) {
        if (!lp.empty() && sets_touch(g, lp, target)) continue;
        VertexSet sources = lp.empty() ? make_set({foot}) : lp;
        VertexSet allowed = set_diff(set_diff(outer.vertices(), lbag), lp);
        std::map<int, int> prev;
        std::vector<int> queue;
        int hit = -1;
        for (int s : sources)
          for (int w : outer.neighbors(s))
            if (set_contains(allowed, w) && !prev.count(w)) {
              prev[w] = -1;
              queue.push_back(w);
            }
        for (size_t qi = 0; qi < queue.size() && hit < 0; ++qi) {
          int u = queue[qi];
          for (int w : g.neighbors(u))
            if (set_contains(target, w)) {
              hit = u;
              break;
            }
          if (hit >= 0) break;
          for (int w : outer.neighbors(u))
            if (set_contains(allowed, w) && !prev.count(w)) {
              prev[w] = u;
              queue.push_back(w);
            }
        }
        if (hit < 0)
          throw FamilyError(
              "extract: no connection past the bag from the bottom piece at "
              "vertex " +
              std::to_string(l));
        std::vector<int> interior;
        for (int u = hit; u != -1; u = prev.at(u)) interior.push_back(u);
        lp = set_union(lp, make_set(interior));
      }
      piece[l] = lp;
    }

    FamilyName nm = variant == 0   ? FamilyName::P
                    : variant == 1 ? FamilyName::PPrime
                                   : FamilyName::PDoublePrime;
    out.pattern = gen_family(nm, h);
    out.model = piece;
    out.model[out.pattern.apexes[0]] = tree2;
    if (variant >= 1) out.model[out.pattern.apexes[1]] = make_set({x});
    if (variant >= 2) out.model[out.pattern.apexes[2]] = make_set({y});
    if (!validate_minor_model(g, out.pattern.g, out.model))
      throw FamilyError("extract: assembled branch sets fail validation");
    return out;
  }

  // Tag B: recursion over the branch vertices. Each level returns branch
  // sets over the stack minus its base edge, the two labels of the level's
  // top bag landing in the nodes of the base ends.
  struct Level {
    int k = 0;
    std::map<int, VertexSet> nodes;
  };
  std::function<Level(int)> rec = [&](int m) -> Level {
    const PropertyWitness& w = wit.at(m);
    Trinity tri = pat.trinity(m);
    Graph U = tripod_union(w.tripods);
    int fi = c.label(tri.parent, i), fj = c.label(tri.parent, j);
    bool bottom = pat.children(tri.left).empty();
    if (bottom) {
      Level lv;
      lv.k = 1;
      bool got = for_each_path(U, fi, fj, {},
                               [&](const std::vector<int>& p) {
                                 if (p.size() < 3) return false;
                                 lv.nodes[0] = make_set({p.front()});
                                 lv.nodes[1] = make_set({p.back()});
                                 lv.nodes[2] = make_set(std::vector<int>(
                                     p.begin() + 1, p.end() - 1));
                                 return true;
                               });
      if (!got)
        throw FamilyError(
            "extract: no usable path joins the bottom labels at vertex " +
            std::to_string(m));
      return lv;
    }
    Level sl = rec(pat.children(tri.left)[0]);
    Level sr = rec(pat.children(tri.right)[0]);
    if (sl.k != sr.k)
      throw FamilyError("extract: unbalanced recursion below vertex " +
                        std::to_string(m));
    int k = sl.k + 1;
    int sn = (1 << sl.k) + 1;
    auto swap_map = q_base_swap(sl.k);
    std::vector<int> subverts;
    for (const Level* s : {&sl, &sr})
      for (const auto& [id, set] : s->nodes)
        for (int u : set) subverts.push_back(u);
    VertexSet sv = make_set(subverts);

    for (int cswap : {0, 1}) {
      int c1 = cswap ? tri.right : tri.left;
      int c2 = cswap ? tri.left : tri.right;
      const Level& s1 = cswap ? sr : sl;
      const Level& s2 = cswap ? sl : sr;
      for (int o1 : {0, 1}) {
        for (int o2 : {0, 1}) {
          auto eff = [&](const Level& s, int o, int id) -> const VertexSet& {
            return s.nodes.at(o ? swap_map.at(id) : id);
          };
          int t1 = c.label(c1, o1 ? j : i);
          int t2 = c.label(c2, o2 ? j : i);
          int e3a = c.label(c1, o1 ? i : j);
          int e3b = c.label(c2, o2 ? i : j);
          Level found;
          bool ok = for_each_path(U, fi, t1, {}, [&](const std::vector<int>&
                                                         p1) {
            VertexSet p1s = make_set(p1);
            if (!set_inter(set_diff(p1s, make_set({t1})), sv).empty())
              return false;
            return for_each_path(U, fj, t2, p1s, [&](const std::vector<int>&
                                                         p2) {
              VertexSet p2s = make_set(p2);
              if (!set_inter(set_diff(p2s, make_set({t2})), sv).empty())
                return false;
              return for_each_path(
                  U, e3a, e3b, set_union(p1s, p2s),
                  [&](const std::vector<int>& p3) {
                    VertexSet mid = make_set(
                        std::vector<int>(p3.begin() + 1, p3.end() - 1));
                    if (!set_inter(mid, sv).empty()) return false;
                    Level cand;
                    cand.k = k;
                    cand.nodes[0] = set_union(
                        eff(s1, o1, 0),
                        make_set(std::vector<int>(p1.begin(), p1.end() - 1)));
                    cand.nodes[1] = set_union(
                        eff(s2, o2, 0),
                        make_set(std::vector<int>(p2.begin(), p2.end() - 1)));
                    cand.nodes[2] = set_union(
                        set_union(eff(s1, o1, 1), eff(s2, o2, 1)), mid);
                    for (int id = 2; id < sn; ++id) {
                      cand.nodes[q_inject(1, id, sn)] = eff(s1, o1, id);
                      cand.nodes[q_inject(2, id, sn)] = eff(s2, o2, id);
                    }
                    if (!sets_touch(g, cand.nodes[0], cand.nodes[2]))
                      return false;
                    if (!sets_touch(g, cand.nodes[1], cand.nodes[2]))
                      return false;
                    found = cand;
                    return true;
                  });
            });
          });
          if (ok) return found;
        }
      }
    }
    throw FamilyError("extract: the crossing legs do not split at vertex " +
                      std::to_string(m));
  };

  Level top = rec(pat.major_root);
  if (top.k != h)
    throw FamilyError("extract: recursion height mismatch");
  out.pattern = gen_family(FamilyName::Q, h);
  out.base_edge_removed = true;
  out.model = top.nodes;
  out.node_conditions[0] = c.label(pat.minor_root, i);
  out.node_conditions[1] = c.label(pat.minor_root, j);
  for (const auto& [id, req] : out.node_conditions)
    if (!set_contains(out.model.at(id), req))
      throw FamilyError("extract: a base label missed its node");
  std::vector<Edge> qes;
  for (const auto& e : out.pattern.g.edges())
    if (!(e == *out.pattern.base_edge)) qes.push_back(e);
  Graph qminus(out.pattern.g.vertices(), qes);
  if (!validate_minor_model(g, qminus, out.model))
    throw FamilyError("extract: assembled branch sets fail validation");
  return out;
}

// ---------------------------------------------------------------------------

DichotomyReport dichotomy_check(const Graph& g, int k, long long budget,
                                int pw_cap) {
  if (k < 1) throw FamilyError("dichotomy: height must be positive");
  DichotomyReport r;
  r.pathwidth = exact_pathwidth(g, pw_cap).value;
  MinorSearch sp = find_minor_model(g, gen_family(FamilyName::P, k).g, budget);
  r.p_result = sp.result;
  r.has_p = sp.result == MinorResult::Found;
  r.p_model = sp.model;
  MinorSearch sq = find_minor_model(g, gen_family(FamilyName::Q, k).g, budget);
  r.q_result = sq.result;
  r.has_q = sq.result == MinorResult::Found;
  r.q_model = sq.model;
  return r;
}

}  // namespace tdlab
