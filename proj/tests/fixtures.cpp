#include "fixtures.hpp"

#include <algorithm>

#include "tdlab/pattern.hpp"

namespace tdlab::fixtures {

namespace {

TreeDecomposition td_from(const std::vector<Edge>& tree_edges,
                          const std::map<int, VertexSet>& bags) {
  TreeDecomposition td;
  VertexSet nodes;
  for (const auto& [t, b] : bags) nodes.push_back(t);
  td.tree = Graph(nodes, tree_edges);
  td.bags = bags;
  return td;
}

}  // namespace

GraphWithTD c12_three_arms() {
  GraphWithTD f;
  f.g = Graph::cycle_graph(12);
  std::vector<Edge> te;
  for (int arm = 0; arm < 3; ++arm) {
    int base = 1 + 6 * arm;
    te.push_back({0, base});
    for (int i = 0; i + 1 < 6; ++i) te.push_back({base + i, base + i + 1});
  }
  std::map<int, VertexSet> bags = {
      {0, {1, 5, 9}},
      // first arm, towards the 4..6 arc
      {1, {5, 9}},
      {2, {5, 8, 9}},
      {3, {5, 8}},
      {4, {5, 6, 8}},
      {5, {6, 8}},
      {6, {6, 7, 8}},
      // second arm, towards the 8..10 arc
      {7, {1, 9}},
      {8, {1, 9, 10}},
      {9, {1, 10}},
      {10, {0, 1, 10}},
      {11, {0, 10}},
      {12, {0, 10, 11}},
      // third arm, towards the 0..2 arc
      {13, {1, 5}},
      {14, {1, 2, 5}},
      {15, {2, 5}},
      {16, {2, 4, 5}},
      {17, {2, 4}},
      {18, {2, 3, 4}},
  };
  f.td = td_from(te, bags);
  return f;
}

GraphWithTD c6_unlinked() {
  GraphWithTD f;
  // cycle on 1..6
  VertexSet vs{1, 2, 3, 4, 5, 6};
  std::vector<Edge> es;
  for (int i = 1; i <= 6; ++i) es.push_back(norm_edge(i, i % 6 + 1));
  f.g = Graph(vs, es);
  f.td = td_from({{0, 1}, {1, 2}, {2, 3}},
                 {{0, {2, 3, 4}}, {1, {1, 2, 4}}, {2, {1, 4, 5}}, {3, {1, 5, 6}}});
  return f;
}

GraphWithTD c8_band() {
  GraphWithTD f;
  f.g = Graph::cycle_graph(8);
  f.td = td_from({{0, 1}, {1, 2}, {2, 3}, {3, 4}},
                 {{0, {0, 1, 4, 7}},
                  {1, {0, 1, 2, 4, 7}},
                  {2, {0, 2, 3, 4, 6, 7}},
                  {3, {0, 3, 4, 5, 6}},
                  {4, {0, 3, 4, 5}}});
  return f;
}

GraphWithTD c6_band() {
  GraphWithTD f;
  f.g = Graph::cycle_graph(6);
  f.td = td_from({{0, 1}, {1, 2}},
                 {{0, {0, 1, 3, 5}}, {1, {0, 1, 2, 3, 4, 5}}, {2, {0, 2, 3, 4}}});
  return f;
}

GraphWithTD twin_tracks(int h, int stretch) {
  PatternTree pat = build_pattern(PatternKind::T, h);
  GraphWithTD f;
  // two copies of the pattern tree: vertex v becomes 2v (track a) and
  // 2v + 1 (track b); stretched edge interiors get fresh ids above those.
  // Each edge segment gets its own decomposition node holding both tracks,
  // so the pattern-vertex bags stay at size two.
  VertexSet gv;
  for (int v : pat.tree.vertices()) {
    gv.push_back(2 * v);
    gv.push_back(2 * v + 1);
  }
  int next = 2 * pat.tree.max_vertex_id() + 2;
  std::vector<Edge> ge;
  std::vector<Edge> te;
  std::map<int, VertexSet> bags;
  for (int v : pat.tree.vertices()) bags[v] = {2 * v, 2 * v + 1};
  int tnext = pat.tree.max_vertex_id() + 1;
  for (auto [u, v] : pat.tree.edges()) {
    std::vector<int> a{2 * u}, b{2 * u + 1};
    for (int k = 1; k < stretch; ++k) {
      a.push_back(next);
      b.push_back(next + 1);
      gv.push_back(next);
      gv.push_back(next + 1);
      next += 2;
    }
    a.push_back(2 * v);
    b.push_back(2 * v + 1);
    int prev_node = u;
    for (size_t k = 0; k + 1 < a.size(); ++k) {
      ge.push_back(norm_edge(a[k], a[k + 1]));
      ge.push_back(norm_edge(b[k], b[k + 1]));
      int node = tnext++;
      bags[node] = make_set({a[k], a[k + 1], b[k], b[k + 1]});
      te.push_back(norm_edge(prev_node, node));
      prev_node = node;
    }
    te.push_back(norm_edge(prev_node, v));
  }
  std::sort(gv.begin(), gv.end());
  f.g = Graph(gv, ge);
  f.td = td_from(te, bags);
  return f;
}

GraphWithTD shared_bridge(int hub_len) {
  GraphWithTD f;
  // stations c1, c2 with private feet p/l/r and a shared hub path between
  // the cross legs: c1's route to r1 and c2's route to l2 both use the hub
  int p1 = 0, p2 = 1, c1 = 2, c2 = 3;
  int l1 = 4 + hub_len, l2 = 5 + hub_len;
  int r1 = 6 + hub_len, r2 = 7 + hub_len;
  VertexSet hub;
  for (int k = 0; k < hub_len; ++k) hub.push_back(4 + k);
  VertexSet gv{p1, p2, c1, c2, l1, l2, r1, r2};
  gv = set_union(gv, hub);
  std::vector<Edge> ge{{p1, c1}, {p2, c2}, {c1, l1}, {c2, r2},
                       norm_edge(c1, hub.front()), norm_edge(c2, hub.front()),
                       norm_edge(hub.back(), r1), norm_edge(hub.back(), l2)};
  for (int k = 0; k + 1 < hub_len; ++k) ge.push_back({hub[k], hub[k + 1]});
  f.g = Graph(gv, ge);
  std::map<int, VertexSet> bags = {
      {0, {p1, p2}},
      {1, {p1, p2, c1, c2}},
      {2, set_union(make_set({c1, c2}), hub)},
      {3, set_union(make_set({c1, l1, l2}), hub)},
      {4, {l1, l2}},
      {5, set_union(make_set({c2, r1, r2}), hub)},
      {6, {r1, r2}},
  };
  f.td = td_from({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}}, bags);
  return f;
}

GraphWithTD shared_bridge_apex() {
  GraphWithTD f = shared_bridge(1);
  int apex = f.g.max_vertex_id() + 1;
  f.g = f.g.with_vertex(apex);
  for (auto& [t, bag] : f.td.bags) bag = set_union(bag, make_set({apex}));
  return f;
}

}  // namespace tdlab::fixtures
