#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tdlab/connectivity.hpp"
#include "tdlab/corpus.hpp"
#include "tdlab/tree_order.hpp"

using namespace tdlab;

namespace {

Graph spider(const std::vector<int>& legs) {
  std::vector<Edge> es;
  int next = 1;
  for (int len : legs) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      es.push_back(norm_edge(prev, next));
      prev = next++;
    }
  }
  return Graph::from_edges(next, es);
}

}  // namespace

TEST_CASE("isomorph-free enumeration counts") {
  // classic sequences, frozen
  std::vector<size_t> graph_counts{1, 2, 4, 11, 34, 156, 1044};
  for (int n = 1; n <= 7; ++n)
    CHECK(all_graphs(n).size() == graph_counts[n - 1]);
  std::vector<size_t> tree_counts{1, 1, 1, 2, 3, 6, 11, 23, 47};
  for (int n = 1; n <= 9; ++n)
    CHECK(all_trees(n).size() == tree_counts[n - 1]);
  size_t connected_total = 0;
  for (int n = 1; n <= 7; ++n) connected_total += connected_graphs(n).size();
  CHECK(connected_total == 996);
  for (const auto& t : all_trees(7)) CHECK(is_tree(t));
}

TEST_CASE("canonical code is isomorphism-invariant") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(rng, 6, 0.4);
    // random relabeling
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> es;
    for (auto [u, v] : g.edges()) es.push_back(norm_edge(perm[u], perm[v]));
    Graph h = Graph::from_edges(6, es);
    CHECK(canonical_code(g) == canonical_code(h));
  }
  CHECK(canonical_code(Graph::path_graph(4)) !=
        canonical_code(Graph::star(3)));
}

TEST_CASE("random generators honor their contracts") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    Graph t = random_tree(rng, 2 + trial % 9);
    CHECK(is_tree(t));
    Graph c = random_connected_graph(rng, 5, 0.3);
    CHECK(is_connected(c));
  }
}

TEST_CASE("frozen signatures of named trees") {
  CHECK(sig_code(tree_signature(Graph::path_graph(1))) == "(1)");
  CHECK(sig_code(tree_signature(Graph::path_graph(5))) == "(5)");
  CHECK(sig_code(tree_signature(Graph::star(3))) == "(4(2))");
  CHECK(sig_code(tree_signature(spider({2, 2, 2}))) == "(7(3))");
  CHECK(sig_code(tree_signature(spider({1, 2, 3}))) == "(7(2))");
  CHECK(sig_code(tree_signature(Graph::star(4))) == "(5(2)(2))");
}

TEST_CASE("spine basics") {
  Graph p5 = Graph::path_graph(5);
  CHECK(spine(p5) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(spine(Graph::empty(1)) == std::vector<int>{0});

  Graph sp = spider({2, 2, 2});
  auto s = spine(sp);
  CHECK(s.size() == 5);
  CHECK(s.front() < s.back());
  // both endpoints are leaves
  CHECK(sp.degree(s.front()) == 1);
  CHECK(sp.degree(s.back()) == 1);

  Graph sp123 = spider({1, 2, 3});
  auto s2 = spine(sp123);
  CHECK(s2.size() == 6);  // avoids the shortest leg
}

TEST_CASE("spine bridge multiset is dominated by every maximal path's") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& t : all_trees(n)) {
      auto sp = spine(t);
      std::vector<Graph> spine_branches;
      for (const auto& br : p_bridges(t, sp))
        spine_branches.push_back(t.induced(br.verts));
      std::vector<int> leaves;
      for (int v : t.vertices())
        if (t.degree(v) == 1) leaves.push_back(v);
      for (size_t i = 0; i < leaves.size(); ++i) {
        for (size_t j = i + 1; j < leaves.size(); ++j) {
          auto path = shortest_path(t, leaves[i], leaves[j]);
          std::vector<Graph> branches;
          for (const auto& br : p_bridges(t, path))
            branches.push_back(t.induced(br.verts));
          CHECK(dominated_by(spine_branches, branches));
        }
      }
    }
  }
}

TEST_CASE("tree order matches the definition oracle on all pairs up to 6") {
  std::vector<Graph> trees;
  for (int n = 1; n <= 6; ++n)
    for (const auto& t : all_trees(n)) trees.push_back(t);
  REQUIRE(trees.size() == 14);
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      Cmp lib = compare_trees(a, b);
      Cmp ref = oracle::compare_trees_defn(a, b);
      CHECK(lib == ref);
    }
  }
}

TEST_CASE("tree order is a total preorder: transitivity on triples up to 5") {
  std::vector<Graph> trees;
  for (int n = 1; n <= 5; ++n)
    for (const auto& t : all_trees(n)) trees.push_back(t);
  REQUIRE(trees.size() == 8);
  auto le = [&](const Graph& x, const Graph& y) {
    return compare_trees(x, y) != Cmp::Greater;
  };
  for (const auto& a : trees)
    for (const auto& b : trees) {
      CHECK((le(a, b) || le(b, a)));  // total
      for (const auto& c : trees)
        if (le(a, b) && le(b, c)) CHECK(le(a, c));
    }
  for (const auto& a : trees) CHECK(compare_trees(a, a) == Cmp::Equal);
}

TEST_CASE("equivalence coincides with equal signatures") {
  std::vector<Graph> trees;
  for (int n = 1; n <= 6; ++n)
    for (const auto& t : all_trees(n)) trees.push_back(t);
  for (const auto& a : trees)
    for (const auto& b : trees) {
      bool equiv = compare_trees(a, b) == Cmp::Equal;
      bool same_code = rank_key(a).code == rank_key(b).code;
      CHECK(equiv == same_code);
    }
}

TEST_CASE("multiset domination rules") {
  Graph p2 = Graph::path_graph(2);
  Graph p3 = Graph::path_graph(3);
  CHECK(dominated_by({}, {}));
  CHECK(dominated_by({}, {p2}));
  CHECK(!dominated_by({p2}, {}));
  CHECK(dominated_by({p2}, {p3}));
  CHECK(strictly_dominated_by({p2}, {p3}));
  CHECK(!dominated_by({p3}, {p2}));
  CHECK(dominated_by({p3}, {p3, p2}));
  CHECK(strictly_dominated_by({p3}, {p3, p2}));
  CHECK(!dominated_by({p3, p2}, {p3}));
  CHECK(dominated_by({p3, p2}, {p3, p2}));
  CHECK(!strictly_dominated_by({p3, p2}, {p3, p2}));
  // first difference decides even when the rest is bigger
  CHECK(dominated_by({p2, p3}, {p3}) == dominated_by({p3, p2}, {p3}));
}

TEST_CASE("p_bridges on trees and general graphs") {
  Graph sp = spider({2, 2, 2});
  auto s = spine(sp);
  auto brs = p_bridges(sp, s);
  REQUIRE(brs.size() == 1);
  CHECK(brs[0].verts.size() == 3);
  CHECK(brs[0].attachments == VertexSet{0});
  CHECK(!brs[0].chord);

  // chord bridge on a cycle
  Graph c5 = Graph::cycle_graph(5).with_edge(0, 2);
  auto brs2 = p_bridges(c5, {0, 1, 2});
  bool found_chord = false;
  for (const auto& b : brs2)
    if (b.chord) {
      found_chord = true;
      CHECK(b.verts == VertexSet{0, 2});
    }
  CHECK(found_chord);
}

TEST_CASE("spine decomposition reaches the target vertex") {
  Graph sp = spider({2, 2, 2});
  auto s = make_set(spine(sp));
  // pick the tip of the leg the spine avoids
  int off_tip = -1;
  for (int v : sp.vertices())
    if (sp.degree(v) == 1 && !set_contains(s, v)) off_tip = v;
  REQUIRE(off_tip >= 0);
  auto sd = spine_decomposition(sp, off_tip);
  REQUIRE(sd.trees.size() == 2);
  CHECK(sd.trees[1].n() == 3);
  CHECK(set_contains(make_set(sd.paths[1]), off_tip));

  auto sd2 = spine_decomposition(sp, 0);  // hub lies on the first spine
  CHECK(sd2.trees.size() == 1);
}

TEST_CASE("degree-3 rewiring: frozen example") {
  Graph sp = spider({2, 2, 2});
  // hub = 0; legs 1-2, 3-4, 5-6. The spine passes two legs; the rewiring
  // works inside the leg it avoids.
  auto P = spine(sp);
  REQUIRE(P.size() == 5);
  int t = 0;
  auto pos = std::find(P.begin(), P.end(), t);
  REQUIRE(pos != P.end());
  REQUIRE(pos - P.begin() == 2);
  int off = -1;
  for (int w : sp.neighbors(t))
    if (std::find(P.begin(), P.end(), w) == P.end()) off = w;
  REQUIRE(off == 5);
  // near may coincide with the off-spine neighbor itself
  for (int cut : {P[1], P[3]}) {
    auto res = spine2_transform(sp, t, 6, 5, cut);
    CHECK(res.tree.n() == 7);
    CHECK(res.mid1 == 7);
    CHECK(res.mid2 == 8);
    CHECK(is_tree(res.tree));
    CHECK(tree_canonical_code(res.tree) ==
          tree_canonical_code(spider({1, 2, 3})));
    CHECK(compare_trees(res.tree, sp) == Cmp::Less);
    // the re-hung side now dangles from the vertex next to far
    CHECK(res.tree.has_edge(cut, res.mid2));
    CHECK(!res.tree.has_vertex(off));
  }
}

TEST_CASE("degree-3 rewiring rejects bad inputs") {
  CHECK_THROWS(spine2_transform(Graph::star(3), 0, 1, 3, 2));  // no room
  CHECK_THROWS(spine2_transform(Graph::path_graph(5), 2, 3, 4, 1));
  Graph sp = spider({2, 2, 2});
  CHECK_THROWS(spine2_transform(sp, 0, 2, 2, 3));  // near == far
  CHECK_THROWS(spine2_transform(sp, 0, 0, 1, 3));  // far == pivot
  CHECK_THROWS(spine2_transform(sp, 0, 4, 3, 1));  // pair on the spine
  CHECK_THROWS(spine2_transform(sp, 0, 6, 5, 5));  // cut off the spine
}

TEST_CASE("degree-3 rewiring strictly lowers the order on random trees") {
  std::mt19937 rng(321);
  int applied = 0;
  for (int trial = 0; trial < 140; ++trial) {
    Graph t = random_tree(rng, 8 + trial % 9);
    for (int v : t.vertices()) {
      if (t.degree(v) != 3) continue;
      auto sd = spine_decomposition(t, v);
      const auto& P = sd.paths.back();
      int off = -1;
      std::vector<int> cuts;
      for (int w : t.neighbors(v)) {
        if (std::find(P.begin(), P.end(), w) == P.end())
          off = w;
        else
          cuts.push_back(w);
      }
      REQUIRE(off >= 0);
      REQUIRE(cuts.size() == 2);
      // every valid pair descends the branch behind the off-spine neighbor
      Graph cutg = t.minus_vertex(v);
      for (int u : component_of(cutg, off)) {
        if (u == off) continue;
        int nearv = shortest_path(t, u, v)[1];
        for (int cut : cuts) {
          auto res = spine2_transform(t, v, u, nearv, cut);
          CHECK(res.tree.n() == t.n());
          CHECK(is_tree(res.tree));
          CHECK(compare_trees(res.tree, t) == Cmp::Less);
          ++applied;
        }
      }
    }
  }
  CHECK(applied > 50);
}
