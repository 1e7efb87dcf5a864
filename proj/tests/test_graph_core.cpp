#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tdlab/connectivity.hpp"
#include "tdlab/exact_width.hpp"
#include "tdlab/flow.hpp"
#include "tdlab/gr_io.hpp"
#include "tdlab/minor.hpp"

using namespace tdlab;

namespace {

Graph random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.push_back({i, j});
  return Graph::from_edges(n, es);
}

}  // namespace

TEST_CASE("vertex set helpers") {
  VertexSet a = make_set({3, 1, 2, 3, 1});
  CHECK(a == VertexSet{1, 2, 3});
  CHECK(set_union({1, 3}, {2, 3}) == VertexSet{1, 2, 3});
  CHECK(set_inter({1, 3, 5}, {3, 4, 5}) == VertexSet{3, 5});
  CHECK(set_diff({1, 2, 3}, {2}) == VertexSet{1, 3});
  CHECK(set_subset({1, 3}, {1, 2, 3}));
  CHECK(!set_subset({1, 4}, {1, 2, 3}));
  CHECK(set_contains({1, 2, 3}, 2));
  CHECK(!set_contains({1, 2, 3}, 4));
}

TEST_CASE("graph construction and lookups") {
  Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 1}});
  CHECK(g.n() == 4);
  CHECK(g.m() == 3);  // parallel edge collapsed
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
  CHECK(g.degree(0) == 1);
  CHECK_THROWS(Graph::from_edges(2, {{0, 0}}));
  CHECK_THROWS(Graph::from_edges(2, {{0, 5}}));

  Graph h = g.induced({1, 2, 3});
  CHECK(h.n() == 3);
  CHECK(h.m() == 2);
  CHECK(h.has_vertex(3));
  CHECK(!h.has_vertex(0));

  Graph c = Graph::cycle_graph(5).compacted();
  CHECK(c.n() == 5);
  CHECK(c.m() == 5);

  CHECK(Graph::complete_graph(4).m() == 6);
  CHECK(Graph::complete_bipartite(2, 3).m() == 6);
  CHECK(Graph::star(3).degree(0) == 3);
  CHECK(Graph::path_graph(1).m() == 0);
}

TEST_CASE("paths in graphs") {
  Graph g = Graph::cycle_graph(5);
  PathInGraph p{{0, 1, 2, 3}};
  CHECK(is_valid_path(g, p));
  CHECK(p.length() == 3);
  CHECK(!is_valid_path(g, PathInGraph{{0, 2}}));
  CHECK(!is_valid_path(g, PathInGraph{{0, 1, 0}}));
  CHECK(is_valid_path(g, PathInGraph{{4}}));
  CHECK(path_edges(PathInGraph{{2, 1, 0}}) ==
        std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("components and cut vertices match brute force") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(rng, 2 + trial % 7, 0.35);
    auto comps = components(g);
    size_t total = 0;
    for (auto& c : comps) total += c.size();
    CHECK(total == static_cast<size_t>(g.n()));
    CHECK(cut_vertices(g) == oracle::cut_vertices_brute(g));
  }
  CHECK(is_connected(Graph::empty(0)));
  CHECK(is_connected(Graph::empty(1)));
  CHECK(!is_connected(Graph::empty(2)));
  CHECK(is_tree(Graph::path_graph(4)));
  CHECK(!is_tree(Graph::cycle_graph(4)));
  CHECK(is_two_connected(Graph::cycle_graph(3)));
  CHECK(!is_two_connected(Graph::path_graph(3)));
}

TEST_CASE("ear decompositions of 2-connected graphs validate") {
  std::vector<Graph> gs{Graph::cycle_graph(5), Graph::complete_graph(4),
                        Graph::complete_bipartite(2, 3),
                        Graph::complete_graph(5)};
  std::mt19937 rng(7);
  while (gs.size() < 24) {
    Graph g = random_graph(rng, 6, 0.5);
    if (is_two_connected(g)) gs.push_back(g);
  }
  for (const auto& g : gs) {
    auto ears = ear_decomposition(g);
    CHECK(validate_ear_decomposition(g, ears));
  }
  CHECK(ear_decomposition(Graph::path_graph(4)).empty());
}

TEST_CASE("disjoint path systems match the separator dual") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    Graph g = random_graph(rng, 3 + trial % 6, 0.4);
    std::uniform_int_distribution<int> pick(0, g.n() - 1);
    VertexSet S = make_set({pick(rng), pick(rng)});
    VertexSet T = make_set({pick(rng), pick(rng)});
    Linkage l = disjoint_paths(g, S, T);
    CHECK(validate_linkage(g, S, T, l));
    CHECK(l.size() == oracle::min_separator_brute(g, S, T));
    CHECK(is_separator(g, S, T, l.separator));
  }
}

TEST_CASE("disjoint paths: zero length and caps") {
  Graph g = Graph::path_graph(5);
  Linkage l = disjoint_paths(g, {2}, {2});
  REQUIRE(l.size() == 1);
  CHECK(l.paths[0].verts == std::vector<int>{2});

  Graph k4 = Graph::complete_graph(4);
  Linkage capped = disjoint_paths_capped(k4, {0, 1, 2}, {1, 2, 3}, 2);
  CHECK(capped.size() == 2);
  CHECK(capped.separator.empty());  // truncated runs carry no certificate
}

TEST_CASE("minor search matches exhaustive assignment oracle") {
  std::mt19937 rng(4242);
  std::vector<Graph> patterns{Graph::complete_graph(3), Graph::complete_graph(4),
                              Graph::cycle_graph(4), Graph::star(3),
                              Graph::complete_bipartite(2, 3)};
  for (int trial = 0; trial < 120; ++trial) {
    Graph host = random_graph(rng, 4 + trial % 4, 0.45);
    const Graph& pat = patterns[trial % patterns.size()];
    MinorSearch ms = find_minor_model(host, pat);
    bool expect = oracle::has_minor_brute(host, pat);
    if (expect) {
      REQUIRE(ms.result == MinorResult::Found);
      CHECK(validate_minor_model(host, pat, ms.model));
    } else {
      CHECK(ms.result == MinorResult::NoMinor);
    }
  }
}

TEST_CASE("minor search reductions keep models liftable") {
  // long subdivided K4: every edge replaced by a 3-edge path
  Graph k4 = Graph::complete_graph(4);
  std::vector<Edge> es;
  int next = 4;
  for (auto [u, v] : k4.edges()) {
    es.push_back({u, next});
    es.push_back({next, next + 1});
    es.push_back(norm_edge(next + 1, v));
    next += 2;
  }
  Graph host = Graph::from_edges(next, es);
  MinorSearch ms = find_minor_model(host, k4);
  REQUIRE(ms.result == MinorResult::Found);
  CHECK(validate_minor_model(host, k4, ms.model));

  // hanging trees must not confuse the search
  Graph host2 = host;
  host2 = host2.with_vertex(100).with_edge(0, 100);
  host2 = host2.with_vertex(101).with_edge(100, 101);
  MinorSearch ms2 = find_minor_model(host2, k4);
  REQUIRE(ms2.result == MinorResult::Found);
  CHECK(validate_minor_model(host2, k4, ms2.model));
}

TEST_CASE("minor search budget reports inconclusive") {
  Graph host = Graph::complete_bipartite(3, 3);
  MinorSearch ms = find_minor_model(host, Graph::complete_graph(4), 1);
  CHECK(ms.result == MinorResult::Inconclusive);
}

TEST_CASE("no K4 or K23 minor in outer cycles with one chord") {
  Graph g = Graph::cycle_graph(6).with_edge(0, 3);
  CHECK(find_minor_model(g, Graph::complete_graph(4)).result ==
        MinorResult::NoMinor);
  CHECK(find_minor_model(g, Graph::complete_bipartite(2, 3)).result ==
        MinorResult::NoMinor);
}

TEST_CASE("model composition") {
  // P3 minor in C6 via arcs, then K2 minor of P3
  Graph c6 = Graph::cycle_graph(6);
  Graph p3 = Graph::path_graph(3);
  MinorModel outer{{0, {0, 1}}, {1, {2}}, {2, {3, 4}}};
  REQUIRE(validate_minor_model(c6, p3, outer));
  MinorModel inner{{0, {0, 1}}, {1, {2}}};
  Graph k2 = Graph::path_graph(2);
  REQUIRE(validate_minor_model(p3, k2, inner));
  MinorModel lifted = compose_minor_models(outer, inner);
  CHECK(validate_minor_model(c6, k2, lifted));
  CHECK(lifted.at(0) == VertexSet{0, 1, 2});
  CHECK(lifted.at(1) == VertexSet{3, 4});
}

TEST_CASE("gr round trip and parse errors") {
  Graph g = Graph::cycle_graph(5).with_edge(0, 2);
  std::string text = write_gr_string(g);
  Graph back = read_gr_string(text);
  CHECK(back.n() == g.n());
  CHECK(back.m() == g.m());
  CHECK(write_gr_string(back) == text);

  CHECK(read_gr_string("c hi\np tw 3 1\n1 2\n").m() == 1);
  CHECK_THROWS_AS(read_gr_string("1 2\n"), ParseError);
  CHECK_THROWS_AS(read_gr_string("p tw 2 1\n1 3\n"), ParseError);
  CHECK_THROWS_AS(read_gr_string("p tw 2 2\n1 2\n"), ParseError);
  CHECK_THROWS_AS(read_gr_string("p tw 2 1\n1 1\n"), ParseError);
  try {
    read_gr_string("c x\np tw 3 1\n2 nope\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 3);
  }
}

TEST_CASE("exact treewidth on known families") {
  CHECK(exact_treewidth(Graph::empty(0)).value == -1);
  CHECK(exact_treewidth(Graph::empty(3)).value == 0);
  CHECK(exact_treewidth(Graph::path_graph(6)).value == 1);
  CHECK(exact_treewidth(Graph::cycle_graph(7)).value == 2);
  CHECK(exact_treewidth(Graph::complete_graph(5)).value == 4);
  CHECK(exact_treewidth(Graph::complete_bipartite(3, 4)).value == 3);
}

TEST_CASE("exact pathwidth on known families") {
  CHECK(exact_pathwidth(Graph::empty(2)).value == 0);
  CHECK(exact_pathwidth(Graph::path_graph(6)).value == 1);
  CHECK(exact_pathwidth(Graph::cycle_graph(6)).value == 2);
  CHECK(exact_pathwidth(Graph::complete_graph(5)).value == 4);
  // three-level binary tree is a caterpillar
  Graph t = Graph::from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  CHECK(exact_pathwidth(t).value == 1);
  // spider with three legs of length two: smallest tree of pathwidth 2
  Graph spider = Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  CHECK(exact_pathwidth(spider).value == 2);
}

TEST_CASE("exact widths match brute oracles with valid witnesses") {
  std::mt19937 rng(1717);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(rng, 3 + trial % 5, 0.45);
    auto tw = exact_treewidth(g);
    CHECK(tw.value == oracle::treewidth_brute(g));
    CHECK(is_valid_decomposition(g, tw.witness));
    CHECK(tw.witness.width() == tw.value);
    auto pw = exact_pathwidth(g);
    CHECK(pw.value == oracle::pathwidth_brute(g));
    CHECK(validate_path_decomposition(g, pw.witness).empty());
    CHECK(pw.witness.width() == pw.value);
    CHECK(tw.value <= pw.value);
  }
}
