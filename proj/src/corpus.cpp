#include "tdlab/corpus.hpp"

#include <set>

#include "tdlab/connectivity.hpp"
#include "tdlab/tree_order.hpp"

namespace tdlab {

namespace {

std::uint64_t pack_under(const Graph& g, const std::vector<int>& order) {
  // order[i] = original vertex placed at position i
  int n = g.n();
  std::vector<int> pos(g.max_vertex_id() + 1, -1);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::uint64_t code = 0;
  int bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit)
      if (g.has_edge(order[i], order[j])) code |= std::uint64_t(1) << bit;
  return code;
}

void min_over_class_perms(const Graph& g, std::vector<std::vector<int>>& classes,
                          size_t ci, std::vector<int>& order,
                          std::uint64_t& best) {
  if (ci == classes.size()) {
    best = std::min(best, pack_under(g, order));
    return;
  }
  std::vector<int>& cls = classes[ci];
  std::sort(cls.begin(), cls.end());
  do {
    size_t base = order.size();
    for (int v : cls) order.push_back(v);
    min_over_class_perms(g, classes, ci + 1, order, best);
    order.resize(base);
  } while (std::next_permutation(cls.begin(), cls.end()));
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  int n = g.n();
  if (n > 8) throw std::invalid_argument("canonical_code: more than 8 vertices");
  if (n == 0) return 0;
  // group vertices by (degree, sorted neighbor degrees) and permute only
  // within groups; the restriction is isomorphism-invariant
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> groups;
  for (int v : g.vertices()) {
    std::vector<int> nd;
    for (int w : g.neighbors(v)) nd.push_back(g.degree(w));
    std::sort(nd.begin(), nd.end());
    groups[{g.degree(v), nd}].push_back(v);
  }
  std::vector<std::vector<int>> classes;
  for (auto& [k, vs] : groups) classes.push_back(vs);
  std::uint64_t best = ~std::uint64_t(0);
  std::vector<int> order;
  min_over_class_perms(g, classes, 0, order, best);
  // fold in n so codes of different orders never collide
  return (std::uint64_t(n) << 56) | best;
}

std::vector<Graph> all_graphs(int n) {
  if (n > 8) throw std::invalid_argument("all_graphs: more than 8 vertices");
  std::vector<Graph> cur{Graph::empty(0)};
  for (int k = 1; k <= n; ++k) {
    std::map<std::uint64_t, Graph> next;
    for (const Graph& g : cur) {
      for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        std::vector<Edge> es = g.edges();
        for (int i = 0; i < k - 1; ++i)
          if (mask & (1u << i)) es.push_back({i, k - 1});
        Graph h = Graph::from_edges(k, es);
        next.emplace(canonical_code(h), h);
      }
    }
    cur.clear();
    for (auto& [c, h] : next) cur.push_back(std::move(h));
  }
  return cur;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (auto& g : all_graphs(n))
    if (is_connected(g) && g.n() > 0) out.push_back(std::move(g));
  return out;
}

std::vector<Graph> all_trees(int n) {
  if (n == 0) return {};
  std::vector<Graph> cur{Graph::empty(1)};
  for (int k = 2; k <= n; ++k) {
    std::map<std::string, Graph> next;
    for (const Graph& g : cur) {
      for (int attach = 0; attach < k - 1; ++attach) {
        std::vector<Edge> es = g.edges();
        es.push_back({attach, k - 1});
        Graph h = Graph::from_edges(k, es);
        next.emplace(tree_canonical_code(h), h);
      }
    }
    cur.clear();
    for (auto& [c, h] : next) cur.push_back(std::move(h));
  }
  return cur;
}

Graph random_graph(std::mt19937& rng, int n, double edge_prob) {
  std::bernoulli_distribution coin(edge_prob);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.push_back({i, j});
  return Graph::from_edges(n, es);
}

Graph random_tree(std::mt19937& rng, int n) {
  if (n <= 0) return Graph::empty(0);
  if (n == 1) return Graph::empty(1);
  // Pruefer sequence decode
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(n - 2);
  for (int& s : seq) s = pick(rng);
  std::vector<int> deg(n, 1);
  for (int s : seq) ++deg[s];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  std::vector<Edge> es;
  for (int s : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    es.push_back(norm_edge(leaf, s));
    if (--deg[s] == 1) leaves.insert(s);
  }
  int a = *leaves.begin();
  int b = *std::prev(leaves.end());
  es.push_back(norm_edge(a, b));
  return Graph::from_edges(n, es);
}

Graph random_connected_graph(std::mt19937& rng, int n, double extra_edge_prob) {
  Graph t = random_tree(rng, n);
  std::bernoulli_distribution coin(extra_edge_prob);
  std::vector<Edge> es = t.edges();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!t.has_edge(i, j) && coin(rng)) es.push_back({i, j});
  return Graph::from_edges(n, es);
}

}  // namespace tdlab
