#include "tdlab/decomposition.hpp"

#include <fstream>
#include <sstream>

#include "tdlab/connectivity.hpp"
#include "tdlab/gr_io.hpp"

namespace tdlab {

int TreeDecomposition::max_bag_size() const {
  int m = 0;
  for (const auto& [t, b] : bags) m = std::max(m, static_cast<int>(b.size()));
  return m;
}

const VertexSet& TreeDecomposition::bag(int t) const {
  auto it = bags.find(t);
  if (it == bags.end()) throw std::out_of_range("no bag for node " + std::to_string(t));
  return it->second;
}

std::vector<Violation> validate_decomposition(const Graph& g,
                                              const TreeDecomposition& td) {
  std::vector<Violation> out;
  if (td.tree.n() == 0) {
    if (g.n() > 0) out.push_back({"shape", "decomposition has no nodes"});
    return out;
  }
  if (!is_tree(td.tree)) {
    out.push_back({"shape", "node graph is not a tree"});
    return out;
  }
  for (int t : td.tree.vertices())
    if (!td.bags.count(t)) {
      out.push_back({"shape", "node " + std::to_string(t) + " has no bag"});
      return out;
    }
  for (const auto& [t, b] : td.bags) {
    if (!td.tree.has_vertex(t)) {
      out.push_back({"shape", "bag for unknown node " + std::to_string(t)});
      return out;
    }
    if (!set_subset(b, g.vertices()))
      out.push_back({"shape", "bag of node " + std::to_string(t) +
                                  " contains non-vertices " +
                                  set_to_string(set_diff(b, g.vertices()))});
  }
  if (!out.empty()) return out;

  for (int v : g.vertices()) {
    VertexSet at = nodes_whose_bag_contains(td, v);
    if (at.empty()) {
      out.push_back({"cover-vertex", "vertex " + std::to_string(v) + " in no bag"});
      continue;
    }
    if (!is_connected(td.tree.induced(at)))
      out.push_back({"subtree", "nodes holding vertex " + std::to_string(v) +
                                    " induce a disconnected subtree " +
                                    set_to_string(at)});
  }
  for (auto [u, v] : g.edges()) {
    bool ok = false;
    for (const auto& [t, b] : td.bags)
      if (set_contains(b, u) && set_contains(b, v)) {
        ok = true;
        break;
      }
    if (!ok)
      out.push_back({"cover-edge", "edge " + std::to_string(u) + "-" +
                                       std::to_string(v) + " in no bag"});
  }
  return out;
}

bool is_valid_decomposition(const Graph& g, const TreeDecomposition& td) {
  return validate_decomposition(g, td).empty();
}

int PathDecomposition::max_bag_size() const {
  int m = 0;
  for (const auto& b : bags) m = std::max(m, static_cast<int>(b.size()));
  return m;
}

TreeDecomposition PathDecomposition::as_tree() const {
  TreeDecomposition td;
  td.tree = Graph::path_graph(static_cast<int>(bags.size()));
  for (size_t i = 0; i < bags.size(); ++i) td.bags[static_cast<int>(i)] = bags[i];
  return td;
}

std::vector<Violation> validate_path_decomposition(const Graph& g,
                                                   const PathDecomposition& pd) {
  return validate_decomposition(g, pd.as_tree());
}

std::vector<int> tree_path(const Graph& tree, int a, int b) {
  auto p = shortest_path(tree, a, b);
  if (p.empty()) throw std::invalid_argument("tree_path: nodes not connected");
  return p;
}

std::vector<VertexSet> tree_components_minus(const Graph& tree, int t) {
  return components(tree.minus_vertex(t));
}

VertexSet bags_union(const TreeDecomposition& td, const VertexSet& nodes) {
  VertexSet out;
  for (int t : nodes) out = set_union(out, td.bag(t));
  return out;
}

VertexSet nodes_whose_bag_contains(const TreeDecomposition& td, int v) {
  VertexSet out;
  for (const auto& [t, b] : td.bags)
    if (set_contains(b, v)) out.push_back(t);
  return make_set(std::move(out));
}

PathDecomposition lift_path_decomposition(const TreeDecomposition& td,
                                          const PathDecomposition& pd_of_tree) {
  PathDecomposition out;
  for (const auto& nodes : pd_of_tree.bags) {
    VertexSet z;
    for (int y : nodes) z = set_union(z, td.bag(y));
    out.bags.push_back(std::move(z));
  }
  return out;
}

TreeDecomposition read_td(std::istream& in) {
  std::string line;
  int lineno = 0;
  int nbags = -1;
  std::vector<Edge> tree_edges;
  std::map<int, VertexSet> bags;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(line);
    std::string w0;
    if (!(is >> w0)) continue;
    if (w0 == "c") continue;
    if (w0 == "s") {
      if (nbags >= 0) throw ParseError(lineno, 1, "duplicate s line");
      std::string kind;
      int maxbag, n;
      if (!(is >> kind >> nbags >> maxbag >> n) || kind != "td")
        throw ParseError(lineno, 1, "s line needs 's td <bags> <maxbag> <n>'");
      if (nbags < 0) throw ParseError(lineno, 1, "negative bag count");
      continue;
    }
    if (nbags < 0) throw ParseError(lineno, 1, "content before s line");
    if (w0 == "b") {
      int id;
      if (!(is >> id) || id < 1 || id > nbags)
        throw ParseError(lineno, 1, "bad bag id");
      if (bags.count(id)) throw ParseError(lineno, 1, "duplicate bag " + std::to_string(id));
      VertexSet b;
      int v;
      while (is >> v) {
        if (v < 1) throw ParseError(lineno, 1, "bad bag vertex");
        b.push_back(v);
      }
      bags[id] = make_set(std::move(b));
      continue;
    }
    int a = 0, b = 0;
    try {
      a = std::stoi(w0);
    } catch (const std::exception&) {
      throw ParseError(lineno, 1, "unrecognized line");
    }
    if (!(is >> b)) throw ParseError(lineno, 1, "tree edge needs two node ids");
    if (a < 1 || a > nbags || b < 1 || b > nbags || a == b)
      throw ParseError(lineno, 1, "bad tree edge");
    tree_edges.push_back(norm_edge(a, b));
  }
  if (nbags < 0) throw ParseError(lineno + 1, 1, "missing s line");
  TreeDecomposition td;
  VertexSet nodes;
  for (int i = 1; i <= nbags; ++i) {
    nodes.push_back(i);
    if (!bags.count(i)) bags[i] = {};
  }
  td.tree = Graph(nodes, tree_edges);
  td.bags = std::move(bags);
  return td;
}

TreeDecomposition read_td_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_td(f);
}

TreeDecomposition read_td_string(const std::string& text) {
  std::istringstream is(text);
  return read_td(is);
}

void write_td(std::ostream& out, const TreeDecomposition& td, const Graph& g) {
  std::map<int, int> vrank;
  int i = 1;
  for (int v : g.vertices()) vrank[v] = i++;
  std::map<int, int> trank;
  i = 1;
  for (int t : td.tree.vertices()) trank[t] = i++;
  out << "s td " << td.tree.n() << ' ' << td.max_bag_size() << ' ' << g.n() << '\n';
  for (int t : td.tree.vertices()) {
    out << "b " << trank[t];
    for (int v : td.bag(t)) out << ' ' << vrank.at(v);
    out << '\n';
  }
  std::vector<Edge> es;
  for (auto [a, b] : td.tree.edges()) es.push_back(norm_edge(trank[a], trank[b]));
  std::sort(es.begin(), es.end());
  for (auto [a, b] : es) out << a << ' ' << b << '\n';
}

std::string write_td_string(const TreeDecomposition& td, const Graph& g) {
  std::ostringstream os;
  write_td(os, td, g);
  return os.str();
}

}  // namespace tdlab
