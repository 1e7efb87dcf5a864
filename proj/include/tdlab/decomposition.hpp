#pragma once

#include <iosfwd>

#include "tdlab/graph.hpp"

namespace tdlab {

// Tree of nodes plus one bag of graph vertices per node. Node ids are the
// tree's vertex ids; every tree node must carry a bag.
struct TreeDecomposition {
  Graph tree;
  std::map<int, VertexSet> bags;

  int max_bag_size() const;
  int width() const { return max_bag_size() - 1; }
  const VertexSet& bag(int t) const;
  VertexSet node_ids() const { return tree.vertices(); }
};

struct Violation {
  std::string rule;
  std::string detail;
};

// Well-formedness, vertex/edge coverage, and per-vertex subtree
// connectivity. Empty result means the decomposition is valid.
std::vector<Violation> validate_decomposition(const Graph& g,
                                              const TreeDecomposition& td);
bool is_valid_decomposition(const Graph& g, const TreeDecomposition& td);

struct PathDecomposition {
  std::vector<VertexSet> bags;
  int max_bag_size() const;
  int width() const { return max_bag_size() - 1; }
  TreeDecomposition as_tree() const;  // nodes 0..k-1 along the path
};

std::vector<Violation> validate_path_decomposition(const Graph& g,
                                                   const PathDecomposition& pd);

// Tree helpers used throughout; `tree` must be a tree.
std::vector<int> tree_path(const Graph& tree, int a, int b);
std::vector<VertexSet> tree_components_minus(const Graph& tree, int t);
VertexSet bags_union(const TreeDecomposition& td, const VertexSet& nodes);
VertexSet nodes_whose_bag_contains(const TreeDecomposition& td, int v);

// Path decomposition of the whole graph obtained from a tree decomposition
// of g and a path decomposition of its tree: bag i becomes the union of the
// tree bags listed in pd_of_tree's bag i. Width is at most
// (td.width()+1)*(pd_of_tree.width()+1) - 1.
PathDecomposition lift_path_decomposition(const TreeDecomposition& td,
                                          const PathDecomposition& pd_of_tree);

// .td text format: `c` comments, header `s td <bags> <maxbagsize> <n>`,
// bag lines `b <id> <vertices...>`, then tree edges. Bag ids are 1-based.
TreeDecomposition read_td(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);
TreeDecomposition read_td_string(const std::string& text);
void write_td(std::ostream& out, const TreeDecomposition& td, const Graph& g);
std::string write_td_string(const TreeDecomposition& td, const Graph& g);

}  // namespace tdlab
