#pragma once

#include "tdlab/graph.hpp"

namespace tdlab {

// Connected components as sorted vertex sets, ordered by smallest member.
std::vector<VertexSet> components(const Graph& g);
bool is_connected(const Graph& g);

// Component of g containing v (v must be a vertex of g).
VertexSet component_of(const Graph& g, int v);

// BFS distances from src; unreachable vertices are absent.
std::map<int, int> bfs_distances(const Graph& g, int src);

// Shortest path src..dst by BFS with lowest-id tie break; empty if none.
std::vector<int> shortest_path(const Graph& g, int src, int dst);

std::vector<int> cut_vertices(const Graph& g);
bool is_two_connected(const Graph& g);
bool is_tree(const Graph& g);

// Ear decomposition of a 2-connected graph: ears[0] is a cycle, each later
// ear is a path whose endpoints (only) lie in earlier ears. Empty when the
// graph is not 2-connected or has < 3 vertices.
std::vector<std::vector<int>> ear_decomposition(const Graph& g);
bool validate_ear_decomposition(const Graph& g,
                                const std::vector<std::vector<int>>& ears);

}  // namespace tdlab
