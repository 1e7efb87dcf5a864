#include "tdlab/pattern.hpp"

#include <stdexcept>

namespace tdlab {

bool PatternTree::is_major(int v) const {
  if (kind == PatternKind::CT) return tree.degree(v) >= 2;
  return tree.degree(v) == 3;
}

VertexSet PatternTree::majors() const {
  VertexSet out;
  for (int v : tree.vertices())
    if (is_major(v)) out.push_back(v);
  return out;
}

VertexSet PatternTree::minors() const {
  VertexSet out;
  for (int v : tree.vertices())
    if (!is_major(v)) out.push_back(v);
  return out;
}

VertexSet PatternTree::leaves() const {
  VertexSet out;
  for (int v : tree.vertices())
    if (height.at(v) == h && tree.degree(v) == 1) out.push_back(v);
  return out;
}

std::vector<int> PatternTree::children(int v) const {
  std::vector<int> out;
  for (int u : tree.neighbors(v))
    if (u != parent.at(v)) out.push_back(u);
  return out;
}

Trinity PatternTree::trinity(int v) const {
  if (kind != PatternKind::T || !is_major(v))
    throw std::invalid_argument("trinity: not a branch vertex of a T pattern");
  auto kids = children(v);
  return Trinity{parent.at(v), kids[0], kids[1]};
}

bool PatternTree::is_ancestor(int a, int d) const {
  for (int v = d; v != -1; v = parent.at(v))
    if (v == a) return true;
  return false;
}

namespace {

// depth of heap index v in the complete binary tree
int heap_depth(int v) {
  int d = 0;
  while (v > 0) {
    v = (v - 1) / 2;
    ++d;
  }
  return d;
}

}  // namespace

PatternTree build_pattern(PatternKind kind, int h) {
  if (h < 0 || (kind == PatternKind::T && h < 1))
    throw std::invalid_argument("build_pattern: height out of range");
  int ct_n = (1 << (h + 1)) - 1;
  PatternTree p;
  p.kind = kind;
  p.h = h;
  if (kind == PatternKind::CT) {
    VertexSet verts;
    std::vector<Edge> edges;
    for (int v = 0; v < ct_n; ++v) {
      verts.push_back(v);
      p.height[v] = heap_depth(v);
      p.parent[v] = v == 0 ? -1 : (v - 1) / 2;
      if (heap_depth(v) < h) {
        edges.push_back(norm_edge(v, 2 * v + 1));
        edges.push_back(norm_edge(v, 2 * v + 2));
      }
    }
    p.tree = Graph(verts, edges);
    p.major_root = 0;
    return p;
  }
  // T: subdivide internal CT edges, then hang a pendant root below vertex 0
  VertexSet verts;
  std::vector<Edge> edges;
  int pend = ct_n;
  int next = ct_n + 1;
  for (int v = 0; v < ct_n; ++v) {
    verts.push_back(v);
    int d = heap_depth(v);
    p.height[v] = d <= h - 1 ? d : h;  // branch vertices keep their depth
    if (d >= h) continue;              // leaves have no children
    for (int c : {2 * v + 1, 2 * v + 2}) {
      if (d <= h - 2) {
        int m = next++;
        verts.push_back(m);
        p.height[m] = d + 1;
        p.parent[m] = v;
        p.parent[c] = m;
        edges.push_back(norm_edge(v, m));
        edges.push_back(norm_edge(m, c));
      } else {
        p.parent[c] = v;
        edges.push_back(norm_edge(v, c));
      }
    }
  }
  verts.push_back(pend);
  p.height[pend] = 0;
  p.parent[pend] = -1;
  p.parent[0] = pend;
  edges.push_back(norm_edge(0, pend));
  p.tree = Graph(verts, edges);
  p.major_root = 0;
  p.minor_root = pend;
  return p;
}

}  // namespace tdlab
