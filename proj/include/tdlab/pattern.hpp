#pragma once

#include <map>

#include "tdlab/graph.hpp"

namespace tdlab {

// CT: the binary tree of height h (unique degree-two root, leaves all at
// distance h). T: the variant used by the embedding machinery, obtained by
// subdividing every internal edge of CT_h once and attaching a pendant
// root below the old root.
enum class PatternKind { CT, T };

struct Trinity {
  int parent = -1;
  int left = -1;
  int right = -1;
};

// Vertex ids are deterministic: the CT part uses heap order (children of v
// are 2v+1 and 2v+2), the pendant root comes next, then the subdivision
// vertices in order of their top endpoint. Left child = smaller id.
struct PatternTree {
  PatternKind kind = PatternKind::CT;
  int h = 0;
  Graph tree;
  int major_root = 0;
  int minor_root = -1;            // T only, -1 for CT
  std::map<int, int> height;
  std::map<int, int> parent;      // toward the walk root; the root maps to -1

  int root() const { return kind == PatternKind::CT ? major_root : minor_root; }
  bool is_major(int v) const;     // degree three, or the major root
  VertexSet majors() const;
  VertexSet minors() const;
  VertexSet leaves() const;       // vertices at height h
  std::vector<int> children(int v) const;
  Trinity trinity(int v) const;   // T only, v major
  bool is_ancestor(int a, int d) const;  // reflexive
};

PatternTree build_pattern(PatternKind kind, int h);

}  // namespace tdlab
