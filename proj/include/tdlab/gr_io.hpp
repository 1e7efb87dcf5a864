#pragma once

#include <iosfwd>

#include "tdlab/graph.hpp"

namespace tdlab {

// Parse failure for the text formats; line and column are 1-based.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

// .gr format: optional `c` comment lines, one `p tw <n> <m>` header, then
// m lines `<u> <v>` with 1-based endpoints. Vertex ids are kept as 1..n.
Graph read_gr(std::istream& in);
Graph read_gr_file(const std::string& path);
Graph read_gr_string(const std::string& text);

// Writes vertices renumbered 1..n by sorted id rank.
void write_gr(std::ostream& out, const Graph& g);
std::string write_gr_string(const Graph& g);

}  // namespace tdlab
