#include "tdlab/gr_io.hpp"

#include <fstream>
#include <sstream>

namespace tdlab {

namespace {

// Splits a line into tokens, remembering the 1-based column of each.
struct Tokens {
  std::vector<std::string> words;
  std::vector<int> cols;
};

Tokens tokenize(const std::string& line) {
  Tokens t;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    t.words.push_back(line.substr(i, j - i));
    t.cols.push_back(static_cast<int>(i) + 1);
    i = j;
  }
  return t;
}

int parse_int(const std::string& w, int line, int col, const char* what) {
  size_t pos = 0;
  long val = 0;
  try {
    val = std::stol(w, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, col, std::string("expected ") + what + ", got '" + w + "'");
  }
  if (pos != w.size())
    throw ParseError(line, col, std::string("expected ") + what + ", got '" + w + "'");
  if (val < 0 || val > 1000000)
    throw ParseError(line, col, std::string(what) + " out of range: " + w);
  return static_cast<int>(val);
}

}  // namespace

Graph read_gr(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<Edge> edges;
  int seen_edges = 0;
  while (std::getline(in, line)) {
    ++lineno;
    Tokens t = tokenize(line);
    if (t.words.empty()) continue;
    if (t.words[0] == "c") continue;
    if (t.words[0] == "p") {
      if (n >= 0) throw ParseError(lineno, t.cols[0], "duplicate p line");
      if (t.words.size() != 4)
        throw ParseError(lineno, t.cols[0], "p line needs 'p tw <n> <m>'");
      if (t.words[1] != "tw")
        throw ParseError(lineno, t.cols[1], "unsupported descriptor '" + t.words[1] + "'");
      n = parse_int(t.words[2], lineno, t.cols[2], "vertex count");
      m = parse_int(t.words[3], lineno, t.cols[3], "edge count");
      continue;
    }
    if (n < 0) throw ParseError(lineno, t.cols[0], "edge before p line");
    if (t.words.size() != 2)
      throw ParseError(lineno, t.cols[0], "edge line needs two endpoints");
    int u = parse_int(t.words[0], lineno, t.cols[0], "endpoint");
    int v = parse_int(t.words[1], lineno, t.cols[1], "endpoint");
    if (u < 1 || u > n) throw ParseError(lineno, t.cols[0], "endpoint out of range");
    if (v < 1 || v > n) throw ParseError(lineno, t.cols[1], "endpoint out of range");
    if (u == v) throw ParseError(lineno, t.cols[0], "loop edge");
    edges.push_back(norm_edge(u, v));
    ++seen_edges;
  }
  if (n < 0) throw ParseError(lineno + 1, 1, "missing p line");
  if (seen_edges != m)
    throw ParseError(lineno + 1, 1,
                     "p line promised " + std::to_string(m) + " edges, found " +
                         std::to_string(seen_edges));
  VertexSet vs(n);
  for (int i = 0; i < n; ++i) vs[i] = i + 1;
  return Graph(std::move(vs), std::move(edges));
}

Graph read_gr_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_gr(f);
}

Graph read_gr_string(const std::string& text) {
  std::istringstream is(text);
  return read_gr(is);
}

void write_gr(std::ostream& out, const Graph& g) {
  std::map<int, int> rank;
  int i = 1;
  for (int v : g.vertices()) rank[v] = i++;
  out << "p tw " << g.n() << ' ' << g.m() << '\n';
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) es.push_back(norm_edge(rank[u], rank[v]));
  std::sort(es.begin(), es.end());
  for (auto [u, v] : es) out << u << ' ' << v << '\n';
}

std::string write_gr_string(const Graph& g) {
  std::ostringstream os;
  write_gr(os, g);
  return os.str();
}

}  // namespace tdlab
