#include "kfactor/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kfactor/errors.hpp"

namespace kfactor {

namespace {

void check_n(int n) {
  if (n < 0) throw ArgumentError("negative vertex count");
  if (n > kMaxVertices)
    throw SizeLimitError("n = " + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(kMaxVertices) + " vertices");
}

}  // namespace

Graph::Graph(int n) {
  check_n(n);
  n_ = n;
  rows_.assign(n, VertexSet(n));
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int d = n_;
  for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v = rows_[u].next(u + 1); v >= 0; v = rows_[u].next(v + 1))
      out.emplace_back(u, v);
  return out;
}

long long Graph::edges_within(const VertexSet& s) const {
  long long t = 0;
  for (int v : s) t += rows_[v].intersection_count(s);
  return t / 2;
}

long long Graph::edges_between(const VertexSet& a, const VertexSet& b) const {
  long long t = 0;
  for (int v : a) t += rows_[v].intersection_count(b);
  return t;
}

bool Graph::is_clique(const std::vector<int>& vs) const {
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j] || !adjacent(vs[i], vs[j])) return false;
  return true;
}

Graph Graph::induced(const std::vector<int>& vs) const {
  GraphBuilder b(static_cast<int>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (adjacent(vs[i], vs[j])) b.add_edge(static_cast<int>(i), static_cast<int>(j));
  return std::move(b).build();
}

Graph Graph::complement() const {
  Graph c(n_);
  for (int v = 0; v < n_; ++v) {
    c.rows_[v] = rows_[v].complement();
    c.rows_[v].erase(v);
  }
  c.m_ = static_cast<long long>(n_) * (n_ - 1) / 2 - m_;
  return c;
}

GraphBuilder::GraphBuilder(int n) : g_(n) {}
GraphBuilder::GraphBuilder(const Graph& g) : g_(g) {}

bool GraphBuilder::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= g_.n_ || v >= g_.n_)
    throw ArgumentError("bad edge " + std::to_string(u) + " " + std::to_string(v));
  if (g_.rows_[u].contains(v)) return false;
  g_.rows_[u].insert(v);
  g_.rows_[v].insert(u);
  ++g_.m_;
  return true;
}

void GraphBuilder::remove_edge(int u, int v) {
  if (!g_.rows_[u].contains(v)) return;
  g_.rows_[u].erase(v);
  g_.rows_[v].erase(u);
  --g_.m_;
}

void GraphBuilder::add_clique(const std::vector<int>& vs) {
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j) add_edge(vs[i], vs[j]);
}

Graph GraphBuilder::build() && { return std::move(g_); }

Graph from_edge_list(int n, const std::vector<Edge>& edges) {
  check_n(n);
  GraphBuilder b(n);
  long pos = 0;
  for (auto [u, v] : edges) {
    ++pos;
    if (u < 0 || v >= n || u >= n || v < 0)
      throw InputFormatError("endpoint out of range in pair " + std::to_string(u) +
                                 " " + std::to_string(v),
                             pos);
    if (u >= v)
      throw InputFormatError("pair " + std::to_string(u) + " " + std::to_string(v) +
                                 " does not satisfy u < v",
                             pos);
    if (!b.add_edge(u, v))
      throw InputFormatError("duplicate edge " + std::to_string(u) + " " +
                                 std::to_string(v),
                             pos);
  }
  return std::move(b).build();
}

Graph overlay(const Graph& a, const Graph& b) {
  if (a.n() != b.n())
    throw DimensionError("overlay of graphs on " + std::to_string(a.n()) + " and " +
                         std::to_string(b.n()) + " vertices");
  GraphBuilder out(a);
  for (auto [u, v] : b.edges()) out.add_edge(u, v);
  return std::move(out).build();
}

Graph complete_graph(int n) {
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

Graph cycle_graph(int n) {
  GraphBuilder b(n);
  for (int v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
  return std::move(b).build();
}

Graph path_graph(int n) {
  GraphBuilder b(n);
  for (int v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return std::move(b).build();
}

Graph empty_graph(int n) { return Graph(n); }

namespace {

// Parses a line of exactly two nonnegative base-10 integers separated by one
// space.
bool parse_pair(const std::string& line, long long& a, long long& b) {
  size_t sp = line.find(' ');
  if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size()) return false;
  auto digits = [](const std::string& s, size_t from, size_t to, long long& out) {
    if (from >= to || to - from > 12) return false;
    out = 0;
    for (size_t i = from; i < to; ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
      out = out * 10 + (s[i] - '0');
    }
    return true;
  };
  return digits(line, 0, sp, a) && digits(line, sp + 1, line.size(), b);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string line;
  long lineno = 1;
  if (!std::getline(in, line)) throw InputFormatError("empty input", 1);
  if (in.eof()) throw InputFormatError("missing trailing newline", 1);
  long long n, m;
  if (!parse_pair(line, n, m)) throw InputFormatError("expected header \"n m\"", 1);
  if (n > kMaxVertices)
    throw SizeLimitError("n = " + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(kMaxVertices) + " vertices");
  if (m > n * (n - 1) / 2) throw InputFormatError("edge count exceeds n(n-1)/2", 1);
  GraphBuilder b(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    ++lineno;
    if (!std::getline(in, line))
      throw InputFormatError("expected " + std::to_string(m) + " edge lines", lineno);
    if (in.eof()) throw InputFormatError("missing trailing newline", lineno);
    long long u, v;
    if (!parse_pair(line, u, v)) throw InputFormatError("expected \"u v\"", lineno);
    if (u >= v) throw InputFormatError("edge does not satisfy u < v", lineno);
    if (v >= n) throw InputFormatError("endpoint out of range", lineno);
    if (!b.add_edge(static_cast<int>(u), static_cast<int>(v)))
      throw InputFormatError("duplicate edge", lineno);
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw InputFormatError("trailing content after edge list", lineno + 1);
  return std::move(b).build();
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list_text(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path);
  return parse_edge_list(in);
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  write_edge_list(out, g);
}

void write_sets(std::ostream& out, const NamedSets& sets) {
  for (const auto& [name, vs] : sets) {
    out << name << ':';
    for (int v : vs) out << ' ' << v;
    out << '\n';
  }
}

NamedSets parse_sets(std::istream& in) {
  NamedSets out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos || colon == 0)
      throw InputFormatError("expected \"name: v v ...\"", lineno);
    std::vector<int> vs;
    std::istringstream rest(line.substr(colon + 1));
    std::string tok;
    while (rest >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
        throw InputFormatError("bad vertex id \"" + tok + "\"", lineno);
      vs.push_back(std::stoi(tok));
    }
    out.emplace_back(line.substr(0, colon), std::move(vs));
  }
  return out;
}

NamedSets read_sets_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  return parse_sets(in);
}

void write_sets_file(const std::string& path, const NamedSets& sets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  write_sets(out, sets);
}

}  // namespace kfactor
