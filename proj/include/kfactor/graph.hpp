#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kfactor/vertex_set.hpp"

namespace kfactor {

inline constexpr int kMaxVertices = 20000;

using Edge = std::pair<int, int>;
using Clique = std::vector<int>;  // sorted vertex ids

// Simple undirected graph on [0, n) with bit-row adjacency. Immutable once
// built; GraphBuilder is the only way to add edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  long long m() const { return m_; }
  bool adjacent(int u, int v) const { return rows_[u].contains(v); }
  const VertexSet& neighbours(int v) const { return rows_[v]; }
  int degree(int v) const { return rows_[v].count(); }
  int min_degree() const;
  int max_degree() const;
  std::vector<Edge> edges() const;  // lexicographic, u < v

  // Edges inside s.
  long long edges_within(const VertexSet& s) const;
  // Edges with one end in a and the other in b (a, b disjoint).
  long long edges_between(const VertexSet& a, const VertexSet& b) const;
  bool is_clique(const std::vector<int>& vs) const;
  bool is_independent(const VertexSet& s) const { return edges_within(s) == 0; }
  // Induced subgraph; vertex i of the result is vs[i].
  Graph induced(const std::vector<int>& vs) const;
  Graph complement() const;

  bool operator==(const Graph& o) const = default;

 private:
  friend class GraphBuilder;
  int n_ = 0;
  long long m_ = 0;
  std::vector<VertexSet> rows_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(int n);
  explicit GraphBuilder(const Graph& g);
  int n() const { return g_.n_; }
  bool has_edge(int u, int v) const { return g_.adjacent(u, v); }
  // Returns false if the edge was already present.
  bool add_edge(int u, int v);
  void remove_edge(int u, int v);
  void add_clique(const std::vector<int>& vs);
  Graph build() &&;
  Graph snapshot() const { return g_; }

 private:
  Graph g_;
};

// Strict constructor: rejects duplicates, u >= v and out-of-range endpoints.
// The error names the 1-based position of the offending pair.
Graph from_edge_list(int n, const std::vector<Edge>& edges);
Graph overlay(const Graph& a, const Graph& b);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph empty_graph(int n);

// ".el" text: "n m" then m lines "u v".
Graph parse_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const std::string& path, const Graph& g);
std::string to_edge_list_text(const Graph& g);

// Sidecar "name: v v v" lines.
using NamedSets = std::vector<std::pair<std::string, std::vector<int>>>;
void write_sets(std::ostream& out, const NamedSets& sets);
NamedSets parse_sets(std::istream& in);
NamedSets read_sets_file(const std::string& path);
void write_sets_file(const std::string& path, const NamedSets& sets);

}  // namespace kfactor
