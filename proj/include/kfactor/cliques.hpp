#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kfactor/graph.hpp"

namespace kfactor {

// All k-cliques, each sorted, list in lexicographic order.
std::vector<Clique> enumerate_cliques(const Graph& g, int k);
// Unordered streaming variant; stop early by returning false.
void visit_cliques(const Graph& g, int k,
                   const std::function<bool(const std::vector<int>&)>& fn);
long long count_cliques(const Graph& g, int k);
// k-cliques containing v, restricted to `allowed` (v itself need not be in it).
std::vector<Clique> cliques_through(const Graph& g, int v, int k,
                                    const VertexSet& allowed);
// Largest clique containing v inside allowed ∪ {v}, capped at cap.
int clique_number_at(const Graph& g, int v, const VertexSet& allowed, int cap);

inline constexpr int kMaxPatternVertices = 6;

// Induced embeddings of f into h.
std::uint64_t count_embeddings(const Graph& f, const Graph& h);

// Non-isomorphic graphs on v vertices (v <= 6), each with |Aut|.
struct GraphClass {
  Graph g;
  std::uint64_t automorphisms;
};
const std::vector<GraphClass>& graph_classes(int v);
// Index into graph_classes(v) of the class of g.
int classify_graph(const Graph& g);
// Induced embeddings of every class on v vertices, by subset census.
std::vector<std::uint64_t> embedding_census(const Graph& h, int v);

std::optional<std::vector<int>> even_trail(const Graph& g, int u, int v,
                                           int max_len = 8);
// Shortest path, then a triangle through the end vertex if the parity is off.
std::optional<std::vector<int>> even_trail_by_repair(const Graph& g, int u,
                                                     int v, int max_len = 8);
bool is_even_trail(const Graph& g, const std::vector<int>& w, int u, int v,
                   int max_len);

struct RegularityVerdict {
  bool regular = false;
  bool exhaustive = false;
  double worst_deviation = 0.0;
  std::vector<int> witness1, witness2;
  double witness_density = 0.0;
};
RegularityVerdict check_regular_pair(const Graph& g, const VertexSet& v1,
                                     const VertexSet& v2, double eps, double d,
                                     std::uint64_t seed = 1);

}  // namespace kfactor
