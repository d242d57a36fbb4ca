#include <gtest/gtest.h>

#include "kfactor/cliques.hpp"
#include "kfactor/constructions.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/extremal_cover.hpp"
#include "oracles.hpp"

using namespace kfactor;

namespace {

// Independent check of a mixed {K1, K2, Q} factor against the adjacency matrix.
bool mixed_ok(const oracle::Matrix& a, const MixedFactor& f, const std::vector<int>& domain) {
  std::vector<int> seen(a.size(), 0);
  auto take = [&](int v) { return seen[v]++ == 0; };
  for (int v : f.singletons)
    if (!take(v)) return false;
  for (auto [u, v] : f.edges)
    if (!a[u][v] || !take(u) || !take(v)) return false;
  for (const auto& q : f.qs) {
    if (static_cast<int>(q.M.size()) != f.t || q.N.size() != q.M.size() ||
        static_cast<int>(q.L.size()) != f.s - f.t)
      return false;
    for (int l : q.L)
      for (int m : q.M)
        if (!a[l][m]) return false;
    for (size_t i = 0; i < q.M.size(); ++i)
      if (!a[q.M[i]][q.N[i]]) return false;
    for (int v : q.L)
      if (!take(v)) return false;
    for (int v : q.M)
      if (!take(v)) return false;
    for (int v : q.N)
      if (!take(v)) return false;
  }
  for (int v : domain)
    if (seen[v] != 1) return false;
  int total = 0;
  for (int c : seen) total += c;
  return total == static_cast<int>(domain.size());
}

std::vector<int> all_of(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(CoverOrSparse, CompleteGraphIsCovered) {
  Graph g = complete_graph(40);
  auto r = cover_or_sparse(g, 4, 3, 0.05);
  ASSERT_TRUE(r.covered);
  EXPECT_TRUE(r.factor.singletons.empty());
  EXPECT_EQ(r.C, 2 * (3 + 1) * (3 + 1));
  EXPECT_TRUE(mixed_ok(oracle::matrix_of(g), r.factor, all_of(40)));
}

TEST(CoverOrSparse, BalancedBipartiteByEdges) {
  Host h = bipartite_random(20, 20, 1.0, 0);
  auto r = cover_or_sparse(h.graph, 2, 1, 0.0);
  ASSERT_TRUE(r.covered);
  EXPECT_TRUE(r.factor.singletons.empty());
  // with s = t a Q is a single edge
  for (const auto& q : r.factor.qs) EXPECT_TRUE(q.L.empty());
  EXPECT_EQ(r.factor.edges.size() + r.factor.qs.size(), 20u);
  EXPECT_TRUE(mixed_ok(oracle::matrix_of(h.graph), r.factor, all_of(40)));
}

TEST(CoverOrSparse, LargeIndependentSetGivesSparse) {
  Graph g = independent_plus_complete(200, 160);
  auto r = cover_or_sparse(g, 4, 3, 0.05);
  ASSERT_FALSE(r.covered);
  auto a = oracle::matrix_of(g);
  EXPECT_TRUE(mixed_ok(a, r.factor, all_of(200)));
  EXPECT_GT(static_cast<int>(r.factor.singletons.size()), r.C);
  EXPECT_EQ(oracle::edges_in(a, r.sparse), r.sparse_edges);
  EXPECT_EQ(r.sparse_edges, 0);
  // each of the 40 Q copies puts three independent vertices into Z
  EXPECT_GE(r.sparse.size(), 120u);
  EXPECT_GE(static_cast<double>(r.sparse.size()), (0.75 - 10 * 3 * 4 * 0.05) * 200);
}

TEST(CoverOrSparse, IndexStrictlyIncreases) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Graph g = oracle::gnp(60, 0.75, s);
    if (g.min_degree() < (1 - 0.75 - 0.1) * 60) continue;
    auto r = cover_or_sparse(g, 4, 3, 0.1);
    for (size_t i = 1; i < r.index_trace.size(); ++i) EXPECT_LT(r.index_trace[i - 1], r.index_trace[i]);
    EXPECT_LE(r.moves, 60LL * 61);
    EXPECT_TRUE(mixed_ok(oracle::matrix_of(g), r.factor, all_of(60)));
  }
}

TEST(CoverOrSparse, MinDegreeRejected) {
  EXPECT_THROW(cover_or_sparse(empty_graph(20), 4, 3, 0.05), RejectedInput);
}

TEST(IsAbsorber, EmptyFamilyFailsNeighbourCondition) {
  AbsorberFamily fam{{}, 0.1, 2};
  auto c = is_absorber(complete_graph(30), fam);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.neighbour_ok);
}

TEST(IsAbsorber, MatchingWithDeltaOne) {
  AbsorberFamily fam{{}, 1.0, 2};
  for (int i = 0; i + 1 < 30; i += 2) fam.cliques.push_back({i, i + 1});
  auto c = is_absorber(complete_graph(30), fam);
  EXPECT_TRUE(c.size_ok);
  EXPECT_TRUE(c.neighbour_ok);
  EXPECT_TRUE(c.ok);
}

TEST(BuildAbsorber, CompleteGraphEdges) {
  Graph g = complete_graph(60);
  auto b = build_absorber(g, 0.1, 2, 1);
  EXPECT_EQ(b.attempts, 1);
  auto c = is_absorber(g, b.family);
  EXPECT_TRUE(c.ok);
  // every vertex sees at least delta^2 n / 96 absorber edges
  for (int v = 0; v < 60; ++v) {
    int seen = 0;
    for (const auto& e : b.family.cliques)
      if (g.adjacent(v, e[0]) || g.adjacent(v, e[1])) ++seen;
    EXPECT_GE(seen, 0.01 * 60 / 96);
  }
}

TEST(BuildAbsorber, TrianglesInRandomGraph) {
  Graph g = oracle::gnp(300, 0.5, 77);
  auto b = build_absorber(g, 0.05, 3, 5);
  EXPECT_LE(b.attempts, 50);
  auto a = oracle::matrix_of(g);
  std::vector<int> seen(300, 0);
  for (const auto& c : b.family.cliques) {
    EXPECT_TRUE(oracle::is_clique(a, c));
    EXPECT_EQ(c.size(), 3u);
    for (int v : c) EXPECT_EQ(seen[v]++, 0);
  }
  EXPECT_TRUE(is_absorber(g, b.family).ok);
}

TEST(BuildAbsorber, TriangleFreeRejected) {
  Host h = bipartite_random(20, 20, 1.0, 0);
  EXPECT_THROW(build_absorber(h.graph, 0.05, 3, 1), RejectedInput);
}

TEST(RootedCopies, CompleteGraph) {
  // K_6: 10 triangles through a vertex, 2! labellings each
  EXPECT_EQ(rooted_clique_copies(complete_graph(6), 0, 3), 20);
}

TEST(ComposeCover, NonSingularUsesEdges) {
  Graph g = complete_graph(60);
  auto r = compose_cover(g, 4, 3, 0.2, 1);
  ASSERT_TRUE(r.covered);
  EXPECT_EQ(r.g_order, 2);
  EXPECT_TRUE(is_absorber(g, r.absorber).ok);
}

TEST(ComposeCover, SingularUsesTriangles) {
  Graph g = complete_graph(60);
  auto r = compose_cover(g, 6, 3, 0.2, 1);
  ASSERT_TRUE(r.covered);
  EXPECT_EQ(r.g_order, 3);
  EXPECT_TRUE(is_absorber(g, r.absorber).ok);
  // absorber and factor together cover every vertex exactly once
  std::vector<int> seen(60, 0);
  for (const auto& c : r.absorber.cliques)
    for (int v : c) ++seen[v];
  for (int v : r.factor.singletons) ++seen[v];
  for (auto [u, v] : r.factor.edges) ++seen[u], ++seen[v];
  for (const auto& q : r.factor.qs) {
    for (int v : q.L) ++seen[v];
    for (int v : q.M) ++seen[v];
    for (int v : q.N) ++seen[v];
  }
  for (int c : seen) EXPECT_EQ(c, 1);
}

TEST(ComposeCover, IndependentSetGivesSparse) {
  Graph g = independent_plus_complete(200, 160);
  auto r = compose_cover(g, 4, 3, 0.1, 1);
  ASSERT_FALSE(r.covered);
  auto a = oracle::matrix_of(g);
  EXPECT_EQ(oracle::edges_in(a, r.sparse), r.sparse_edges);
  EXPECT_LE(static_cast<double>(r.sparse_edges), 0.1 * 200 * 200);
  EXPECT_GE(static_cast<double>(r.sparse.size()), (0.75 - 0.1) * 200 * 0.5);
}
