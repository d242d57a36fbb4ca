#include <gtest/gtest.h>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <random>
#include <unordered_map>

#include "kfactor/cliques.hpp"
#include "kfactor/constructions.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/factor.hpp"
#include "oracles.hpp"

using namespace kfactor;

namespace {

int edmonds_matching(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(g.n());
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, bg);
  std::vector<boost::graph_traits<BG>::vertex_descriptor> mate(g.n());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return static_cast<int>(boost::matching_size(bg, &mate[0]));
}

// Most disjoint k-cliques, by recursion on the lowest free vertex.
int max_packing(const oracle::Matrix& a, int k) {
  int n = static_cast<int>(a.size());
  auto all = oracle::cliques(a, k);
  std::unordered_map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> rec = [&](std::uint32_t free) -> int {
    if (std::popcount(free) < k) return 0;
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    int v = std::countr_zero(free);
    int best = rec(free & ~(1u << v));
    for (const auto& c : all) {
      if (c[0] != v) continue;
      std::uint32_t m = 0;
      for (int x : c) m |= 1u << x;
      if ((m & free) == m) best = std::max(best, 1 + rec(free & ~m));
    }
    return memo[free] = best;
  };
  return rec(n >= 32 ? ~0u : (1u << n) - 1);
}

}  // namespace

TEST(HasFactor, SmallCases) {
  auto r = has_factor(complete_graph(6), 3);
  ASSERT_EQ(r.verdict, Verdict::kFound);
  EXPECT_EQ(r.parts.size(), 2u);
  EXPECT_TRUE(verify_factor(complete_graph(6), 3, r.parts));
  EXPECT_EQ(has_factor(hs_tight(12, 3).graph, 3).verdict, Verdict::kAbsent);
  auto d = has_factor(complete_graph(7), 3);
  EXPECT_EQ(d.verdict, Verdict::kAbsent);
  EXPECT_EQ(d.reason, "divisibility");
}

TEST(HasFactor, AgreesWithPartitionScan) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 600; ++i) {
    int n = std::vector<int>{6, 8, 9, 12}[i % 4];
    int r = 2 + (i / 4) % 3;
    double p = 0.45 + 0.5 * (gen() % 1000) / 1000.0;
    Graph g = oracle::gnp(n, p, gen());
    auto a = oracle::matrix_of(g);
    auto res = has_factor(g, r);
    ASSERT_NE(res.verdict, Verdict::kBudgetExhausted);
    ASSERT_EQ(res.verdict == Verdict::kFound, oracle::has_factor(a, r)) << "n " << n << " r " << r;
    if (res.verdict == Verdict::kFound) EXPECT_TRUE(oracle::valid_factor(a, r, res.parts));
  }
}

TEST(HasFactor, DenseTwelveQuadruples) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Graph g = oracle::gnp(12, 0.9, s);
    EXPECT_EQ(has_factor(g, 4).verdict == Verdict::kFound, oracle::has_factor(oracle::matrix_of(g), 4));
  }
}

TEST(HasFactor, MatchingAgreesWithEdmonds) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 1000; ++i) {
    int n = 2 * (1 + static_cast<int>(gen() % 100));
    double p = (1.0 + gen() % 40) / n;
    Graph g = oracle::gnp(n, std::min(1.0, p), gen());
    bool perfect = 2 * edmonds_matching(g) == n;
    auto res = has_factor(g, 2);
    ASSERT_EQ(res.verdict == Verdict::kFound, perfect) << "n " << n;
    if (perfect) EXPECT_TRUE(verify_factor(g, 2, res.parts));
  }
}

TEST(HasFactor, BudgetIsReported) {
  Graph g = oracle::gnp(60, 0.5, 4);
  auto r = has_factor(g, 4, 1);
  EXPECT_NE(r.verdict, Verdict::kAbsent);
}

TEST(CountFactors, Known) {
  EXPECT_EQ(count_factors(complete_graph(6), 3), 10u);
  EXPECT_EQ(count_factors(complete_graph(4), 2), 3u);
  EXPECT_EQ(count_factors(cycle_graph(6), 2), 2u);
  EXPECT_THROW(count_factors(complete_graph(17), 2), SizeLimitError);
}

TEST(CountFactors, AgreesWithOracle) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Graph g = oracle::gnp(12, 0.7, s);
    for (int r : {2, 3, 4}) EXPECT_EQ(count_factors(g, r), oracle::count_factors(oracle::matrix_of(g), r));
  }
}

TEST(MaxDisjointCliques, SmallCases) {
  GraphBuilder b(6);
  b.add_clique({0, 1, 2});
  b.add_clique({3, 4, 5});
  Graph two = std::move(b).build();
  EXPECT_EQ(max_disjoint_cliques(two, 3, 2).parts.size(), 2u);
  auto k5 = max_disjoint_cliques(complete_graph(5), 3, 2);
  EXPECT_EQ(k5.parts.size(), 1u);
  EXPECT_TRUE(k5.exact);
}

TEST(MaxDisjointCliques, ExactMatchesPackingOracle) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    Graph g = oracle::gnp(18, 0.55, 500 + s);
    auto a = oracle::matrix_of(g);
    for (int k : {3, 4}) {
      auto res = max_disjoint_cliques(g, k, 18);
      ASSERT_TRUE(res.exact);
      EXPECT_EQ(static_cast<int>(res.parts.size()), max_packing(a, k));
      std::vector<int> seen(18, 0);
      for (const auto& c : res.parts) {
        EXPECT_TRUE(oracle::is_clique(a, c));
        for (int v : c) EXPECT_EQ(seen[v]++, 0);
      }
    }
  }
}

TEST(FamilyFactor, Singletons) {
  Graph g = oracle::gnp(9, 0.3, 1);
  auto r = has_family_factor(g, {empty_graph(1)});
  ASSERT_EQ(r.verdict, Verdict::kFound);
  EXPECT_EQ(r.parts.size(), 9u);
}

TEST(FamilyFactor, CycleWithEdgesAndSingleton) {
  std::vector<Graph> fam{empty_graph(1), complete_graph(2)};
  auto r = has_family_factor(cycle_graph(5), fam);
  ASSERT_EQ(r.verdict, Verdict::kFound);
  EXPECT_TRUE(verify_family_factor(cycle_graph(5), fam, r.parts));
}

TEST(FamilyFactor, QSelfCover) {
  Graph q = q_graph(5, 3).graph;
  auto r = has_family_factor(q, {q});
  ASSERT_EQ(r.verdict, Verdict::kFound);
  ASSERT_EQ(r.parts.size(), 1u);
  EXPECT_TRUE(verify_family_factor(q, {q}, r.parts));
}

TEST(FamilyFactor, NoCoverWithoutSingletons) {
  auto r = has_family_factor(cycle_graph(5), {complete_graph(2)});
  EXPECT_EQ(r.verdict, Verdict::kAbsent);
}
