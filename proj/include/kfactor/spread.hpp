#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kfactor/bounds.hpp"
#include "kfactor/graph.hpp"

namespace kfactor {

struct SpreadSample {
  bool ok = false;  // false: J_C has no perfect matching
  std::vector<Edge> matching;  // (a, b) with a in A, b in B, sorted by a
  std::uint64_t seed = 0;
  int C = 0;
  long long j_edges = 0;
};

// Reusable sampler for one bipartite host.
class MuCSampler {
 public:
  MuCSampler(const Graph& host, std::vector<int> A, std::vector<int> B, int C);
  SpreadSample sample(std::uint64_t seed) const;
  const std::vector<int>& A() const { return a_; }
  const std::vector<int>& B() const { return b_; }

 private:
  std::vector<int> a_, b_;
  int C_;
  std::vector<std::vector<int>> nb_;  // local ids; A is 0..k-1, B is k..2k-1
};

SpreadSample mu_c_sample(const Graph& host, const std::vector<int>& A,
                         const std::vector<int>& B, int C, std::uint64_t seed);

struct SpreadFlag {
  std::vector<Edge> set;
  double estimate = 0.0;
  double lower = 0.0;
  double bound = 0.0;
};

struct SpreadReport {
  long long samples = 0;
  long long attempts = 0;
  double q = 0.0;
  double max_single = 0.0;
  Edge max_single_edge{-1, -1};
  double max_pair = 0.0;
  long long pairs = 0;
  std::vector<SpreadFlag> flags;
};

struct SpreadCheckOptions {
  long long samples = 20000;
  long long pairs = 2000;
  double pair_factor = 1.0;  // pairs are compared against pair_factor q^2
  double z = 4.0;
  std::uint64_t seed = 1;
};

using MatchingSampler = std::function<SpreadSample(std::uint64_t)>;

// Monte Carlo estimate of P(S in M) for every edge S of host and for random
// disjoint edge pairs, over conditioned samples.
SpreadReport verify_spread(const Graph& host, const MatchingSampler& sampler, double q,
                           const SpreadCheckOptions& opt = {});

struct BCopy {
  std::vector<int> T;               // class of size t, T[0] is the covered vertex
  std::vector<std::vector<int>> S;  // m classes of size s
  std::vector<int> vertices() const;
};

using CopyProvider = std::function<std::vector<BCopy>(int x, const VertexSet& forbidden)>;

// Copies of B_{m,s,t} through x avoiding forbidden, x in the class of size t;
// at most cap copies are listed.
CopyProvider b_mst_provider(const Graph& g, int m, int s, int t, long long cap = 20000);

struct XCoverResult {
  bool ok = false;
  std::vector<BCopy> copies;
  std::vector<long long> candidates;  // per step
  std::vector<int> order;             // x_j per step
  int stuck = -1;
  std::string reason;
};

XCoverResult x_cover_process(const Graph& g, const VertexSet& X, const CopyProvider& provider,
                             std::uint64_t seed);

struct K2Copy {
  int sigma = -1, tau = -1;
};

struct WeightedPacking {
  int s = 0, t = 0;
  Graph q;
  NamedSets sets;  // L, M, N
  std::vector<K2Copy> copies;
  Rational w_sigma, w_tau;
};

WeightedPacking k2star_packing(int s, int t);
std::vector<Rational> packing_weights(const WeightedPacking& p);
Rational packing_residue(const WeightedPacking& p);

struct RecursiveOptions {
  double eps = 0.01;       // common-neighbourhood slack is sqrt(eps)
  int max_retries = 20;    // fresh mu_C draws per level
};

struct LevelReport {
  int part = 0, level = 0;
  double density = 0.0;     // pair density before matching
  long long allowed = 0;    // edges passing the common-neighbour filter
  int attempts = 0;
  bool ok = false;
};

struct RecursiveSample {
  bool ok = false;
  std::vector<std::vector<Clique>> H;  // per row i, cells of size s
  std::vector<LevelReport> levels;
  std::vector<std::string> warnings;
  std::string reason;
};

// parts[i][j], i < m, j < s, all of one size.
RecursiveSample recursive_factor_sample(const std::vector<std::vector<std::vector<int>>>& parts,
                                        const Graph& host, int C, std::uint64_t seed,
                                        const RecursiveOptions& opt = {});

}  // namespace kfactor
