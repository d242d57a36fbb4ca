#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kfactor/graph.hpp"
#include "kfactor/perturbation.hpp"

namespace kfactor {

enum class Regime { kAuto, kSmallG, kGreedy, kMainWF };
const char* regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct HarvestInstance {
  Graph host;
  long long g = 0;
  int s = 2;
  double p = 0.0;
  PerturbationPlan plan;
  Regime regime = Regime::kAuto;
  double delta = 0.1;        // peel threshold delta n / 2
  int partition_retries = 100;
  long long w_cap = 10'000'000;
};

struct HarvestResult {
  bool ok = false;
  std::vector<Clique> copies;
  Regime regime = Regime::kAuto;
  std::string reason;
  long long random_edges = 0;
  long long peeled = 0;          // copies from the high-degree peel
  long long target = 0;          // copies still needed after the peel
  long long working_g = 0;       // min degree of the host after the peel
  int partition_attempts = 0;
  long long partition_swaps = 0; // repair swaps after the random retries
  long long a = 0, b = 0, d = 0, d0 = 0;
  long long W = 0, W_tilde = 0, F_tilde = 0, F1_tilde = 0, survivors = 0;
};

HarvestResult harvest(const HarvestInstance& inst);

struct CandidateBook {
  std::vector<Edge> g_prime;          // A-B edges kept, (a, b)
  std::vector<Clique> W;              // sorted vertex sets
  long long F1_pairs = 0;             // pairs of W meeting in exactly one vertex
  // Ordered cherries: (u, c, w) with u != w both G'-adjacent to the centre c.
  long long cherries = 0;
  long long cherries_a_centre = 0;
};

// G' keeps, for every a in A, its d0 largest-id B-neighbours.
std::vector<Edge> thin_to_g_prime(const Graph& host, const std::vector<int>& A,
                                  const std::vector<int>& B, long long d0);

CandidateBook candidate_book(const Graph& host, const std::vector<int>& A,
                             const std::vector<int>& B, const std::vector<int>& D, int s,
                             long long g, long long cap = 10'000'000);

// Smallest clique (lexicographically first found) of size k inside cand.
std::optional<Clique> find_clique_in(const Graph& g, const VertexSet& cand, int k);

}  // namespace kfactor
