#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfactor/graph.hpp"

namespace kfactor {

enum class Verdict { kFound, kAbsent, kBudgetExhausted };
const char* verdict_name(Verdict v);

inline constexpr long long kDefaultBudget = 10'000'000;

struct FactorResult {
  Verdict verdict = Verdict::kAbsent;
  std::vector<Clique> parts;  // sorted cliques, sorted by first vertex
  std::string reason;
  long long nodes = 0;
  std::string method;  // "exact-cover" or "universal-reduction"
};

FactorResult has_factor(const Graph& g, int r, long long budget = kDefaultBudget);
bool verify_factor(const Graph& g, int r, const std::vector<Clique>& parts);

// Exact count; n <= 16.
std::uint64_t count_factors(const Graph& g, int r);

struct DisjointCliques {
  std::vector<Clique> parts;
  bool exact = false;       // optimality proven (or target reached)
  std::string mode;         // "exact" or "greedy-swap"
  long long clique_count = 0;
  long long nodes = 0;
};
DisjointCliques max_disjoint_cliques(const Graph& g, int k, int target,
                                     long long budget = kDefaultBudget);

struct FamilyCopy {
  int member = 0;
  std::vector<int> image;  // image[i] hosts vertex i of the member
};
struct FamilyFactorResult {
  Verdict verdict = Verdict::kAbsent;
  std::vector<FamilyCopy> parts;
  std::string reason;
  long long nodes = 0;
};
FamilyFactorResult has_family_factor(const Graph& g, const std::vector<Graph>& family,
                                     long long budget = kDefaultBudget);
bool verify_family_factor(const Graph& g, const std::vector<Graph>& family,
                          const std::vector<FamilyCopy>& parts);

}  // namespace kfactor
