#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfactor/graph.hpp"

namespace kfactor {

enum class SparseMode { kAuto, kExhaustive, kLocalSearch };

struct SparseSearchOptions {
  SparseMode mode = SparseMode::kAuto;
  int restarts = 50;
  std::uint64_t seed = 1;
  double exhaustive_limit = 1e6;  // binom(n, k) at or below this is scanned
};

struct SparseSet {
  std::vector<int> set;
  long long edges = 0;
  bool exact = false;
};

SparseSet find_sparse_set(const Graph& g, int k, const SparseSearchOptions& opt = {});

struct CaseACheck {
  bool ok = false;
  bool i_ok = false, ii_ok = false, iii_ok = false, size_ok = false;
  double slack_i = 0.0;    // min over A1 of 4 beta n - |A2 \ N(x)|
  int worst_i = -1;
  double slack_ii = 0.0;   // min over A2 of |N(x) ∩ A1| - beta n
  int worst_ii = -1;
  long long missing_cross = 0;
  double slack_iii = 0.0;  // gamma n^2 - missing
  double slack_size = 0.0; // gamma n - | |A1| - (1 - alpha) n |
};

CaseACheck verify_case_a(const Graph& g, const std::vector<int>& a1, const std::vector<int>& a2,
                         double alpha, double beta, double gamma);

enum class Case { kA, kB };

struct Classification {
  Case verdict = Case::kB;
  std::vector<int> a1, a2;       // case A
  std::vector<int> witness;      // case B: best sparse set found
  long long witness_edges = 0;
  bool exact = true;             // false when case B rests on a heuristic search
  std::string reason;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::vector<int> U, W;
  CaseACheck check;
};

// Throws ArgumentError unless 8 gamma < beta < (1 - alpha) / 5.
void check_partition_parameters(double alpha, double beta, double gamma);

Classification refine_partition(const Graph& g, const std::vector<int>& X, double alpha,
                                double beta, double gamma);

Classification classify(const Graph& g, double alpha, double beta, double gamma,
                        const SparseSearchOptions& opt = {});

}  // namespace kfactor
