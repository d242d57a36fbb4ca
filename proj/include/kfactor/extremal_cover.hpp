#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kfactor/graph.hpp"

namespace kfactor {

struct QCopy {
  std::vector<int> L, M, N;  // N[i] is matched to M[i]
};

struct MixedFactor {
  int s = 0, t = 0;
  std::vector<int> singletons;
  std::vector<Edge> edges;
  std::vector<QCopy> qs;
  std::pair<long long, long long> index() const {
    return {static_cast<long long>(edges.size()) + static_cast<long long>(t) * qs.size(),
            static_cast<long long>(qs.size())};
  }
};

// Parts are disjoint, each is present in g, and together they cover domain
// (all of V when null).
bool verify_mixed_factor(const Graph& g, const MixedFactor& f, std::string* why = nullptr,
                         const VertexSet* domain = nullptr);

struct CoverOptions {
  int C = -1;  // leftover constant; -1 selects 2(s+t)^2
  bool check_min_degree = true;
};

struct CoverResult {
  bool covered = false;
  MixedFactor factor;       // final local-search state (both branches)
  std::vector<int> sparse;  // Z when !covered
  long long sparse_edges = 0;
  int x = -1, y = -1;
  int C = 0;
  long long moves = 0;
  std::map<std::string, long long> move_counts;
  std::vector<std::pair<long long, long long>> index_trace;
};

CoverResult cover_or_sparse(const Graph& g, int r, int s, double delta,
                            const CoverOptions& opt = {});

struct AbsorberFamily {
  std::vector<Clique> cliques;
  double delta = 0.0;
  int g = 0;
};

struct AbsorberCheck {
  bool ok = false;
  bool cliques_ok = false;   // each a K_g, pairwise disjoint
  bool size_ok = false;      // covers <= delta n
  bool neighbour_ok = false;
  long long covered = 0;
  double threshold = 0.0;    // delta^2 n / (24 g^2)
  double min_slack = 0.0;    // min_x (#cliques meeting N(x)) - threshold
  int worst_vertex = -1;
};
AbsorberCheck is_absorber(const Graph& g, const AbsorberFamily& fam);

// Labelled copies of K_g through v: (g-1)! times the number of cliques.
long long rooted_clique_copies(const Graph& g, int v, int g_order);

struct AbsorberBuild {
  AbsorberFamily family;
  int attempts = 0;
  long long pool = 0;  // |K|
  double rate = 0.0;
};
AbsorberBuild build_absorber(const Graph& g, double delta, int g_order,
                             std::uint64_t seed, int max_retries = 50);

struct ComposeResult {
  bool covered = false;
  MixedFactor factor;  // on original vertex ids, excluding the absorber
  AbsorberFamily absorber;
  std::vector<int> sparse;
  long long sparse_edges = 0;
  std::string sparse_source;  // "local-search" or "neighbourhood"
  int g_order = 0;
  int C = 0;
};
ComposeResult compose_cover(const Graph& g, int r, int s, double delta,
                            std::uint64_t seed = 1, const CoverOptions& opt = {});

}  // namespace kfactor
