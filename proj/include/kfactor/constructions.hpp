#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kfactor/graph.hpp"

namespace kfactor {

struct HostSpec {
  std::string family;  // f-gamma, multipartite-s2, pseudorandom-lower, hs-tight,
                       // q-graph, b-mst, bipartite-random
  int n = 0, r = 0, s = 0, t = 0, m = 0;
  double gamma = 0.0;
  double p = 0.0;  // bipartite-random only
  std::uint64_t seed = 0;
  int max_retries = 20;
};

struct Host {
  Graph graph;
  NamedSets sets;  // designated vertex sets, e.g. {"A", ...}
  double L_used = 0.0;  // pseudorandom-lower only
  int attempts = 0;
  std::map<std::string, long long> info;  // realized sizes

  const std::vector<int>& set(const std::string& name) const;
};

// Half-up rounding with a tolerance for representation error.
long long round_half_up(double x);

Graph independent_plus_complete(int n, int a);

Host f_gamma(int n, int r, int s, double gamma);
Host multipartite_s2(int n, int r);
Host pseudorandom_lower(int n, int r, int s, std::uint64_t seed, int max_retries = 20);
Host hs_tight(int n, int r);
Host q_graph(int s, int t);  // sets L, M, N with m_i matched to n_i
Host b_mst(int m, int s, int t);
Host bipartite_random(int a, int b, double p, std::uint64_t seed);
// Uniform-ish random d-regular graph by sequential stub pairing with restarts.
Graph random_regular(int n, int d, std::uint64_t seed);

Host build_host(const HostSpec& spec);

// Bound used for (G4): 4 (|A|)_v (3k/|A|)^e, the proof's expectation bound
// with slack.
double g4_bound(int a_size, int k, int v, int e);

}  // namespace kfactor
