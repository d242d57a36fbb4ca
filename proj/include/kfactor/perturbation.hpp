#pragma once

#include <cstdint>

#include "kfactor/graph.hpp"

namespace kfactor {

struct PerturbationPlan {
  std::uint64_t seed = 0;
  int rounds = 1;
};

// U_e for pair u < v. Bit layout in the README.
double derive_uniform(std::uint64_t seed, std::uint64_t round, int u, int v);

// g plus every non-edge {u,v} with U_e < p.
Graph perturb(const Graph& g, double p, const PerturbationPlan& plan,
              int round = 0);
// Just the random edges {u,v} with U_e < p.
Graph random_edges(int n, double p, const PerturbationPlan& plan, int round = 0);

}  // namespace kfactor
