#include "kfactor/perturbation.hpp"

#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

double derive_uniform(std::uint64_t seed, std::uint64_t round, int u, int v) {
  if (u < 0 || u >= v)
    throw ArgumentError("derive_uniform needs 0 <= u < v, got " + std::to_string(u) +
                        " " + std::to_string(v));
  std::uint64_t h = mix64(seed ^ kGolden);
  h = mix64(h ^ round);
  h = mix64(h ^ (static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint32_t>(v)));
  return to_unit(h);
}

namespace {

void check(double p, const PerturbationPlan& plan, int round) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
  if (round < 0 || round >= plan.rounds)
    throw ArgumentError("round " + std::to_string(round) + " outside plan of " +
                        std::to_string(plan.rounds) + " rounds");
}

}  // namespace

Graph perturb(const Graph& g, double p, const PerturbationPlan& plan, int round) {
  check(p, plan, round);
  GraphBuilder b(g);
  if (p <= 0.0) return std::move(b).build();
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.adjacent(u, v) && derive_uniform(plan.seed, round, u, v) < p)
        b.add_edge(u, v);
  return std::move(b).build();
}

Graph random_edges(int n, double p, const PerturbationPlan& plan, int round) {
  check(p, plan, round);
  GraphBuilder b(n);
  if (p <= 0.0) return std::move(b).build();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (derive_uniform(plan.seed, round, u, v) < p) b.add_edge(u, v);
  return std::move(b).build();
}

}  // namespace kfactor
