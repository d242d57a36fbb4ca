#include "kfactor/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "kfactor/bounds.hpp"
#include "kfactor/cliques.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/perturbation.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

const std::vector<int>& Host::set(const std::string& name) const {
  for (const auto& [k, v] : sets)
    if (k == name) return v;
  throw ArgumentError("host has no set named " + name);
}

long long round_half_up(double x) {
  return static_cast<long long>(std::floor(x + 0.5 + 1e-9));
}

namespace {

std::vector<int> range(int from, int to) {
  std::vector<int> out;
  for (int v = from; v < to; ++v) out.push_back(v);
  return out;
}

void need(bool ok, const std::string& msg) {
  if (!ok) throw ArgumentError(msg);
}

}  // namespace

Graph independent_plus_complete(int n, int a) {
  need(0 <= a && a <= n, "independent set larger than the vertex set");
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = std::max(u + 1, a); v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

Host f_gamma(int n, int r, int s, double gamma) {
  need(n >= 1 && r >= 2 && 1 <= s && s < r, "f-gamma needs n >= 1 and 1 <= s < r");
  need(gamma >= 0.0 && gamma < 1.0 / r, "f-gamma needs 0 <= gamma < 1/r");
  long long a = round_half_up((static_cast<double>(s) / r - gamma) * n);
  need(a >= 0 && a <= n, "(s/r - gamma) n is out of range");
  Host h{independent_plus_complete(n, static_cast<int>(a)), {{"A", range(0, a)}}};
  h.info["A"] = a;
  return h;
}

Host multipartite_s2(int n, int r) {
  need(r >= 3, "multipartite-s2 needs r >= 3");
  if (n % r != 0) throw ArgumentError("multipartite-s2 needs r to divide n");
  std::vector<int> sizes(r / 2, 2 * n / r);
  if (r % 2) sizes.push_back(n / r);
  std::vector<int> cls(n);
  Host h;
  int at = 0;
  for (size_t c = 0; c < sizes.size(); ++c) {
    h.sets.emplace_back("P" + std::to_string(c), range(at, at + sizes[c]));
    for (int v = at; v < at + sizes[c]; ++v) cls[v] = static_cast<int>(c);
    at += sizes[c];
  }
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (cls[u] != cls[v]) b.add_edge(u, v);
  h.graph = std::move(b).build();
  return h;
}

double g4_bound(int a_size, int k, int v, int e) {
  double falling = 1.0;
  for (int i = 0; i < v; ++i) falling *= a_size - i;
  double q = std::min(1.0, 3.0 * k / a_size);
  return 4.0 * falling * std::pow(q, e);
}

Host pseudorandom_lower(int n, int r, int s, std::uint64_t seed, int max_retries) {
  need(3 <= s && s < r, "pseudorandom-lower needs 3 <= s < r");
  if (n % r != 0) throw ArgumentError("pseudorandom-lower needs r to divide n");
  double phi_s = phi_value(s);
  int k = static_cast<int>(round_half_up(std::pow(static_cast<double>(n), 1.0 - phi_s)));
  need(k >= 2, "n too small: k = round(n^(1-phi(s))) < 2");
  int a_size = s * n / r + k;
  need(a_size <= n, "|A| = sn/r + k exceeds n");
  int a1 = (a_size + 1) / 2, a2 = a_size / 2;
  need(k <= a2, "k exceeds the smaller bipartition class");
  double q = std::min(1.0, 3.0 * k / a_size);
  int v = s + 1;
  const auto& classes = graph_classes(v);

  int fail_g2 = 0, fail_g4 = 0;
  for (int attempt = 0; attempt < std::max(1, max_retries); ++attempt) {
    std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    GraphBuilder hb(a_size);
    for (int x = 0; x < a1; ++x)
      for (int y = a1; y < a_size; ++y)
        if (derive_uniform(sub, 0, x, y) < q) hb.add_edge(x, y);
    // Top up vertices below degree k with random cross edges.
    Rng rng(derive_seed(sub, 1));
    for (int x = 0; x < a_size; ++x) {
      Graph cur = hb.snapshot();
      int deg = cur.degree(x);
      if (deg >= k) continue;
      std::vector<int> pool;
      int lo = x < a1 ? a1 : 0, hi = x < a1 ? a_size : a1;
      for (int y = lo; y < hi; ++y)
        if (!cur.adjacent(x, y)) pool.push_back(y);
      rng.shuffle(pool);
      for (int i = 0; deg < k && i < static_cast<int>(pool.size()); ++i, ++deg)
        hb.add_edge(x, pool[i]);
    }
    Graph ga = std::move(hb).build();
    if (ga.min_degree() < k) {
      ++fail_g2;
      continue;
    }
    auto census = embedding_census(ga, v);
    bool ok = true;
    double L = 0.0;
    for (size_t c = 0; c < classes.size(); ++c) {
      int e = static_cast<int>(classes[c].g.m());
      double bound = g4_bound(a_size, k, v, e);
      if (static_cast<double>(census[c]) > bound) ok = false;
      double scale = std::pow(static_cast<double>(a_size), v) *
                     std::pow(static_cast<double>(k) / a_size, e);
      L = std::max(L, static_cast<double>(census[c]) / scale);
    }
    if (!ok) {
      ++fail_g4;
      continue;
    }
    GraphBuilder b(n);
    for (auto [x, y] : ga.edges()) b.add_edge(x, y);
    for (int x = 0; x < n; ++x)
      for (int y = std::max(x + 1, a_size); y < n; ++y) b.add_edge(x, y);
    Host h{std::move(b).build(),
           {{"A", range(0, a_size)}, {"A1", range(0, a1)}, {"A2", range(a1, a_size)}}};
    h.L_used = L;
    h.attempts = attempt + 1;
    h.info["k"] = k;
    h.info["A"] = a_size;
    h.info["deltaA"] = ga.min_degree();
    return h;
  }
  throw ConstructionFailure(
      "pseudorandom-lower: retries exhausted; most frequent failure " +
      std::string(fail_g4 >= fail_g2 ? "(G4)" : "(G2)") + " (G2 failures " +
      std::to_string(fail_g2) + ", G4 failures " + std::to_string(fail_g4) + ")");
}

Host hs_tight(int n, int r) {
  need(r >= 2, "hs-tight needs r >= 2");
  if (n % r != 0) throw ArgumentError("hs-tight needs r to divide n");
  int a = n / r + 1;
  need(a <= n, "n/r + 1 exceeds n");
  Host h{independent_plus_complete(n, a), {{"A", range(0, a)}}};
  h.info["A"] = a;
  return h;
}

Host q_graph(int s, int t) {
  need(1 <= t && t <= s, "q-graph needs 1 <= t <= s");
  GraphBuilder b(s + t);
  for (int l = 0; l < s - t; ++l)
    for (int m = s - t; m < s; ++m) b.add_edge(l, m);
  for (int i = 0; i < t; ++i) b.add_edge(s - t + i, s + i);
  return Host{std::move(b).build(),
              {{"L", range(0, s - t)}, {"M", range(s - t, s)}, {"N", range(s, s + t)}}};
}

Host b_mst(int m, int s, int t) {
  need(m >= 1 && 1 <= t && t <= s, "b-mst needs m >= 1 and 1 <= t <= s");
  int n = m * s + t;
  std::vector<int> cls(n);
  Host h;
  for (int c = 0; c <= m; ++c) {
    int from = c * s, to = c < m ? from + s : n;
    for (int v = from; v < to; ++v) cls[v] = c;
    h.sets.emplace_back(c < m ? "S" + std::to_string(c) : "T", range(from, to));
  }
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (cls[u] != cls[v]) b.add_edge(u, v);
  h.graph = std::move(b).build();
  return h;
}

Host bipartite_random(int a, int b, double p, std::uint64_t seed) {
  need(a >= 1 && b >= 1, "bipartite-random needs nonempty classes");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
  GraphBuilder g(a + b);
  for (int x = 0; x < a; ++x)
    for (int y = a; y < a + b; ++y)
      if (derive_uniform(seed, 0, x, y) < p) g.add_edge(x, y);
  return Host{std::move(g).build(), {{"A", range(0, a)}, {"B", range(a, a + b)}}};
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  need(n >= 1 && d >= 0 && d < n, "random-regular needs 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw ArgumentError("n d must be even");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    GraphBuilder b(n);
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      bool placed = false;
      for (int tries = 0; tries < 100 && !placed; ++tries) {
        size_t i = rng.below(stubs.size()), j = rng.below(stubs.size());
        int u = stubs[i], v = stubs[j];
        if (i == j || u == v || b.has_edge(u, v)) continue;
        b.add_edge(u, v);
        if (i < j) std::swap(i, j);
        stubs.erase(stubs.begin() + static_cast<long>(i));
        stubs.erase(stubs.begin() + static_cast<long>(j));
        placed = true;
      }
      stuck = !placed;
    }
    if (!stuck) return std::move(b).build();
  }
  throw ConstructionFailure("random-regular: pairing kept getting stuck");
}

Host build_host(const HostSpec& spec) {
  const auto& f = spec.family;
  if (f == "f-gamma") return f_gamma(spec.n, spec.r, spec.s, spec.gamma);
  if (f == "multipartite-s2") return multipartite_s2(spec.n, spec.r);
  if (f == "pseudorandom-lower")
    return pseudorandom_lower(spec.n, spec.r, spec.s, spec.seed, spec.max_retries);
  if (f == "hs-tight") return hs_tight(spec.n, spec.r);
  if (f == "q-graph") return q_graph(spec.s, spec.t);
  if (f == "b-mst") return b_mst(spec.m, spec.s, spec.t);
  if (f == "bipartite-random") {
    int a = spec.n / 2;
    return bipartite_random(a, spec.n - a, spec.p, spec.seed);
  }
  throw ArgumentError("unknown host family \"" + f + "\"");
}

}  // namespace kfactor
