#include "kfactor/spread.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kfactor/constructions.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

double wilson_lower(double hits, double trials, double z) {
  if (trials <= 0) return 0.0;
  double p = hits / trials;
  double z2 = z * z;
  double centre = p + z2 / (2 * trials);
  double half = z * std::sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials));
  return (centre - half) / (1 + z2 / trials);
}

}  // namespace

MuCSampler::MuCSampler(const Graph& host, std::vector<int> A, std::vector<int> B, int C)
    : a_(std::move(A)), b_(std::move(B)), C_(C) {
  if (a_.size() != b_.size()) throw ArgumentError("classes must have equal size");
  if (C < 1) throw ArgumentError("C must be positive");
  int k = static_cast<int>(a_.size());
  std::vector<int> local(host.n(), -1);
  for (int i = 0; i < k; ++i) {
    for (int v : {a_[i], b_[i]})
      if (v < 0 || v >= host.n()) throw ArgumentError("class vertex out of range");
    if (local[a_[i]] >= 0) throw ArgumentError("classes overlap");
    local[a_[i]] = i;
  }
  for (int i = 0; i < k; ++i) {
    if (local[b_[i]] >= 0) throw ArgumentError("classes overlap");
    local[b_[i]] = k + i;
  }
  nb_.assign(2 * k, {});
  for (int i = 0; i < 2 * k; ++i) {
    int v = i < k ? a_[i] : b_[i - k];
    for (int u : host.neighbours(v)) {
      int lu = local[u];
      if (lu < 0) continue;
      if ((i < k) != (lu < k)) nb_[i].push_back(lu);
    }
  }
}

SpreadSample MuCSampler::sample(std::uint64_t seed) const {
  SpreadSample out;
  out.seed = seed;
  out.C = C_;
  int k = static_cast<int>(a_.size());
  Rng rng(seed);
  std::vector<std::vector<int>> jadj(k);
  std::vector<char> has(static_cast<size_t>(k) * k, 0);
  for (int v = 0; v < 2 * k; ++v) {
    const auto& nb = nb_[v];
    if (nb.empty()) return out;
    for (int c = 0; c < C_; ++c) {
      int u = nb[rng.below(nb.size())];
      int a = v < k ? v : u, b = (v < k ? u : v) - k;
      char& h = has[static_cast<size_t>(a) * k + b];
      if (!h) {
        h = 1;
        jadj[a].push_back(b);
        ++out.j_edges;
      }
    }
  }
  std::vector<int> order(k), rank(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<int> bperm(k);
  for (int i = 0; i < k; ++i) bperm[i] = i;
  rng.shuffle(bperm);
  for (int i = 0; i < k; ++i) rank[bperm[i]] = i;
  for (auto& adj : jadj)
    std::sort(adj.begin(), adj.end(), [&](int x, int y) { return rank[x] < rank[y]; });

  std::vector<int> mate_b(k, -1);
  std::vector<int> seen(k, -1);
  auto augment = [&](auto&& self, int a, int stamp) -> bool {
    for (int b : jadj[a]) {
      if (seen[b] == stamp) continue;
      seen[b] = stamp;
      if (mate_b[b] < 0 || self(self, mate_b[b], stamp)) {
        mate_b[b] = a;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < k; ++i)
    if (!augment(augment, order[i], i)) return out;
  for (int b = 0; b < k; ++b) out.matching.emplace_back(a_[mate_b[b]], b_[b]);
  std::sort(out.matching.begin(), out.matching.end());
  out.ok = true;
  return out;
}

SpreadSample mu_c_sample(const Graph& host, const std::vector<int>& A, const std::vector<int>& B,
                         int C, std::uint64_t seed) {
  return MuCSampler(host, A, B, C).sample(seed);
}

SpreadReport verify_spread(const Graph& host, const MatchingSampler& sampler, double q,
                           const SpreadCheckOptions& opt) {
  SpreadReport rep;
  rep.q = q;
  std::vector<Edge> edges = host.edges();
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(edges.size() * 2);
  for (size_t i = 0; i < edges.size(); ++i)
    index[pair_key(edges[i].first, edges[i].second)] = static_cast<int>(i);

  std::vector<std::pair<Edge, Edge>> pairs;
  Rng prng(derive_seed(opt.seed, 0x70616972ULL));
  if (edges.size() >= 2) {
    long long tries = 0;
    while (static_cast<long long>(pairs.size()) < opt.pairs && tries < 100 * opt.pairs) {
      ++tries;
      const Edge& e = edges[prng.below(edges.size())];
      const Edge& f = edges[prng.below(edges.size())];
      if (e.first == f.first || e.first == f.second || e.second == f.first ||
          e.second == f.second)
        continue;
      pairs.emplace_back(e, f);
    }
  }
  rep.pairs = static_cast<long long>(pairs.size());

  std::vector<long long> single(edges.size(), 0), both(pairs.size(), 0);
  std::vector<int> mate(host.n(), -1);
  long long cap = 100 * std::max<long long>(1, opt.samples);
  while (rep.samples < opt.samples && rep.attempts < cap) {
    SpreadSample s = sampler(derive_seed(opt.seed, static_cast<std::uint64_t>(rep.attempts)));
    ++rep.attempts;
    if (!s.ok) continue;
    ++rep.samples;
    for (auto [a, b] : s.matching) {
      auto it = index.find(pair_key(a, b));
      if (it != index.end()) ++single[it->second];
      mate[a] = b;
      mate[b] = a;
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
      const auto& [e, f] = pairs[i];
      if (mate[e.first] == e.second && mate[f.first] == f.second) ++both[i];
    }
    for (auto [a, b] : s.matching) mate[a] = mate[b] = -1;
  }
  auto N = static_cast<double>(rep.samples);
  if (rep.samples == 0) return rep;
  for (size_t i = 0; i < edges.size(); ++i) {
    double est = single[i] / N;
    if (est > rep.max_single) {
      rep.max_single = est;
      rep.max_single_edge = edges[i];
    }
    double lo = wilson_lower(static_cast<double>(single[i]), N, opt.z);
    if (lo > q) rep.flags.push_back({{edges[i]}, est, lo, q});
  }
  double bound2 = opt.pair_factor * q * q;
  for (size_t i = 0; i < pairs.size(); ++i) {
    double est = both[i] / N;
    rep.max_pair = std::max(rep.max_pair, est);
    double lo = wilson_lower(static_cast<double>(both[i]), N, opt.z);
    if (lo > bound2) rep.flags.push_back({{pairs[i].first, pairs[i].second}, est, lo, bound2});
  }
  return rep;
}

std::vector<int> BCopy::vertices() const {
  std::vector<int> v = T;
  for (const auto& c : S) v.insert(v.end(), c.begin(), c.end());
  std::sort(v.begin(), v.end());
  return v;
}

CopyProvider b_mst_provider(const Graph& g, int m, int s, int t, long long cap) {
  if (m < 1 || s < 1 || t < 1) throw ArgumentError("B_{m,s,t} needs m, s, t >= 1");
  return [&g, m, s, t, cap](int x, const VertexSet& forbidden) {
    std::vector<BCopy> out;
    int n = g.n();
    if (x < 0 || x >= n) throw ArgumentError("vertex out of range");
    // Slot order: T[1..t-1], then S_0, ..., S_{m-1}.
    std::vector<int> cls;
    for (int i = 1; i < t; ++i) cls.push_back(0);
    for (int c = 1; c <= m; ++c)
      for (int i = 0; i < s; ++i) cls.push_back(c);
    std::vector<std::vector<int>> chosen(m + 1);
    chosen[0].push_back(x);
    VertexSet used = forbidden;
    used.insert(x);
    auto rec = [&](auto&& self, size_t slot) -> void {
      if (static_cast<long long>(out.size()) >= cap) return;
      if (slot == cls.size()) {
        BCopy b;
        b.T = chosen[0];
        for (int c = 1; c <= m; ++c) b.S.push_back(chosen[c]);
        out.push_back(std::move(b));
        return;
      }
      int c = cls[slot];
      VertexSet cand = used.complement();
      for (int o = 0; o <= m; ++o) {
        if (o == c) continue;
        for (int v : chosen[o]) cand &= g.neighbours(v);
      }
      int floor_id = -1;
      if (!chosen[c].empty() && !(c == 0 && chosen[0].size() == 1)) floor_id = chosen[c].back();
      if (c >= 2 && chosen[c].empty()) floor_id = chosen[c - 1].front();
      if (floor_id >= 0) cand.erase_upto(floor_id);
      for (int v : cand) {
        chosen[c].push_back(v);
        used.insert(v);
        self(self, slot + 1);
        used.erase(v);
        chosen[c].pop_back();
        if (static_cast<long long>(out.size()) >= cap) return;
      }
    };
    rec(rec, 0);
    return out;
  };
}

XCoverResult x_cover_process(const Graph& g, const VertexSet& X, const CopyProvider& provider,
                             std::uint64_t seed) {
  XCoverResult res;
  Rng rng(seed);
  VertexSet covered(g.n());
  for (;;) {
    std::vector<int> left = (X - covered).to_vector();
    if (left.empty()) break;
    int x = left[rng.below(left.size())];
    std::vector<BCopy> cands = provider(x, covered);
    res.order.push_back(x);
    res.candidates.push_back(static_cast<long long>(cands.size()));
    if (cands.empty()) {
      res.stuck = x;
      res.reason = "no copy through vertex " + std::to_string(x) + " avoids the used vertices";
      return res;
    }
    BCopy pick = std::move(cands[rng.below(cands.size())]);
    for (int v : pick.vertices()) {
      if (covered.contains(v)) throw InternalError("provider returned a used vertex");
      covered.insert(v);
    }
    res.copies.push_back(std::move(pick));
  }
  res.ok = true;
  return res;
}

WeightedPacking k2star_packing(int s, int t) {
  if (t < 1) throw ArgumentError("t must be positive");
  if (t >= s) throw ArgumentError("t >= s: cover Q by a perfect matching instead");
  Host q = q_graph(s, t);
  WeightedPacking p;
  p.s = s;
  p.t = t;
  p.q = q.graph;
  p.sets = q.sets;
  p.w_sigma = Rational(1, static_cast<long long>(t) * (s + t));
  p.w_tau = Rational(1, static_cast<long long>(s) * (s + t));
  const auto& L = q.set("L");
  const auto& M = q.set("M");
  const auto& N = q.set("N");
  auto add = [&](int sigma, int tau) {
    for (int u = 0; u < s + t; ++u) p.copies.push_back({sigma, tau});
  };
  for (int j = 0; j < t; ++j)
    for (int c = 0; c < t; ++c) add(N[j], M[j]);
  for (int l : L)
    for (int j = 0; j < t; ++j) add(l, M[j]);
  return p;
}

std::vector<Rational> packing_weights(const WeightedPacking& p) {
  std::vector<Rational> w(p.q.n(), Rational(0));
  for (const K2Copy& c : p.copies) {
    w[c.sigma] += p.w_sigma;
    w[c.tau] += p.w_tau;
  }
  return w;
}

Rational packing_residue(const WeightedPacking& p) {
  Rational r(p.q.n());
  for (const Rational& w : packing_weights(p)) r -= w;
  return r;
}

RecursiveSample recursive_factor_sample(const std::vector<std::vector<std::vector<int>>>& parts,
                                        const Graph& host, int C, std::uint64_t seed,
                                        const RecursiveOptions& opt) {
  if (parts.empty()) throw ArgumentError("need at least one row of parts");
  size_t s = parts[0].size();
  if (s == 0) throw ArgumentError("rows must be nonempty");
  size_t k = parts[0][0].size();
  VertexSet seen(host.n());
  for (const auto& row : parts) {
    if (row.size() != s) throw ArgumentError("every row needs s parts");
    for (const auto& part : row) {
      if (part.size() != k) throw ArgumentError("parts must have equal size");
      for (int v : part) {
        if (v < 0 || v >= host.n() || seen.contains(v))
          throw ArgumentError("parts must be disjoint vertex sets");
        seen.insert(v);
      }
    }
  }
  using Cluster = std::vector<int>;
  auto complete_to = [&](const Cluster& a, const Cluster& b) {
    for (int u : a)
      for (int v : b)
        if (!host.adjacent(u, v)) return false;
    return true;
  };
  auto density = [&](const std::vector<Cluster>& x, const std::vector<Cluster>& y) {
    long long hit = 0;
    for (const auto& a : x)
      for (const auto& b : y)
        if (complete_to(a, b)) ++hit;
    return x.empty() ? 0.0 : static_cast<double>(hit) / (x.size() * y.size());
  };

  RecursiveSample res;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::vector<std::vector<Cluster>> P;
    for (const auto& part : parts[i]) {
      std::vector<Cluster> cl;
      for (int v : part) cl.push_back({v});
      P.push_back(std::move(cl));
    }
    for (size_t a = 0; a < s; ++a)
      for (size_t b = a + 1; b < s; ++b)
        if (density(P[a], P[b]) < 0.2)
          res.warnings.push_back("row " + std::to_string(i) + ": parts " + std::to_string(a) +
                                 "," + std::to_string(b) + " have density below 0.2");
    int level = 0;
    while (P.size() > 1) {
      ++level;
      const auto& X = P[P.size() - 2];
      const auto& Y = P[P.size() - 1];
      double d = 1.0;
      for (size_t a = 0; a < P.size(); ++a)
        for (size_t b = a + 1; b < P.size(); ++b) d = std::min(d, density(P[a], P[b]));
      double thr = std::max(0.0, d * d - std::sqrt(opt.eps)) * static_cast<double>(k);
      LevelReport lr;
      lr.part = static_cast<int>(i);
      lr.level = level;
      lr.density = density(X, Y);
      GraphBuilder hb(static_cast<int>(2 * k));
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
          if (!complete_to(X[a], Y[b])) continue;
          bool ok = true;
          for (size_t j = 0; j + 2 < P.size() && ok; ++j) {
            long long common = 0;
            for (const auto& z : P[j])
              if (complete_to(z, X[a]) && complete_to(z, Y[b])) ++common;
            ok = static_cast<double>(common) >= thr;
          }
          if (ok) {
            hb.add_edge(static_cast<int>(a), static_cast<int>(k + b));
            ++lr.allowed;
          }
        }
      Graph h = std::move(hb).build();
      std::vector<int> A(k), B(k);
      for (size_t a = 0; a < k; ++a) {
        A[a] = static_cast<int>(a);
        B[a] = static_cast<int>(k + a);
      }
      MuCSampler sampler(h, A, B, C);
      SpreadSample got;
      std::uint64_t base = derive_seed(derive_seed(seed, i), static_cast<std::uint64_t>(level));
      for (int attempt = 0; attempt < opt.max_retries && !got.ok; ++attempt) {
        got = sampler.sample(derive_seed(base, static_cast<std::uint64_t>(attempt)));
        lr.attempts = attempt + 1;
      }
      lr.ok = got.ok;
      res.levels.push_back(lr);
      if (!got.ok) {
        res.reason = "row " + std::to_string(i) + " level " + std::to_string(level) +
                     ": no perfect matching in J_C";
        return res;
      }
      std::vector<Cluster> merged;
      for (auto [a, b] : got.matching) {
        Cluster c = X[a];
        const Cluster& yb = Y[b - k];
        c.insert(c.end(), yb.begin(), yb.end());
        std::sort(c.begin(), c.end());
        merged.push_back(std::move(c));
      }
      P.pop_back();
      P.pop_back();
      P.push_back(std::move(merged));
    }
    std::vector<Clique> cells = P[0];
    std::sort(cells.begin(), cells.end());
    for (const Clique& c : cells)
      if (static_cast<size_t>(c.size()) != s || !host.is_clique(c))
        throw InternalError("lifted cell is not an s-clique");
    res.H.push_back(std::move(cells));
  }
  res.ok = true;
  return res;
}

}  // namespace kfactor
