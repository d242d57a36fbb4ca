#include "kfactor/harvest.hpp"

#include <algorithm>
#include <cmath>

#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kAuto: return "auto";
    case Regime::kSmallG: return "small-g";
    case Regime::kGreedy: return "greedy";
    case Regime::kMainWF: return "main-WF";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  if (s == "auto") return Regime::kAuto;
  if (s == "small-g") return Regime::kSmallG;
  if (s == "greedy") return Regime::kGreedy;
  if (s == "main-WF") return Regime::kMainWF;
  throw ArgumentError("unknown regime '" + s + "'");
}

std::optional<Clique> find_clique_in(const Graph& g, const VertexSet& cand, int k) {
  if (k <= 0) return Clique{};
  Clique cur;
  auto rec = [&](auto&& self, const VertexSet& c) -> bool {
    if (static_cast<int>(cur.size()) == k) return true;
    if (c.count() < k - static_cast<int>(cur.size())) return false;
    for (int v : c) {
      VertexSet next = c & g.neighbours(v);
      next.erase_upto(v);
      cur.push_back(v);
      if (self(self, next)) return true;
      cur.pop_back();
    }
    return false;
  };
  if (rec(rec, cand)) return cur;
  return std::nullopt;
}

std::vector<Edge> thin_to_g_prime(const Graph& host, const std::vector<int>& A,
                                  const std::vector<int>& B, long long d0) {
  VertexSet bs = VertexSet::of(host.n(), B);
  std::vector<Edge> out;
  for (int a : A) {
    std::vector<int> nb = (host.neighbours(a) & bs).to_vector();
    size_t from = nb.size() > static_cast<size_t>(d0) ? nb.size() - static_cast<size_t>(d0) : 0;
    for (size_t i = from; i < nb.size(); ++i) out.emplace_back(a, nb[i]);
  }
  return out;
}

namespace {

// Pairs of members sharing at least one vertex, and exactly one.
std::pair<long long, long long> intersecting_pairs(const std::vector<Clique>& fam, int n,
                                                   std::vector<char>* clash_with_smaller) {
  std::vector<std::vector<int>> bucket(n);
  for (size_t i = 0; i < fam.size(); ++i)
    for (int v : fam[i]) bucket[v].push_back(static_cast<int>(i));
  std::vector<int> shared(fam.size(), 0);
  std::vector<int> touched;
  long long any = 0, one = 0;
  if (clash_with_smaller) clash_with_smaller->assign(fam.size(), 0);
  for (size_t i = 0; i < fam.size(); ++i) {
    touched.clear();
    for (int v : fam[i])
      for (int j : bucket[v]) {
        if (j == static_cast<int>(i)) continue;
        if (shared[j]++ == 0) touched.push_back(j);
      }
    for (int j : touched) {
      if (j > static_cast<int>(i)) {
        ++any;
        if (shared[j] == 1) ++one;
      } else if (clash_with_smaller) {
        (*clash_with_smaller)[i] = 1;
      }
      shared[j] = 0;
    }
  }
  return {any, one};
}

long long binom_capped(long long n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r > static_cast<long double>(cap) ? cap + 1 : static_cast<long long>(std::llround(r));
}

}  // namespace

CandidateBook candidate_book(const Graph& host, const std::vector<int>& A,
                             const std::vector<int>& B, const std::vector<int>& D, int s,
                             long long g, long long cap) {
  int n = host.n();
  VertexSet seen(n);
  for (const auto* part : {&A, &B, &D})
    for (int v : *part) {
      if (v < 0 || v >= n || seen.contains(v)) throw ArgumentError("A, B, D must be disjoint");
      seen.insert(v);
    }
  if (static_cast<int>(seen.count()) != n) throw ArgumentError("A, B, D must cover V");
  if (s < 1) throw ArgumentError("s must be positive");
  CandidateBook book;
  book.g_prime = thin_to_g_prime(host, A, B, (g + 4) / 5);
  long long total = static_cast<long long>(book.g_prime.size()) *
                    binom_capped(static_cast<long long>(D.size()), s - 1, cap);
  if (total > cap)
    throw SizeLimitError("candidate family exceeds " + std::to_string(cap) +
                         " sets; use a smaller n");
  std::vector<int> deg(n, 0);
  for (auto [a, b] : book.g_prime) {
    ++deg[a];
    ++deg[b];
  }
  for (int v = 0; v < n; ++v) book.cherries += static_cast<long long>(deg[v]) * (deg[v] - 1);
  for (int a : A) book.cherries_a_centre += static_cast<long long>(deg[a]) * (deg[a] - 1);
  std::vector<int> dsorted = D;
  std::sort(dsorted.begin(), dsorted.end());
  std::vector<int> pick;
  for (auto [a, b] : book.g_prime) {
    auto rec = [&](auto&& self, size_t start) -> void {
      if (static_cast<int>(pick.size()) == s - 1) {
        Clique k = pick;
        k.push_back(a);
        k.push_back(b);
        std::sort(k.begin(), k.end());
        book.W.push_back(std::move(k));
        return;
      }
      for (size_t i = start; i < dsorted.size(); ++i) {
        pick.push_back(dsorted[i]);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::sort(book.W.begin(), book.W.end());
  book.F1_pairs = intersecting_pairs(book.W, n, nullptr).second;
  return book;
}

HarvestResult harvest(const HarvestInstance& inst) {
  const Graph& host = inst.host;
  int n = host.n();
  int s = inst.s;
  if (s < 1) throw ArgumentError("s must be positive");
  if (inst.g < 0 || inst.g > n) throw ArgumentError("g must lie in [0, n]");
  if (!(inst.p >= 0.0 && inst.p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (n > 0 && host.min_degree() < inst.g)
    throw RejectedInput("minimum degree " + std::to_string(host.min_degree()) + " is below g = " +
                        std::to_string(inst.g));
  HarvestResult res;
  Graph rnd = random_edges(n, inst.p, inst.plan, 0);
  res.random_edges = rnd.m();
  Graph pert = overlay(host, rnd);
  VertexSet used(n);
  auto take = [&](const Clique& k) {
    for (int v : k) used.insert(v);
    res.copies.push_back(k);
  };
  auto finish = [&](long long need) {
    res.ok = static_cast<long long>(res.copies.size()) >= inst.g;
    if (!res.ok)
      res.reason = "found " + std::to_string(res.copies.size()) + " of " + std::to_string(need) +
                   " copies";
    for (Clique& k : res.copies) std::sort(k.begin(), k.end());
    VertexSet chk(n);
    for (const Clique& k : res.copies) {
      if (static_cast<int>(k.size()) != s + 1 || !pert.is_clique(k))
        throw InternalError("harvested part is not a clique of the perturbed graph");
      for (int v : k) {
        if (chk.contains(v)) throw InternalError("harvested parts intersect");
        chk.insert(v);
      }
    }
    return res;
  };

  double ln = std::log(std::max(2, n));
  Regime regime = inst.regime;
  if (regime == Regime::kAuto && static_cast<double>(inst.g) < ln * ln) regime = Regime::kSmallG;

  if (regime == Regime::kSmallG) {
    res.regime = regime;
    res.target = inst.g;
    for (int v = 0; v < n && static_cast<long long>(res.copies.size()) < inst.g; ++v) {
      if (used.contains(v)) continue;
      VertexSet cand = rnd.neighbours(v) - used;
      if (auto k = find_clique_in(rnd, cand, s)) {
        k->push_back(v);
        take(*k);
      }
    }
    return finish(inst.g);
  }

  // High-degree peel.
  for (int x = 0; x < n; ++x) {
    if (static_cast<double>(host.degree(x)) <= inst.delta * n / 2.0 || used.contains(x)) continue;
    VertexSet cand = host.neighbours(x) - used;
    cand.erase(x);
    if (auto k = find_clique_in(pert, cand, s)) {
      k->push_back(x);
      take(*k);
      ++res.peeled;
    }
    if (static_cast<long long>(res.copies.size()) >= inst.g) return finish(inst.g);
  }
  res.target = inst.g - res.peeled;
  std::vector<int> rest = used.complement().to_vector();
  int n1 = static_cast<int>(rest.size());
  long long g1 = n1 > 0 ? host.n() : 0;
  for (int v : rest) g1 = std::min<long long>(g1, (host.neighbours(v) - used).count());
  res.working_g = g1;
  double ln1 = std::log(std::max(2, n1));
  if (regime == Regime::kAuto)
    regime = static_cast<double>(res.target) >= n1 / (10.0 * s * ln1) ? Regime::kGreedy
                                                                         : Regime::kMainWF;
  res.regime = regime;

  if (regime == Regime::kGreedy) {
    std::vector<char> dead(n, 0);
    while (static_cast<long long>(res.copies.size()) < inst.g) {
      int best = -1;
      long long bd = -1;
      for (int v : rest) {
        if (used.contains(v) || dead[v]) continue;
        long long d = (host.neighbours(v) - used).count();
        if (d > bd) {
          bd = d;
          best = v;
        }
      }
      if (best < 0) break;
      VertexSet cand = host.neighbours(best) - used;
      if (auto k = find_clique_in(pert, cand, s)) {
        k->push_back(best);
        take(*k);
      } else {
        dead[best] = 1;
      }
    }
    return finish(inst.g);
  }

  // A/B/D split of the remaining vertices.
  long long d0 = (g1 + 4) / 5;
  res.d0 = d0;
  int third = n1 / 3;
  std::vector<int> A, B, D;
  VertexSet bs(n);
  auto deficient = [&](int a) {
    return (host.neighbours(a) & bs).count() < d0;
  };
  bool good = false;
  for (int attempt = 0; attempt < std::max(1, inst.partition_retries) && !good; ++attempt) {
    std::vector<int> perm = rest;
    Rng rng(derive_seed(inst.plan.seed ^ 0x5b0d5b0dULL, static_cast<std::uint64_t>(attempt)));
    rng.shuffle(perm);
    A.assign(perm.begin(), perm.begin() + third);
    B.assign(perm.begin() + third, perm.begin() + 2 * third);
    D.assign(perm.begin() + 2 * third, perm.end());
    bs = VertexSet::of(n, B);
    res.partition_attempts = attempt + 1;
    good = std::none_of(A.begin(), A.end(), deficient);
  }
  if (!good) {
    // Swap deficient A-vertices with D-vertices that have enough B-neighbours.
    std::sort(D.begin(), D.end());
    for (int& a : A) {
      if (!deficient(a)) continue;
      auto it = std::find_if(D.begin(), D.end(), [&](int d) { return !deficient(d); });
      if (it == D.end()) {
        res.reason = "no A/B/D split gives every A-vertex " + std::to_string(d0) +
                     " B-neighbours";
        return finish(inst.g);
      }
      std::swap(a, *it);
      ++res.partition_swaps;
    }
  }
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  std::sort(D.begin(), D.end());
  res.a = static_cast<long long>(A.size());
  res.b = static_cast<long long>(B.size());
  res.d = static_cast<long long>(D.size());

  std::vector<Edge> gp = thin_to_g_prime(host, A, B, d0);
  res.W = static_cast<long long>(gp.size()) *
          binom_capped(static_cast<long long>(D.size()), s - 1, inst.w_cap);
  if (res.W > inst.w_cap)
    throw SizeLimitError("candidate family exceeds " + std::to_string(inst.w_cap) +
                         " sets; use a smaller n");
  VertexSet ds = VertexSet::of(n, D);
  std::vector<Clique> wt;
  for (auto [a, b] : gp) {
    VertexSet common = rnd.neighbours(a) & rnd.neighbours(b) & ds;
    Clique cur;
    auto rec = [&](auto&& self, const VertexSet& c) -> void {
      if (static_cast<int>(cur.size()) == s - 1) {
        Clique k = cur;
        k.push_back(a);
        k.push_back(b);
        std::sort(k.begin(), k.end());
        wt.push_back(std::move(k));
        return;
      }
      for (int v : c) {
        VertexSet next = c & rnd.neighbours(v);
        next.erase_upto(v);
        cur.push_back(v);
        self(self, next);
        cur.pop_back();
      }
    };
    rec(rec, common);
  }
  std::sort(wt.begin(), wt.end());
  res.W_tilde = static_cast<long long>(wt.size());
  std::vector<char> clash;
  auto [any, one] = intersecting_pairs(wt, n, &clash);
  res.F_tilde = any;
  res.F1_tilde = one;
  for (size_t i = 0; i < wt.size(); ++i)
    if (!clash[i] && static_cast<long long>(res.copies.size()) < inst.g) take(wt[i]);
  for (size_t i = 0; i < wt.size(); ++i)
    if (!clash[i]) ++res.survivors;
  return finish(inst.g);
}

}  // namespace kfactor
