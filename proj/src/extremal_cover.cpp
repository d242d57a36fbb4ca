#include "kfactor/extremal_cover.hpp"

#include <algorithm>
#include <cmath>

#include "kfactor/cliques.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

namespace {

bool fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

void check_parameters(int r, int s, double delta) {
  if (r < 2 || s < 1 || s >= r) throw ArgumentError("need 1 <= s < r");
  if (2 * s < r) throw ArgumentError("need s >= r - s");
  if (!(delta >= 0.0) || delta > 1.0) throw DomainError("delta must lie in [0, 1]");
}

void check_min_degree(const Graph& g, int r, int s, double delta) {
  double need = (1.0 - static_cast<double>(s) / r - delta) * g.n();
  if (g.n() > 0 && g.min_degree() + 1e-9 < need)
    throw RejectedInput("minimum degree " + std::to_string(g.min_degree()) +
                        " below (1 - s/r - delta) n = " + std::to_string(need));
}

// Working state of the local search.
class Search {
 public:
  Search(const Graph& g, int s, int t) : g_(g), s_(s), t_(t), singles_(g.n()) {
    for (int v = 0; v < g.n(); ++v) singles_.insert(v);
  }

  bool move1() {
    for (int x : singles_) {
      VertexSet nb = g_.neighbours(x) & singles_;
      nb.erase_upto(x);
      int y = nb.first();
      if (y < 0) continue;
      singles_.erase(x);
      singles_.erase(y);
      edges_.emplace_back(x, y);
      return true;
    }
    return false;
  }

  bool move3() {
    for (int x : singles_) {
      for (size_t qi = 0; qi < qs_.size(); ++qi) {
        const QCopy& q = qs_[qi];
        for (size_t j = 0; j < q.L.size(); ++j) {
          int u = q.L[j];
          if (!g_.adjacent(x, u)) continue;
          QCopy old = q;
          erase_q(qi);
          singles_.erase(x);
          edges_.emplace_back(x, u);
          for (int i = 0; i < t_; ++i) edges_.emplace_back(old.M[i], old.N[i]);
          for (int l : old.L)
            if (l != u) singles_.insert(l);
          return true;
        }
        if (s_ == t_) continue;
        for (int i = 0; i < t_; ++i) {
          if (!g_.adjacent(x, q.N[i])) continue;
          QCopy old = q;
          erase_q(qi);
          singles_.erase(x);
          int l0 = old.L[0];
          edges_.emplace_back(x, old.N[i]);
          edges_.emplace_back(old.M[i], l0);
          for (int j = 0; j < t_; ++j)
            if (j != i) edges_.emplace_back(old.M[j], old.N[j]);
          for (size_t j = 1; j < old.L.size(); ++j) singles_.insert(old.L[j]);
          return true;
        }
      }
    }
    return false;
  }

  bool move2() {
    if (static_cast<int>(edges_.size()) < t_) return false;
    int need = s_ - t_;
    std::vector<int> chosen;      // edge indices
    std::vector<int> m_end;       // chosen M endpoints
    std::vector<char> used(g_.n(), 0);
    VertexSet found_common;
    auto rec = [&](auto&& self, size_t start, const VertexSet& common) -> bool {
      if (static_cast<int>(chosen.size()) == t_) {
        found_common = common;
        return true;
      }
      for (size_t e = start; e < edges_.size(); ++e) {
        auto [a, b] = edges_[e];
        for (int side = 0; side < 2; ++side) {
          int m = side == 0 ? a : b;
          VertexSet next = common & g_.neighbours(m);
          if (next.count() < need) continue;
          chosen.push_back(static_cast<int>(e));
          m_end.push_back(m);
          if (self(self, e + 1, next)) return true;
          chosen.pop_back();
          m_end.pop_back();
        }
      }
      return false;
    };
    if (!rec(rec, 0, singles_)) return false;
    QCopy q;
    for (int v : found_common) {
      if (static_cast<int>(q.L.size()) == need) break;
      q.L.push_back(v);
    }
    for (size_t i = 0; i < chosen.size(); ++i) {
      auto [a, b] = edges_[chosen[i]];
      q.M.push_back(m_end[i]);
      q.N.push_back(m_end[i] == a ? b : a);
    }
    std::vector<int> idx = chosen;
    std::sort(idx.rbegin(), idx.rend());
    for (int e : idx) edges_.erase(edges_.begin() + e);
    for (int v : q.L) singles_.erase(v);
    qs_.push_back(std::move(q));
    return true;
  }

  // Two singletons of largest degree, ties by id.
  std::pair<int, int> top_pair() const {
    int x = -1, y = -1;
    for (int v : singles_) {
      if (x < 0 || g_.degree(v) > g_.degree(x)) {
        y = x;
        x = v;
      } else if (y < 0 || g_.degree(v) > g_.degree(y)) {
        y = v;
      }
    }
    if (x > y && y >= 0 && g_.degree(x) == g_.degree(y)) std::swap(x, y);
    return {x, y};
  }

  // Union of L and N parts over the Q copies whose M part lies in N(x) ∩ N(y).
  VertexSet candidate_set(int x, int y) const {
    VertexSet both = g_.neighbours(x) & g_.neighbours(y);
    VertexSet z(g_.n());
    for (const QCopy& q : qs_) {
      bool ok = std::all_of(q.M.begin(), q.M.end(), [&](int m) { return both.contains(m); });
      if (!ok) continue;
      for (int v : q.L) z.insert(v);
      for (int v : q.N) z.insert(v);
    }
    return z;
  }

  bool move4() {
    if (singles_.count() < 2) return false;
    auto [x, y] = top_pair();
    VertexSet z = candidate_set(x, y);
    for (int a : z) {
      VertexSet nb = g_.neighbours(a) & z;
      nb.erase_upto(a);
      int b = nb.first();
      if (b < 0) continue;
      replace_in_q(a, x);
      replace_in_q(b, y);
      singles_.erase(x);
      singles_.erase(y);
      edges_.emplace_back(a, b);
      return true;
    }
    return false;
  }

  MixedFactor factor() const {
    MixedFactor f;
    f.s = s_;
    f.t = t_;
    f.singletons = singles_.to_vector();
    f.edges = edges_;
    f.qs = qs_;
    return f;
  }
  std::pair<long long, long long> index() const {
    return {static_cast<long long>(edges_.size()) + static_cast<long long>(t_) * qs_.size(),
            static_cast<long long>(qs_.size())};
  }
  const VertexSet& singles() const { return singles_; }

 private:
  void erase_q(size_t qi) { qs_.erase(qs_.begin() + static_cast<long>(qi)); }
  void replace_in_q(int from, int to) {
    for (QCopy& q : qs_) {
      for (int& v : q.L)
        if (v == from) v = to;
      for (int& v : q.N)
        if (v == from) v = to;
    }
  }

  const Graph& g_;
  int s_, t_;
  VertexSet singles_;
  std::vector<Edge> edges_;
  std::vector<QCopy> qs_;
};

}  // namespace

bool verify_mixed_factor(const Graph& g, const MixedFactor& f, std::string* why,
                         const VertexSet* domain) {
  VertexSet seen(g.n());
  auto take = [&](int v) {
    if (v < 0 || v >= g.n()) return fail(why, "vertex out of range");
    if (seen.contains(v)) return fail(why, "vertex " + std::to_string(v) + " used twice");
    seen.insert(v);
    return true;
  };
  for (int v : f.singletons)
    if (!take(v)) return false;
  for (auto [a, b] : f.edges) {
    if (!take(a) || !take(b)) return false;
    if (!g.adjacent(a, b)) return fail(why, "missing edge in K_2 part");
  }
  for (const QCopy& q : f.qs) {
    if (static_cast<int>(q.L.size()) != f.s - f.t || static_cast<int>(q.M.size()) != f.t ||
        static_cast<int>(q.N.size()) != f.t)
      return fail(why, "Q copy has wrong part sizes");
    for (int v : q.L)
      if (!take(v)) return false;
    for (int i = 0; i < f.t; ++i) {
      if (!take(q.M[i]) || !take(q.N[i])) return false;
      if (!g.adjacent(q.M[i], q.N[i])) return fail(why, "missing M-N matching edge");
      for (int l : q.L)
        if (!g.adjacent(l, q.M[i])) return fail(why, "missing L-M edge");
    }
  }
  VertexSet want = domain ? *domain : VertexSet::full(g.n());
  if (!(seen == want)) return fail(why, "parts do not span the vertex set");
  return true;
}

CoverResult cover_or_sparse(const Graph& g, int r, int s, double delta, const CoverOptions& opt) {
  check_parameters(r, s, delta);
  if (opt.check_min_degree) check_min_degree(g, r, s, delta);
  int t = r - s;
  CoverResult res;
  res.C = opt.C >= 0 ? opt.C : 2 * (s + t) * (s + t);
  Search search(g, s, t);
  res.index_trace.push_back(search.index());
  for (;;) {
    const char* name = nullptr;
    if (search.move1()) name = "M1";
    else if (search.move3()) name = "M3";
    else if (search.move2()) name = "M2";
    else if (search.move4()) name = "M4";
    if (!name) break;
    ++res.moves;
    ++res.move_counts[name];
    auto idx = search.index();
    if (!(idx > res.index_trace.back()))
      throw InternalError(std::string("move ") + name + " did not increase the index");
    res.index_trace.push_back(idx);
  }
  res.factor = search.factor();
  std::string why;
  if (!verify_mixed_factor(g, res.factor, &why)) throw InternalError("local search: " + why);
  if (static_cast<int>(res.factor.singletons.size()) <= res.C) {
    res.covered = true;
    return res;
  }
  auto [x, y] = search.top_pair();
  res.x = x;
  res.y = y;
  VertexSet z = search.candidate_set(x, y);
  res.sparse = z.to_vector();
  res.sparse_edges = g.edges_within(z);
  return res;
}

long long rooted_clique_copies(const Graph& g, int v, int g_order) {
  if (g_order < 1) throw ArgumentError("clique order must be positive");
  long long fact = 1;
  for (int i = 2; i < g_order; ++i) fact *= i;
  if (g_order == 1) return 1;
  if (g_order == 2) return g.degree(v);
  return fact * static_cast<long long>(
                    cliques_through(g, v, g_order, VertexSet::full(g.n())).size());
}

AbsorberCheck is_absorber(const Graph& g, const AbsorberFamily& fam) {
  AbsorberCheck c;
  int n = g.n();
  c.threshold = fam.delta * fam.delta * n / (24.0 * fam.g * fam.g);
  VertexSet used(n);
  c.cliques_ok = true;
  for (const Clique& k : fam.cliques) {
    if (static_cast<int>(k.size()) != fam.g) c.cliques_ok = false;
    for (int v : k) {
      if (v < 0 || v >= n || used.contains(v)) {
        c.cliques_ok = false;
        continue;
      }
      used.insert(v);
    }
    if (c.cliques_ok && !g.is_clique(k)) c.cliques_ok = false;
  }
  c.covered = used.count();
  c.size_ok = c.covered <= fam.delta * n + 1e-9;
  c.min_slack = n > 0 ? 1e300 : 0.0;
  for (int x = 0; x < n; ++x) {
    long long meet = 0;
    for (const Clique& k : fam.cliques)
      if (std::any_of(k.begin(), k.end(), [&](int v) { return v >= 0 && v < n && g.adjacent(x, v); }))
        ++meet;
    double slack = static_cast<double>(meet) - c.threshold;
    if (slack < c.min_slack) {
      c.min_slack = slack;
      c.worst_vertex = x;
    }
  }
  c.neighbour_ok = c.min_slack >= -1e-9;
  c.ok = c.cliques_ok && c.size_ok && c.neighbour_ok;
  return c;
}

AbsorberBuild build_absorber(const Graph& g, double delta, int g_order, std::uint64_t seed,
                             int max_retries) {
  if (g_order < 2) throw ArgumentError("absorber clique order must be at least 2");
  if (!(delta > 0.0) || delta > 1.0) throw DomainError("delta must lie in (0, 1]");
  if (max_retries < 1) throw ArgumentError("max_retries must be positive");
  int n = g.n();
  double need = delta * std::pow(static_cast<double>(n), g_order - 1);

  std::vector<int> probe(n);
  for (int v = 0; v < n; ++v) probe[v] = v;
  if (n > 100) {
    Rng rng(derive_seed(seed, 2));
    rng.shuffle(probe);
    probe.resize(50);
    std::sort(probe.begin(), probe.end());
  }
  for (int v : probe) {
    long long copies = rooted_clique_copies(g, v, g_order);
    if (static_cast<double>(copies) < need)
      throw RejectedInput("vertex " + std::to_string(v) + " lies in " + std::to_string(copies) +
                          " labelled copies of K_" + std::to_string(g_order) + ", need " +
                          std::to_string(need));
  }

  // Per-vertex families, then their union.
  long long fact = 1;
  for (int i = 2; i < g_order; ++i) fact *= i;
  auto per_vertex = static_cast<size_t>(std::ceil(need / static_cast<double>(fact) - 1e-9));
  Rng pick(derive_seed(seed, 1));
  std::vector<Clique> pool;
  VertexSet all = VertexSet::full(n);
  for (int v = 0; v < n; ++v) {
    std::vector<Clique> through = cliques_through(g, v, g_order, all);
    if (through.size() > per_vertex) {
      for (size_t i = 0; i < per_vertex; ++i) {
        size_t j = i + pick.below(through.size() - i);
        std::swap(through[i], through[j]);
      }
      through.resize(per_vertex);
    }
    for (auto& k : through) pool.push_back(std::move(k));
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.empty()) throw ConstructionFailure("no cliques of the requested order");

  AbsorberBuild out;
  out.pool = static_cast<long long>(pool.size());
  out.rate = std::min(1.0, delta * n / (2.0 * g_order * static_cast<double>(pool.size())));
  std::string last;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(derive_seed(seed, 100 + static_cast<std::uint64_t>(attempt)));
    std::vector<char> marked(n, 0);
    AbsorberFamily fam{{}, delta, g_order};
    for (const Clique& k : pool) {
      if (!(rng.uniform01() < out.rate)) continue;
      bool clash = std::any_of(k.begin(), k.end(), [&](int v) { return marked[v] != 0; });
      for (int v : k) marked[v] = 1;
      if (!clash) fam.cliques.push_back(k);
    }
    AbsorberCheck chk = is_absorber(g, fam);
    out.attempts = attempt + 1;
    if (chk.ok) {
      out.family = std::move(fam);
      return out;
    }
    last = !chk.size_ok ? "size condition (covers " + std::to_string(chk.covered) + ")"
                        : "neighbour condition at vertex " + std::to_string(chk.worst_vertex);
  }
  throw ConstructionFailure("absorber retries exhausted; last failure: " + last);
}

ComposeResult compose_cover(const Graph& g, int r, int s, double delta, std::uint64_t seed,
                            const CoverOptions& opt) {
  check_parameters(r, s, delta);
  check_min_degree(g, r, s, delta);
  int n = g.n();
  ComposeResult res;
  res.g_order = 2 * s > r ? 2 : 3;
  double half = delta / 2.0;

  if (res.g_order == 3) {
    double need = half * static_cast<double>(n) * n;
    int worst = -1;
    long long worst_copies = 0;
    for (int v = 0; v < n; ++v) {
      long long c = 2 * g.edges_within(g.neighbours(v));
      if (worst < 0 || c < worst_copies) {
        worst = v;
        worst_copies = c;
      }
    }
    if (worst >= 0 && static_cast<double>(worst_copies) < need) {
      const VertexSet& nb = g.neighbours(worst);
      res.sparse = nb.to_vector();
      res.sparse_edges = g.edges_within(nb);
      res.sparse_source = "neighbourhood";
      return res;
    }
  }

  AbsorberBuild ab = build_absorber(g, half, res.g_order, seed);
  res.absorber = ab.family;
  VertexSet rest = VertexSet::full(n);
  for (const Clique& k : res.absorber.cliques)
    for (int v : k) rest.erase(v);
  std::vector<int> ids = rest.to_vector();
  Graph h = g.induced(ids);
  CoverOptions inner = opt;
  inner.check_min_degree = false;
  CoverResult cr = cover_or_sparse(h, r, s, half, inner);
  res.C = cr.C;
  auto map = [&](int v) { return ids[v]; };
  MixedFactor f;
  f.s = cr.factor.s;
  f.t = cr.factor.t;
  for (int v : cr.factor.singletons) f.singletons.push_back(map(v));
  for (auto [a, b] : cr.factor.edges) f.edges.emplace_back(map(a), map(b));
  for (const QCopy& q : cr.factor.qs) {
    QCopy m;
    for (int v : q.L) m.L.push_back(map(v));
    for (int v : q.M) m.M.push_back(map(v));
    for (int v : q.N) m.N.push_back(map(v));
    f.qs.push_back(std::move(m));
  }
  res.factor = std::move(f);
  std::string why;
  if (!verify_mixed_factor(g, res.factor, &why, &rest)) throw InternalError("compose: " + why);
  if (cr.covered) {
    res.covered = true;
    return res;
  }
  for (int v : cr.sparse) res.sparse.push_back(map(v));
  std::sort(res.sparse.begin(), res.sparse.end());
  res.sparse_edges = g.edges_within(VertexSet::of(n, res.sparse));
  res.sparse_source = "local-search";
  return res;
}

}  // namespace kfactor
