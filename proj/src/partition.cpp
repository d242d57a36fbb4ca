#include "kfactor/partition.hpp"

#include <algorithm>
#include <cmath>

#include "kfactor/constructions.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

namespace {

double binom_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SparseSet exhaustive(const Graph& g, int k) {
  int n = g.n();
  SparseSet best;
  best.edges = -1;
  best.exact = true;
  std::vector<int> cur;
  VertexSet chosen(n);
  auto rec = [&](auto&& self, int start, long long e) -> void {
    if (best.edges >= 0 && e >= best.edges) return;
    if (static_cast<int>(cur.size()) == k) {
      best.edges = e;
      best.set = cur;
      return;
    }
    int left = k - static_cast<int>(cur.size());
    for (int v = start; v <= n - left; ++v) {
      long long add = g.neighbours(v).intersection_count(chosen);
      cur.push_back(v);
      chosen.insert(v);
      self(self, v + 1, e + add);
      chosen.erase(v);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return best;
}

SparseSet local_search(const Graph& g, int k, const SparseSearchOptions& opt) {
  int n = g.n();
  SparseSet best;
  best.edges = -1;
  for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(restart)));
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[v] = v;
    rng.shuffle(perm);
    std::vector<char> in(n, 0);
    for (int i = 0; i < k; ++i) in[perm[i]] = 1;
    std::vector<int> d(n, 0);
    long long e = 0;
    for (int v = 0; v < n; ++v)
      for (int u : g.neighbours(v))
        if (in[u]) ++d[v];
    for (int v = 0; v < n; ++v)
      if (in[v]) e += d[v];
    e /= 2;
    auto apply = [&](int u, int w) {
      e += d[w] - d[u] - (g.adjacent(u, w) ? 1 : 0);
      in[u] = 0;
      in[w] = 1;
      for (int x : g.neighbours(u)) --d[x];
      for (int x : g.neighbours(w)) ++d[x];
    };
    for (;;) {
      // The member with most internal edges against the outsider with fewest.
      int u = -1, w = -1;
      for (int v = 0; v < n; ++v) {
        if (in[v] && (u < 0 || d[v] > d[u])) u = v;
        if (!in[v] && (w < 0 || d[v] < d[w])) w = v;
      }
      if (u < 0 || w < 0) break;
      int gain = d[u] - d[w] + (g.adjacent(u, w) ? 1 : 0);
      if (gain > 0) {
        apply(u, w);
        continue;
      }
      int bu = -1, bw = -1, bg = 0;
      for (int a = 0; a < n; ++a) {
        if (!in[a]) continue;
        for (int b = 0; b < n; ++b) {
          if (in[b]) continue;
          int gn = d[a] - d[b] + (g.adjacent(a, b) ? 1 : 0);
          if (gn > bg) {
            bg = gn;
            bu = a;
            bw = b;
          }
        }
      }
      if (bg <= 0) break;
      apply(bu, bw);
    }
    std::vector<int> set;
    for (int v = 0; v < n; ++v)
      if (in[v]) set.push_back(v);
    if (best.edges < 0 || e < best.edges || (e == best.edges && set < best.set)) {
      best.edges = e;
      best.set = std::move(set);
    }
  }
  best.exact = false;
  return best;
}

}  // namespace

SparseSet find_sparse_set(const Graph& g, int k, const SparseSearchOptions& opt) {
  if (k < 0 || k > g.n()) throw ArgumentError("set size must lie in [0, n]");
  bool small = binom_double(g.n(), k) <= opt.exhaustive_limit;
  SparseMode mode = opt.mode;
  if (mode == SparseMode::kAuto) mode = small ? SparseMode::kExhaustive : SparseMode::kLocalSearch;
  if (k == 0 || k == g.n()) mode = SparseMode::kExhaustive;
  SparseSet s = mode == SparseMode::kExhaustive ? exhaustive(g, k) : local_search(g, k, opt);
  return s;
}

void check_partition_parameters(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(8.0 * gamma < beta && beta < (1.0 - alpha) / 5.0))
    throw ArgumentError("need 8 gamma < beta < (1 - alpha) / 5");
}

CaseACheck verify_case_a(const Graph& g, const std::vector<int>& a1, const std::vector<int>& a2,
                         double alpha, double beta, double gamma) {
  int n = g.n();
  VertexSet s1(n), s2(n);
  for (int v : a1) {
    if (v < 0 || v >= n || s1.contains(v)) throw ArgumentError("A1 is not a vertex set");
    s1.insert(v);
  }
  for (int v : a2) {
    if (v < 0 || v >= n || s2.contains(v) || s1.contains(v))
      throw ArgumentError("A1, A2 do not partition V");
    s2.insert(v);
  }
  if (s1.count() + s2.count() != n) throw ArgumentError("A1, A2 do not partition V");
  CaseACheck c;
  double bn = beta * n;
  c.slack_i = 1e300;
  for (int x : s1) {
    double sl = 4.0 * bn - static_cast<double>(s2.count() - g.neighbours(x).intersection_count(s2));
    if (sl < c.slack_i) {
      c.slack_i = sl;
      c.worst_i = x;
    }
  }
  c.slack_ii = 1e300;
  for (int x : s2) {
    double sl = static_cast<double>(g.neighbours(x).intersection_count(s1)) - bn;
    if (sl < c.slack_ii) {
      c.slack_ii = sl;
      c.worst_ii = x;
    }
  }
  if (s1.empty()) c.slack_i = 0.0;
  if (s2.empty()) c.slack_ii = 0.0;
  long long cross = 0;
  for (int x : s1) cross += g.neighbours(x).intersection_count(s2);
  c.missing_cross = static_cast<long long>(s1.count()) * s2.count() - cross;
  c.slack_iii = gamma * n * n - static_cast<double>(c.missing_cross);
  c.slack_size = gamma * n - std::abs(static_cast<double>(s1.count()) - (1.0 - alpha) * n);
  const double eps = 1e-9;
  c.i_ok = c.slack_i >= -eps;
  c.ii_ok = c.slack_ii >= -eps;
  c.iii_ok = c.slack_iii >= -eps;
  c.size_ok = c.slack_size >= -eps;
  c.ok = c.i_ok && c.ii_ok && c.iii_ok && c.size_ok;
  return c;
}

Classification refine_partition(const Graph& g, const std::vector<int>& X, double alpha,
                                double beta, double gamma) {
  check_partition_parameters(alpha, beta, gamma);
  int n = g.n();
  long long k = round_half_up((1.0 - alpha) * n);
  VertexSet xs = VertexSet::of(n, X);
  if (xs.count() != k || static_cast<long long>(X.size()) != k)
    throw ArgumentError("|X| must equal round((1 - alpha) n) = " + std::to_string(k));
  long long ex = g.edges_within(xs);
  if (static_cast<double>(ex) >= gamma * gamma * n * n)
    throw RejectedInput("e(X) = " + std::to_string(ex) + " is not below gamma^2 n^2");

  Classification c;
  c.alpha = alpha;
  c.beta = beta;
  c.gamma = gamma;
  VertexSet ys = xs.complement();
  VertexSet u(n);
  for (int x : xs)
    if (static_cast<double>(ys.count() - g.neighbours(x).intersection_count(ys)) > 2.0 * beta * n)
      u.insert(x);
  c.U = u.to_vector();
  if (static_cast<double>(u.count()) >= gamma * n / 8.0) {
    c.verdict = Case::kB;
    c.witness = X;
    c.witness_edges = ex;
    c.reason = "|U| = " + std::to_string(u.count()) + " is not below gamma n / 8";
    return c;
  }
  VertexSet x1 = xs - u;
  VertexSet y1 = ys | u;
  VertexSet w(n);
  for (int y : y1)
    if (static_cast<double>(g.neighbours(y).intersection_count(x1)) < beta * n) w.insert(y);
  c.W = w.to_vector();
  VertexSet x2 = x1 | w;
  VertexSet y2 = y1 - w;
  c.a1 = x2.to_vector();
  c.a2 = y2.to_vector();
  c.check = verify_case_a(g, c.a1, c.a2, alpha, beta, gamma);
  if (!c.check.ok) {
    std::string which = !c.check.i_ok    ? "(i)"
                        : !c.check.ii_ok ? "(ii)"
                        : !c.check.iii_ok ? "(iii)"
                                          : "size window";
    throw InternalError("refined partition fails condition " + which);
  }
  c.verdict = Case::kA;
  return c;
}

Classification classify(const Graph& g, double alpha, double beta, double gamma,
                        const SparseSearchOptions& opt) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  int n = g.n();
  auto k = static_cast<int>(round_half_up((1.0 - alpha) * n));
  SparseSet s = find_sparse_set(g, k, opt);
  if (static_cast<double>(s.edges) < gamma * gamma * n * n)
    return refine_partition(g, s.set, alpha, beta, gamma);
  Classification c;
  c.verdict = Case::kB;
  c.alpha = alpha;
  c.beta = beta;
  c.gamma = gamma;
  c.witness = s.set;
  c.witness_edges = s.edges;
  c.exact = s.exact;
  c.reason = "no set of size " + std::to_string(k) + " below gamma^2 n^2 edges";
  return c;
}

}  // namespace kfactor
