// Brute-force reference implementations. They only read adjacency through a
// plain matrix and share no code with the library's search routines.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "kfactor/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<char>>;

inline Matrix matrix_of(const kfactor::Graph& g) {
  Matrix a(g.n(), std::vector<char>(g.n(), 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

inline bool is_clique(const Matrix& a, const std::vector<int>& vs) {
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (!a[vs[i]][vs[j]]) return false;
  return true;
}

// Calls fn on every k-subset of [0, n) in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline std::vector<std::vector<int>> cliques(const Matrix& a, int k) {
  std::vector<std::vector<int>> out;
  for_each_subset(static_cast<int>(a.size()), k, [&](const std::vector<int>& s) {
    if (is_clique(a, s)) out.push_back(s);
  });
  return out;
}

// Number of partitions of V into r-cliques.
inline std::uint64_t count_factors(const Matrix& a, int r) {
  int n = static_cast<int>(a.size());
  if (n % r) return 0;
  std::vector<char> used(n, 0);
  std::function<std::uint64_t()> rec = [&]() -> std::uint64_t {
    int first = -1;
    for (int v = 0; v < n; ++v)
      if (!used[v]) {
        first = v;
        break;
      }
    if (first < 0) return 1;
    std::vector<int> rest;
    for (int v = first + 1; v < n; ++v)
      if (!used[v] && a[first][v]) rest.push_back(v);
    std::uint64_t total = 0;
    for_each_subset(static_cast<int>(rest.size()), r - 1, [&](const std::vector<int>& idx) {
      std::vector<int> part{first};
      for (int i : idx) part.push_back(rest[i]);
      if (!is_clique(a, part)) return;
      for (int v : part) used[v] = 1;
      total += rec();
      for (int v : part) used[v] = 0;
    });
    return total;
  };
  return rec();
}

inline bool has_factor(const Matrix& a, int r) { return count_factors(a, r) > 0; }

// Checks a claimed factor: disjoint r-cliques covering every vertex.
inline bool valid_factor(const Matrix& a, int r, const std::vector<std::vector<int>>& parts) {
  std::vector<int> seen(a.size(), 0);
  for (const auto& p : parts) {
    if (static_cast<int>(p.size()) != r || !is_clique(a, p)) return false;
    for (int v : p)
      if (seen[v]++) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

// Induced embeddings by trying every injective map.
inline std::uint64_t induced_embeddings(const Matrix& f, const Matrix& h) {
  int k = static_cast<int>(f.size()), n = static_cast<int>(h.size());
  std::vector<int> img(k, -1);
  std::vector<char> used(n, 0);
  std::function<std::uint64_t(int)> rec = [&](int i) -> std::uint64_t {
    if (i == k) return 1;
    std::uint64_t total = 0;
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = (f[i][j] != 0) == (h[x][img[j]] != 0);
      if (!ok) continue;
      used[x] = 1;
      img[i] = x;
      total += rec(i + 1);
      used[x] = 0;
    }
    return total;
  };
  return rec(0);
}

inline long long edges_in(const Matrix& a, const std::vector<int>& s) {
  long long e = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) e += a[s[i]][s[j]];
  return e;
}

// Minimum number of edges spanned by a k-set.
inline long long min_k_edges(const Matrix& a, int k) {
  long long best = -1;
  for_each_subset(static_cast<int>(a.size()), k, [&](const std::vector<int>& s) {
    long long e = edges_in(a, s);
    if (best < 0 || e < best) best = e;
  });
  return best;
}

// Walk u = w0 .. wl = v, l even and at most max_len, no edge used twice.
inline bool valid_even_trail(const Matrix& a, const std::vector<int>& w, int u, int v, int max_len) {
  if (w.empty() || w.front() != u || w.back() != v) return false;
  int len = static_cast<int>(w.size()) - 1;
  if (len % 2 || len > max_len) return false;
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < len; ++i) {
    if (!a[w[i]][w[i + 1]]) return false;
    if (!used.insert({std::min(w[i], w[i + 1]), std::max(w[i], w[i + 1])}).second) return false;
  }
  return true;
}

// Maximum matching size by augmenting over all vertex subsets (n <= 20).
inline int max_matching(const Matrix& a) {
  int n = static_cast<int>(a.size());
  std::vector<int> memo(1u << n, -1);
  std::function<int(unsigned)> rec = [&](unsigned free) -> int {
    if (free == 0) return 0;
    if (memo[free] >= 0) return memo[free];
    int v = __builtin_ctz(free);
    unsigned rest = free & ~(1u << v);
    int best = rec(rest);
    for (int u = v + 1; u < n; ++u)
      if ((rest >> u & 1) && a[v][u]) best = std::max(best, 1 + rec(rest & ~(1u << u)));
    return memo[free] = best;
  };
  return rec((1u << n) - 1);
}

// Erdos-Renyi graph from std::mt19937_64, independent of the library RNG.
inline kfactor::Graph gnp(int n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  kfactor::GraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(gen) < p) b.add_edge(i, j);
  return std::move(b).build();
}

}  // namespace oracle
