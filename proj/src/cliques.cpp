#include "kfactor/cliques.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>

#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

namespace {

// Smallest-last order; ties broken by lower id.
std::vector<int> degeneracy_order(const Graph& g) {
  int n = g.n();
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<char> gone(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
    gone[best] = 1;
    order.push_back(best);
    for (int u : g.neighbours(best))
      if (!gone[u]) --deg[u];
  }
  return order;
}

struct CliqueWalker {
  const std::vector<VertexSet>& fwd;
  int k;
  const std::function<bool(const std::vector<int>&)>& fn;
  std::vector<int> cur;
  bool stopped = false;

  void extend(const VertexSet& cand) {
    if (static_cast<int>(cur.size()) == k) {
      if (!fn(cur)) stopped = true;
      return;
    }
    if (cand.count() < k - static_cast<int>(cur.size())) return;
    for (int u : cand) {
      cur.push_back(u);
      extend(cand & fwd[u]);
      cur.pop_back();
      if (stopped) return;
    }
  }
};

std::vector<VertexSet> forward_rows(const Graph& g) {
  int n = g.n();
  auto order = degeneracy_order(g);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<VertexSet> fwd(n, VertexSet(n));
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbours(v))
      if (pos[u] > pos[v]) fwd[v].insert(u);
  return fwd;
}

long long count_rec(const std::vector<VertexSet>& fwd, const VertexSet& cand,
                    int need) {
  if (need == 1) return cand.count();
  long long t = 0;
  if (cand.count() < need) return 0;
  for (int u : cand) t += count_rec(fwd, cand & fwd[u], need - 1);
  return t;
}

}  // namespace

void visit_cliques(const Graph& g, int k,
                   const std::function<bool(const std::vector<int>&)>& fn) {
  if (k < 1 || k > g.n()) return;
  auto fwd = forward_rows(g);
  CliqueWalker w{fwd, k, fn, {}, false};
  for (int v = 0; v < g.n() && !w.stopped; ++v) {
    w.cur = {v};
    w.extend(fwd[v]);
  }
}

std::vector<Clique> enumerate_cliques(const Graph& g, int k) {
  std::vector<Clique> out;
  visit_cliques(g, k, [&](const std::vector<int>& c) {
    Clique s = c;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

long long count_cliques(const Graph& g, int k) {
  if (k < 1 || k > g.n()) return 0;
  if (k == 1) return g.n();
  auto fwd = forward_rows(g);
  long long t = 0;
  for (int v = 0; v < g.n(); ++v) t += count_rec(fwd, fwd[v], k - 1);
  return t;
}

std::vector<Clique> cliques_through(const Graph& g, int v, int k,
                                    const VertexSet& allowed) {
  std::vector<Clique> out;
  if (k < 1) return out;
  std::vector<int> cur{v};
  auto rec = [&](auto&& self, const VertexSet& cand) -> void {
    if (static_cast<int>(cur.size()) == k) {
      Clique c = cur;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    if (cand.count() < k - static_cast<int>(cur.size())) return;
    for (int u : cand) {
      VertexSet next = cand & g.neighbours(u);
      next.erase_upto(u);
      cur.push_back(u);
      self(self, next);
      cur.pop_back();
    }
  };
  VertexSet cand = g.neighbours(v) & allowed;
  cand.erase(v);
  rec(rec, cand);
  std::sort(out.begin(), out.end());
  return out;
}

int clique_number_at(const Graph& g, int v, const VertexSet& allowed, int cap) {
  int best = 1;
  auto rec = [&](auto&& self, const VertexSet& cand, int size) -> void {
    if (size > best) best = size;
    if (best >= cap) return;
    if (size + cand.count() <= best) return;
    for (int u : cand) {
      VertexSet next = cand & g.neighbours(u);
      next.erase_upto(u);
      self(self, next, size + 1);
      if (best >= cap) return;
    }
  };
  VertexSet cand = g.neighbours(v) & allowed;
  cand.erase(v);
  rec(rec, cand, 1);
  return std::min(best, cap);
}

std::uint64_t count_embeddings(const Graph& f, const Graph& h) {
  int k = f.n();
  if (k > kMaxPatternVertices)
    throw SizeLimitError("pattern has " + std::to_string(k) +
                         " vertices; the cap is " +
                         std::to_string(kMaxPatternVertices));
  if (k == 0) return 1;
  if (k > h.n()) return 0;
  int words = (h.n() + 63) / 64;
  std::vector<int> img(k);
  std::uint64_t total = 0;
  VertexSet all = VertexSet::full(h.n());
  auto rec = [&](auto&& self, int i) -> void {
    VertexSet cand = all;
    uint64_t* c = cand.data();
    for (int j = 0; j < i; ++j) {
      const uint64_t* r = h.neighbours(img[j]).data();
      if (f.adjacent(i, j))
        for (int w = 0; w < words; ++w) c[w] &= r[w];
      else
        for (int w = 0; w < words; ++w) c[w] &= ~r[w];
      cand.erase(img[j]);
    }
    if (i == k - 1) {
      total += cand.count();
      return;
    }
    for (int x : cand) {
      img[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return total;
}

namespace {

struct ClassTable {
  int v = 0;
  std::vector<GraphClass> classes;
  std::vector<std::uint16_t> class_of_code;
  std::array<std::array<int, 6>, 6> bit{};
};

std::uint32_t permuted_code(std::uint32_t code, const std::array<int, 6>& perm,
                            const ClassTable& t) {
  std::uint32_t out = 0;
  for (int i = 0; i < t.v; ++i)
    for (int j = i + 1; j < t.v; ++j)
      if (code >> t.bit[i][j] & 1) {
        int a = perm[i], b = perm[j];
        out |= 1u << t.bit[std::min(a, b)][std::max(a, b)];
      }
  return out;
}

ClassTable build_table(int v) {
  ClassTable t;
  t.v = v;
  int idx = 0;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) {
      t.bit[i][j] = idx;
      t.bit[j][i] = idx;
      ++idx;
    }
  std::uint32_t ncodes = 1u << idx;
  std::vector<std::array<int, 6>> perms;
  std::array<int, 6> p{};
  std::iota(p.begin(), p.begin() + v, 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.begin() + v));

  std::vector<std::uint32_t> canon(ncodes, 0xffffffffu);
  std::map<std::uint32_t, std::uint64_t> aut;
  for (std::uint32_t c = 0; c < ncodes; ++c) {
    if (canon[c] != 0xffffffffu) continue;
    std::uint32_t best = c;
    std::vector<std::uint32_t> orbit;
    std::uint64_t fixes = 0;
    for (const auto& q : perms) {
      std::uint32_t d = permuted_code(c, q, t);
      if (d == c) ++fixes;
      orbit.push_back(d);
      best = std::min(best, d);
    }
    for (auto d : orbit) canon[d] = best;
    aut[best] = fixes;
  }
  std::vector<std::uint32_t> reps;
  for (auto& [c, a] : aut) reps.push_back(c);
  std::sort(reps.begin(), reps.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::map<std::uint32_t, int> index;
  for (auto c : reps) {
    GraphBuilder b(v);
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j)
        if (c >> t.bit[i][j] & 1) b.add_edge(i, j);
    index[c] = static_cast<int>(t.classes.size());
    t.classes.push_back({std::move(b).build(), aut[c]});
  }
  t.class_of_code.resize(ncodes);
  for (std::uint32_t c = 0; c < ncodes; ++c)
    t.class_of_code[c] = static_cast<std::uint16_t>(index[canon[c]]);
  return t;
}

const ClassTable& table(int v) {
  if (v < 1 || v > kMaxPatternVertices)
    throw SizeLimitError("graph classes are tabulated for 1..6 vertices");
  static std::once_flag once[kMaxPatternVertices + 1];
  static ClassTable tables[kMaxPatternVertices + 1];
  std::call_once(once[v], [v] { tables[v] = build_table(v); });
  return tables[v];
}

}  // namespace

const std::vector<GraphClass>& graph_classes(int v) { return table(v).classes; }

int classify_graph(const Graph& g) {
  const auto& t = table(g.n());
  std::uint32_t code = 0;
  for (auto [a, b] : g.edges()) code |= 1u << t.bit[a][b];
  return t.class_of_code[code];
}

std::vector<std::uint64_t> embedding_census(const Graph& h, int v) {
  const auto& t = table(v);
  std::vector<std::uint64_t> copies(t.classes.size(), 0);
  if (v > h.n()) return copies;
  std::vector<int> chosen(v);
  auto rec = [&](auto&& self, int depth, int start, std::uint32_t code) -> void {
    if (depth == v) {
      ++copies[t.class_of_code[code]];
      return;
    }
    for (int x = start; x <= h.n() - (v - depth); ++x) {
      std::uint32_t c = code;
      const VertexSet& row = h.neighbours(x);
      for (int i = 0; i < depth; ++i)
        if (row.contains(chosen[i])) c |= 1u << t.bit[i][depth];
      chosen[depth] = x;
      self(self, depth + 1, x + 1, c);
    }
  };
  rec(rec, 0, 0, 0);
  for (size_t i = 0; i < copies.size(); ++i) copies[i] *= t.classes[i].automorphisms;
  return copies;
}

bool is_even_trail(const Graph& g, const std::vector<int>& w, int u, int v,
                   int max_len) {
  if (w.empty() || w.front() != u || w.back() != v) return false;
  int len = static_cast<int>(w.size()) - 1;
  if (len % 2 != 0 || len > max_len) return false;
  std::vector<Edge> used;
  for (int i = 0; i < len; ++i) {
    if (!g.adjacent(w[i], w[i + 1])) return false;
    Edge e{std::min(w[i], w[i + 1]), std::max(w[i], w[i + 1])};
    if (std::find(used.begin(), used.end(), e) != used.end()) return false;
    used.push_back(e);
  }
  return true;
}

namespace {

std::vector<int> bfs_dist(const Graph& g, int src) {
  std::vector<int> dist(g.n(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : g.neighbours(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

std::vector<int> shortest_path(const Graph& g, int u, int v) {
  std::vector<int> par(g.n(), -2);
  std::deque<int> q{u};
  par[u] = -1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (x == v) break;
    for (int y : g.neighbours(x))
      if (par[y] == -2) {
        par[y] = x;
        q.push_back(y);
      }
  }
  if (par[v] == -2) return {};
  std::vector<int> path;
  for (int x = v; x != -1; x = par[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<std::vector<int>> even_trail_by_repair(const Graph& g, int u, int v,
                                                     int max_len) {
  auto path = shortest_path(g, u, v);
  if (path.empty()) return std::nullopt;
  int len = static_cast<int>(path.size()) - 1;
  if (len % 2 == 0) {
    if (len <= max_len) return path;
    return std::nullopt;
  }
  // Splice a triangle x,a,b,x in at some vertex x of the path.
  for (int pos = static_cast<int>(path.size()) - 1; pos >= 0; --pos) {
    int x = path[pos];
    for (int a : g.neighbours(x))
      for (int b : g.neighbours(x) & g.neighbours(a)) {
        std::vector<int> w(path.begin(), path.begin() + pos + 1);
        w.push_back(a);
        w.push_back(b);
        w.insert(w.end(), path.begin() + pos, path.end());
        if (is_even_trail(g, w, u, v, max_len)) return w;
      }
  }
  return std::nullopt;
}

std::optional<std::vector<int>> even_trail(const Graph& g, int u, int v,
                                           int max_len) {
  if (u < 0 || v < 0 || u >= g.n() || v >= g.n())
    throw ArgumentError("vertex out of range");
  if (u == v) return std::vector<int>{u};
  // Layered search over (vertex, parity).
  int n = g.n();
  std::vector<int> par(2 * n, -2);
  std::deque<int> q{2 * u};
  par[2 * u] = -1;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    int x = s / 2, parity = s % 2;
    for (int y : g.neighbours(x)) {
      int t = 2 * y + (parity ^ 1);
      if (par[t] == -2) {
        par[t] = s;
        q.push_back(t);
      }
    }
  }
  if (par[2 * v] == -2) return std::nullopt;
  std::vector<int> walk;
  for (int s = 2 * v; s != -1; s = par[s]) walk.push_back(s / 2);
  std::reverse(walk.begin(), walk.end());
  if (is_even_trail(g, walk, u, v, max_len)) return walk;
  if (static_cast<int>(walk.size()) - 1 > max_len) return std::nullopt;
  if (auto w = even_trail_by_repair(g, u, v, max_len)) return w;
  // The shortest even walk repeats an edge; search trails directly.
  auto dist = bfs_dist(g, v);
  std::vector<int> cur{u};
  std::vector<Edge> used;
  std::optional<std::vector<int>> found;
  auto dfs = [&](auto&& self, int limit) -> bool {
    int x = cur.back();
    int len = static_cast<int>(cur.size()) - 1;
    if (x == v && len % 2 == 0 && len > 0) {
      found = cur;
      return true;
    }
    if (len + dist[x] > limit) return false;
    for (int y : g.neighbours(x)) {
      Edge e{std::min(x, y), std::max(x, y)};
      if (std::find(used.begin(), used.end(), e) != used.end()) continue;
      used.push_back(e);
      cur.push_back(y);
      bool ok = self(self, limit);
      cur.pop_back();
      used.pop_back();
      if (ok) return true;
    }
    return false;
  };
  for (int limit = 2; limit <= max_len; limit += 2)
    if (dfs(dfs, limit)) return found;
  return std::nullopt;
}

RegularityVerdict check_regular_pair(const Graph& g, const VertexSet& v1,
                                     const VertexSet& v2, double eps, double d,
                                     std::uint64_t seed) {
  if (v1.empty() || v2.empty()) throw ArgumentError("empty side in regular pair");
  if (v1.intersects(v2)) throw ArgumentError("regular pair sides overlap");
  auto a = v1.to_vector(), b = v2.to_vector();
  int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  int ka = std::max(1, static_cast<int>(std::ceil(eps * na - 1e-9)));
  int kb = std::max(1, static_cast<int>(std::ceil(eps * nb - 1e-9)));
  RegularityVerdict out;
  auto consider = [&](double dens, const std::vector<int>& x1,
                      const std::vector<int>& x2) {
    double dev = std::abs(dens - d);
    if (dev > out.worst_deviation || out.witness1.empty()) {
      out.worst_deviation = dev;
      out.witness1 = x1;
      out.witness2 = x2;
      out.witness_density = dens;
    }
  };
  if (na <= 16 && nb <= 16) {
    out.exhaustive = true;
    // For a fixed X1 and |X2| = j, the extreme densities come from the j
    // largest or j smallest degrees into X1.
    std::vector<std::pair<int, int>> deg(nb);
    for (std::uint32_t mask = 1; mask < (1u << na); ++mask) {
      int k1 = std::popcount(mask);
      if (k1 < ka) continue;
      for (int j = 0; j < nb; ++j) {
        int c = 0;
        for (int i = 0; i < na; ++i)
          if (mask >> i & 1 && g.adjacent(a[i], b[j])) ++c;
        deg[j] = {c, j};
      }
      std::sort(deg.begin(), deg.end());
      int lo = 0, hi = 0;
      for (int j = 1; j <= nb; ++j) {
        lo += deg[j - 1].first;
        hi += deg[nb - j].first;
        if (j < kb) continue;
        double denom = static_cast<double>(k1) * j;
        double dl = lo / denom, dh = hi / denom;
        bool take_hi = std::abs(dh - d) >= std::abs(dl - d);
        double dev = take_hi ? std::abs(dh - d) : std::abs(dl - d);
        if (dev > out.worst_deviation || out.witness1.empty()) {
          std::vector<int> x1, x2;
          for (int i = 0; i < na; ++i)
            if (mask >> i & 1) x1.push_back(a[i]);
          for (int t = 0; t < j; ++t)
            x2.push_back(b[deg[take_hi ? nb - 1 - t : t].second]);
          std::sort(x2.begin(), x2.end());
          consider(take_hi ? dh : dl, x1, x2);
        }
      }
    }
  } else {
    Rng rng(seed);
    for (int trial = 0; trial < 10000; ++trial) {
      auto pick = [&](std::vector<int> pool, int k) {
        for (int i = 0; i < k; ++i) {
          int j = i + rng.below_int(static_cast<int>(pool.size()) - i);
          std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
      };
      auto x1 = pick(a, ka), x2 = pick(b, kb);
      long long e = 0;
      for (int x : x1)
        for (int y : x2) e += g.adjacent(x, y);
      consider(static_cast<double>(e) / (static_cast<double>(ka) * kb), x1, x2);
    }
  }
  out.regular = out.worst_deviation < eps;
  return out;
}

}  // namespace kfactor
