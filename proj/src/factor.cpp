#include "kfactor/factor.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "kfactor/cliques.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kFound: return "found";
    case Verdict::kAbsent: return "absent";
    case Verdict::kBudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

// Exact cover of [0,n) by the given sets; always branches on the uncovered
// vertex with the fewest live sets.
class ExactCover {
 public:
  ExactCover(int n, const std::vector<std::vector<int>>& sets, long long budget)
      : n_(n), sets_(sets), budget_(budget), of_vertex_(n), alive_(sets.size(), 1),
        cnt_(n, 0), covered_(n, 0) {
    for (size_t c = 0; c < sets_.size(); ++c)
      for (int v : sets_[c]) {
        of_vertex_[v].push_back(static_cast<int>(c));
        ++cnt_[v];
      }
  }

  Verdict solve() {
    if (rec()) return Verdict::kFound;
    return exhausted_ ? Verdict::kBudgetExhausted : Verdict::kAbsent;
  }
  const std::vector<int>& solution() const { return chosen_; }
  long long nodes() const { return nodes_; }

 private:
  bool rec() {
    int best = -1;
    for (int v = 0; v < n_; ++v)
      if (!covered_[v] && (best < 0 || cnt_[v] < cnt_[best])) {
        best = v;
        if (cnt_[v] == 0) break;
      }
    if (best < 0) return true;
    if (cnt_[best] == 0) return false;
    for (int c : of_vertex_[best]) {
      if (!alive_[c]) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      size_t mark = trail_.size();
      select(c);
      chosen_.push_back(c);
      if (rec()) return true;
      chosen_.pop_back();
      undo(c, mark);
      if (exhausted_) return false;
    }
    return false;
  }

  void select(int c) {
    for (int w : sets_[c]) {
      covered_[w] = 1;
      for (int d : of_vertex_[w])
        if (alive_[d]) {
          alive_[d] = 0;
          for (int x : sets_[d]) --cnt_[x];
          trail_.push_back(d);
        }
    }
  }

  void undo(int c, size_t mark) {
    while (trail_.size() > mark) {
      int d = trail_.back();
      trail_.pop_back();
      alive_[d] = 1;
      for (int x : sets_[d]) ++cnt_[x];
    }
    for (int w : sets_[c]) covered_[w] = 0;
  }

  int n_;
  const std::vector<std::vector<int>>& sets_;
  long long budget_;
  long long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::vector<int>> of_vertex_;
  std::vector<char> alive_;
  std::vector<int> cnt_;
  std::vector<char> covered_;
  std::vector<int> trail_;
  std::vector<int> chosen_;
};

// Maximum matching in a general graph (Edmonds' blossom algorithm).
std::vector<int> blossom_matching(const Graph& g) {
  int n = g.n();
  std::vector<int> match(n, -1), par(n), base(n);
  std::vector<char> used(n), blossom(n);
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.neighbours(v).to_vector();
  auto lca = [&](int a, int b) {
    std::vector<char> seen(n, 0);
    while (true) {
      a = base[a];
      seen[a] = 1;
      if (match[a] == -1) break;
      a = par[match[a]];
    }
    while (true) {
      b = base[b];
      if (seen[b]) return b;
      b = par[match[b]];
    }
  };
  auto mark_path = [&](int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = 1;
      par[v] = child;
      child = match[v];
      v = par[match[v]];
    }
  };
  auto find_path = [&](int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(par.begin(), par.end(), -1);
    std::iota(base.begin(), base.end(), 0);
    used[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && par[match[to]] != -1)) {
          int cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n; ++i)
            if (blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push_back(i);
              }
            }
        } else if (par[to] == -1) {
          par[to] = v;
          if (match[to] == -1) return to;
          used[match[to]] = 1;
          q.push_back(match[to]);
        }
      }
    }
    return -1;
  };
  for (int v = 0; v < n; ++v)
    if (match[v] == -1)
      for (int u : adj[v])
        if (match[u] == -1) {
          match[u] = v;
          match[v] = u;
          break;
        }
  for (int v = 0; v < n; ++v)
    if (match[v] == -1) {
      int w = find_path(v);
      while (w != -1) {
        int pv = par[w], ppv = match[pv];
        match[w] = pv;
        match[pv] = w;
        w = ppv;
      }
    }
  return match;
}

struct WordsHash {
  size_t operator()(const std::vector<uint64_t>& w) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : w) h = (h ^ x) * 0xbf58476d1ce4e5b9ULL + (h >> 29);
    return static_cast<size_t>(h);
  }
};

// Greedy independent set in h[w], smallest remaining degree first.
int greedy_independent(const Graph& h, VertexSet w) {
  int size = 0;
  while (!w.empty()) {
    int best = -1, best_deg = 0;
    for (int v : w) {
      int d = h.neighbours(v).intersection_count(w);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
        if (d == 0) break;
      }
    }
    ++size;
    w.erase(best);
    w -= h.neighbours(best);
  }
  return size;
}

// Maximum independent set size of h, as a maximum clique of the complement
// with greedy colouring bounds. Returns the best size found within budget.
int max_independent(const Graph& h, long long budget) {
  Graph c = h.complement();
  int best = 0;
  long long nodes = 0;
  auto rec = [&](auto&& self, VertexSet cand, int size) -> void {
    if (++nodes > budget) return;
    // Colour classes give an upper bound per vertex.
    std::vector<int> order, bound;
    VertexSet left = cand;
    int colour = 0;
    while (!left.empty()) {
      ++colour;
      VertexSet q = left;
      while (!q.empty()) {
        int v = q.first();
        q.erase(v);
        q -= c.neighbours(v);
        left.erase(v);
        order.push_back(v);
        bound.push_back(colour);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + bound[i] <= best) return;
      int v = order[i];
      VertexSet next = cand & c.neighbours(v);
      if (next.empty()) {
        best = std::max(best, size + 1);
      } else {
        self(self, next, size + 1);
      }
      cand.erase(v);
      if (nodes > budget) return;
    }
  };
  rec(rec, VertexSet::full(h.n()), 0);
  return std::max(best, greedy_independent(h, VertexSet::full(h.n())));
}

// Partition the vertices of h into cliques of size <= r so that the savings
// sum(|S| - 1) reach `need`. A part may always be grown while a common
// neighbour is free, so only cliques of size r or maximal cliques are tried.
class CliquePartition {
 public:
  CliquePartition(const Graph& h, int r, int need, long long budget)
      : h_(h), r_(r), need_(need), budget_(budget) {
    lcm_ = 1;
    for (int i = 2; i <= r_; ++i) lcm_ = std::lcm(lcm_, static_cast<long long>(i));
  }

  Verdict solve() {
    // Every vertex of an independent set needs its own part.
    if (h_.n() - max_independent(h_, 200000) < need_) return Verdict::kAbsent;
    if (greedy(kGreedyRestarts)) return Verdict::kFound;
    if (rec(VertexSet::full(h_.n()), 0)) return Verdict::kFound;
    return exhausted_ ? Verdict::kBudgetExhausted : Verdict::kAbsent;
  }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  long long nodes() const { return nodes_; }

 private:
  bool rec(VertexSet w, int saved) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    size_t mark = parts_.size();
    // Forced parts: isolated vertices and small simplicial neighbourhoods.
    for (bool changed = true; changed;) {
      changed = false;
      for (int v : w) {
        if (!w.contains(v)) continue;
        VertexSet nv = h_.neighbours(v) & w;
        int d = nv.count();
        if (d == 0) {
          parts_.push_back({v});
          w.erase(v);
          changed = true;
        } else if (d <= r_ - 1) {
          auto vs = nv.to_vector();
          if (!h_.is_clique(vs)) continue;
          vs.push_back(v);
          std::sort(vs.begin(), vs.end());
          for (int x : vs) w.erase(x);
          parts_.push_back(std::move(vs));
          saved += d;
          changed = true;
        }
      }
    }
    if (saved >= need_) {
      for (int v : w) parts_.push_back({v});
      return true;
    }
    auto fail = [&](bool memo) {
      if (memo && failed_.size() < kMemoCap) {
        std::vector<uint64_t> key(w.data(), w.data() + w.words());
        auto [it, fresh] = failed_.emplace(std::move(key), saved);
        if (!fresh) it->second = std::max(it->second, saved);
      }
      parts_.resize(mark);
      return false;
    };
    if (w.empty()) return fail(false);
    {
      std::vector<uint64_t> key(w.data(), w.data() + w.words());
      auto it = failed_.find(key);
      if (it != failed_.end() && it->second >= saved) return fail(false);
    }
    long long ub = 0;
    int pick = -1, pick_deg = 0;
    for (int v : w) {
      int c = clique_number_at(h_, v, w, r_);
      ub += lcm_ * (c - 1) / c;
      int d = h_.neighbours(v).intersection_count(w);
      if (pick < 0 || d < pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    if (static_cast<long long>(saved) * lcm_ + ub < static_cast<long long>(need_) * lcm_)
      return fail(true);
    if (saved + w.count() - greedy_independent(h_, w) < need_) return fail(true);

    std::vector<std::vector<int>> options;
    std::vector<int> cur{pick};
    auto gen = [&](auto&& self, const VertexSet& ext, const VertexSet& common) -> void {
      if (static_cast<int>(cur.size()) == r_ || common.empty()) {
        auto s = cur;
        std::sort(s.begin(), s.end());
        options.push_back(std::move(s));
        return;
      }
      for (int u : ext) {
        VertexSet e2 = ext & h_.neighbours(u);
        e2.erase_upto(u);
        cur.push_back(u);
        self(self, e2, common & h_.neighbours(u));
        cur.pop_back();
      }
    };
    VertexSet nv = h_.neighbours(pick) & w;
    gen(gen, nv, nv);
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& s : options) {
      VertexSet w2 = w;
      for (int x : s) w2.erase(x);
      parts_.push_back(s);
      if (rec(w2, saved + static_cast<int>(s.size()) - 1)) return true;
      parts_.pop_back();
      if (exhausted_) {
        parts_.resize(mark);
        return false;
      }
    }
    return fail(true);
  }

  // Randomized min-degree greedy; restart 0 breaks ties by id only.
  bool greedy(int restarts) {
    int n = h_.n();
    for (int rs = 0; rs < restarts; ++rs) {
      Rng rng(derive_seed(0x6b666163746f72ULL, static_cast<std::uint64_t>(rs)));
      double noise = rs == 0 ? 0.0 : 1.5;
      VertexSet w = VertexSet::full(n);
      std::vector<std::vector<int>> parts;
      int saved = 0;
      std::vector<int> deg(n, 0);
      while (!w.empty()) {
        int pick = -1;
        double best = 0;
        for (int v : w) {
          deg[v] = h_.neighbours(v).intersection_count(w);
          double sc = deg[v] + noise * rng.uniform01();
          if (pick < 0 || sc < best) {
            pick = v;
            best = sc;
          }
        }
        std::vector<int> cur{pick}, choice{pick};
        double choice_score = 0;
        auto gen = [&](auto&& self, const VertexSet& ext, double score) -> void {
          bool better = cur.size() > choice.size() ||
                        (cur.size() == choice.size() && score < choice_score);
          if (better) {
            choice = cur;
            choice_score = score;
          }
          if (static_cast<int>(cur.size()) == r_) return;
          for (int u : ext) {
            VertexSet e2 = ext & h_.neighbours(u);
            e2.erase_upto(u);
            cur.push_back(u);
            self(self, e2, score + deg[u] + noise * rng.uniform01());
            cur.pop_back();
          }
        };
        gen(gen, h_.neighbours(pick) & w, 0.0);
        std::sort(choice.begin(), choice.end());
        for (int x : choice) w.erase(x);
        saved += static_cast<int>(choice.size()) - 1;
        parts.push_back(std::move(choice));
      }
      if (saved >= need_) {
        parts_ = std::move(parts);
        return true;
      }
    }
    return false;
  }

  static constexpr int kGreedyRestarts = 64;
  static constexpr size_t kMemoCap = 2'000'000;
  const Graph& h_;
  int r_, need_;
  long long budget_;
  long long lcm_;
  long long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::vector<int>> parts_;
  std::unordered_map<std::vector<uint64_t>, int, WordsHash> failed_;
};

void sort_parts(std::vector<Clique>& parts) {
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end());
}

}  // namespace

bool verify_factor(const Graph& g, int r, const std::vector<Clique>& parts) {
  std::vector<char> seen(g.n(), 0);
  for (const auto& p : parts) {
    if (static_cast<int>(p.size()) != r || !g.is_clique(p)) return false;
    for (int v : p) {
      if (v < 0 || v >= g.n() || seen[v]) return false;
      seen[v] = 1;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

FactorResult has_factor(const Graph& g, int r, long long budget) {
  if (r < 2) throw ArgumentError("has_factor needs r >= 2");
  FactorResult out;
  int n = g.n();
  if (n % r != 0) {
    out.reason = "divisibility";
    return out;
  }
  if (n == 0) {
    out.verdict = Verdict::kFound;
    return out;
  }
  if (g.min_degree() < r - 1) {
    out.reason = "a vertex has degree below r-1";
    return out;
  }
  if (r == 2) {
    out.method = "blossom";
    auto match = blossom_matching(g);
    for (int v = 0; v < n; ++v) {
      if (match[v] < 0) {
        out.reason = "no perfect matching";
        out.parts.clear();
        return out;
      }
      if (v < match[v]) out.parts.push_back({v, match[v]});
    }
    out.verdict = Verdict::kFound;
    return out;
  }
  std::vector<int> universal, rest;
  for (int v = 0; v < n; ++v) (g.degree(v) == n - 1 ? universal : rest).push_back(v);
  if (!universal.empty()) {
    out.method = "universal-reduction";
    int m = static_cast<int>(rest.size());
    int need = m - n / r;
    Graph h = g.induced(rest);
    CliquePartition cp(h, r, std::max(need, 0), budget);
    out.verdict = need <= 0 ? Verdict::kFound : cp.solve();
    out.nodes = cp.nodes();
    if (out.verdict == Verdict::kFound) {
      std::vector<std::vector<int>> local = cp.parts();
      if (need <= 0) {
        local.clear();
        for (int i = 0; i < m; ++i) local.push_back({i});
      }
      size_t next_u = 0;
      for (const auto& s : local) {
        Clique c;
        for (int i : s) c.push_back(rest[i]);
        while (static_cast<int>(c.size()) < r) c.push_back(universal[next_u++]);
        out.parts.push_back(std::move(c));
      }
      while (next_u < universal.size()) {
        Clique c(universal.begin() + next_u, universal.begin() + next_u + r);
        next_u += r;
        out.parts.push_back(std::move(c));
      }
      sort_parts(out.parts);
    } else if (out.verdict == Verdict::kAbsent) {
      out.reason = "search exhausted";
    }
    return out;
  }
  out.method = "exact-cover";
  auto cliques = enumerate_cliques(g, r);
  ExactCover ec(n, cliques, budget);
  out.verdict = ec.solve();
  out.nodes = ec.nodes();
  if (out.verdict == Verdict::kFound) {
    for (int c : ec.solution()) out.parts.push_back(cliques[c]);
    sort_parts(out.parts);
  } else if (out.verdict == Verdict::kAbsent) {
    out.reason = "search exhausted";
  }
  return out;
}

std::uint64_t count_factors(const Graph& g, int r) {
  if (g.n() > 16) throw SizeLimitError("count_factors is limited to n <= 16");
  if (r < 1) throw ArgumentError("count_factors needs r >= 1");
  if (g.n() % r != 0) return 0;
  VertexSet free = VertexSet::full(g.n());
  std::uint64_t total = 0;
  auto rec = [&](auto&& self) -> void {
    int v = free.first();
    if (v < 0) {
      ++total;
      return;
    }
    free.erase(v);
    VertexSet cand = g.neighbours(v) & free;
    std::vector<int> picked;
    auto ext = [&](auto&& me, const VertexSet& c) -> void {
      if (static_cast<int>(picked.size()) == r - 1) {
        for (int x : picked) free.erase(x);
        self(self);
        for (int x : picked) free.insert(x);
        return;
      }
      for (int u : c) {
        VertexSet c2 = c & g.neighbours(u);
        c2.erase_upto(u);
        picked.push_back(u);
        me(me, c2);
        picked.pop_back();
      }
    };
    ext(ext, cand);
    free.insert(v);
  };
  rec(rec);
  return total;
}

DisjointCliques max_disjoint_cliques(const Graph& g, int k, int target,
                                     long long budget) {
  if (k < 2) throw ArgumentError("max_disjoint_cliques needs k >= 2");
  DisjointCliques out;
  auto cliques = enumerate_cliques(g, k);
  out.clique_count = static_cast<long long>(cliques.size());
  int n = g.n();
  int cap = target > 0 ? target : n / k;
  if (cliques.empty()) {
    out.exact = true;
    out.mode = "exact";
    return out;
  }
  int nc = static_cast<int>(cliques.size());
  if (nc <= 5000) {
    out.mode = "exact";
    std::vector<VertexSet> of_vertex(n, VertexSet(nc));
    for (int c = 0; c < nc; ++c)
      for (int v : cliques[c]) of_vertex[v].insert(c);
    std::vector<int> cur, best;
    bool exhausted = false;
    auto rec = [&](auto&& self, const VertexSet& live) -> void {
      if (static_cast<int>(best.size()) >= cap || exhausted) return;
      if (++out.nodes > budget) {
        exhausted = true;
        return;
      }
      if (cur.size() > best.size()) best = cur;
      int live_vertices = 0, pivot = -1;
      for (int v = 0; v < n; ++v)
        if (of_vertex[v].intersects(live)) {
          ++live_vertices;
          if (pivot < 0) pivot = v;
        }
      if (pivot < 0) return;
      if (static_cast<int>(cur.size()) + live_vertices / k <= static_cast<int>(best.size()))
        return;
      for (int c : of_vertex[pivot] & live) {
        VertexSet next = live;
        for (int v : cliques[c]) next -= of_vertex[v];
        cur.push_back(c);
        self(self, next);
        cur.pop_back();
        if (static_cast<int>(best.size()) >= cap || exhausted) return;
      }
      self(self, live - of_vertex[pivot]);
    };
    rec(rec, VertexSet::full(nc));
    out.exact = !exhausted || static_cast<int>(best.size()) >= cap;
    for (int c : best) out.parts.push_back(cliques[c]);
    return out;
  }
  out.mode = "greedy-swap";
  std::vector<std::vector<int>> of_vertex(n);
  for (int c = 0; c < nc; ++c)
    for (int v : cliques[c]) of_vertex[v].push_back(c);
  std::vector<long long> load(nc, 0);
  for (int c = 0; c < nc; ++c)
    for (int v : cliques[c]) load[c] += static_cast<long long>(of_vertex[v].size());
  std::vector<int> order(nc);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return load[a] < load[b]; });
  VertexSet used(n);
  std::vector<int> chosen;
  auto fits = [&](int c, const VertexSet& u) {
    for (int v : cliques[c])
      if (u.contains(v)) return false;
    return true;
  };
  for (int c : order) {
    if (static_cast<int>(chosen.size()) >= cap) break;
    if (fits(c, used)) {
      chosen.push_back(c);
      for (int v : cliques[c]) used.insert(v);
    }
  }
  // One-out two-in swaps until none applies.
  for (bool improved = true; improved && static_cast<int>(chosen.size()) < cap;) {
    improved = false;
    for (size_t i = 0; i < chosen.size() && !improved; ++i) {
      if (++out.nodes > budget) break;
      int c = chosen[i];
      VertexSet u2 = used;
      for (int v : cliques[c]) u2.erase(v);
      std::vector<int> cand;
      for (int v : cliques[c])
        for (int d : of_vertex[v])
          if (d != c && fits(d, u2)) cand.push_back(d);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      for (size_t a = 0; a < cand.size() && !improved; ++a) {
        VertexSet u3 = u2;
        for (int v : cliques[cand[a]]) u3.insert(v);
        for (int v : cliques[c]) {
          for (int d : of_vertex[v]) {
            if (d == c || d == cand[a] || !fits(d, u3)) continue;
            chosen[i] = cand[a];
            chosen.push_back(d);
            used = u3;
            for (int x : cliques[d]) used.insert(x);
            improved = true;
            break;
          }
          if (improved) break;
        }
      }
    }
  }
  out.exact = static_cast<int>(chosen.size()) >= cap;
  for (int c : chosen) out.parts.push_back(cliques[c]);
  std::sort(out.parts.begin(), out.parts.end());
  return out;
}

namespace {

inline constexpr size_t kMaxFamilySets = 2'000'000;

}  // namespace

bool verify_family_factor(const Graph& g, const std::vector<Graph>& family,
                          const std::vector<FamilyCopy>& parts) {
  std::vector<char> seen(g.n(), 0);
  for (const auto& p : parts) {
    if (p.member < 0 || p.member >= static_cast<int>(family.size())) return false;
    const Graph& f = family[p.member];
    if (static_cast<int>(p.image.size()) != f.n()) return false;
    for (int v : p.image) {
      if (v < 0 || v >= g.n() || seen[v]) return false;
      seen[v] = 1;
    }
    for (auto [a, b] : f.edges())
      if (!g.adjacent(p.image[a], p.image[b])) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

FamilyFactorResult has_family_factor(const Graph& g, const std::vector<Graph>& family,
                                     long long budget) {
  FamilyFactorResult out;
  for (const auto& f : family)
    if (f.n() > 10) throw SizeLimitError("family members are limited to 10 vertices");
  if (family.empty()) throw ArgumentError("empty family");
  int n = g.n();
  std::map<std::vector<int>, FamilyCopy> by_set;
  for (int fi = 0; fi < static_cast<int>(family.size()); ++fi) {
    const Graph& f = family[fi];
    if (f.n() == 0 || f.n() > n) continue;
    std::vector<int> img(f.n());
    VertexSet used(n);
    auto rec = [&](auto&& self, int i) -> void {
      if (i == f.n()) {
        std::vector<int> key = img;
        std::sort(key.begin(), key.end());
        if (!by_set.count(key)) {
          if (by_set.size() >= kMaxFamilySets)
            throw SizeLimitError("too many candidate copies for exact family search");
          by_set.emplace(std::move(key), FamilyCopy{fi, img});
        }
        return;
      }
      VertexSet cand = VertexSet::full(n) - used;
      for (int j = 0; j < i; ++j)
        if (f.adjacent(i, j)) cand &= g.neighbours(img[j]);
      for (int x : cand) {
        img[i] = x;
        used.insert(x);
        self(self, i + 1);
        used.erase(x);
      }
    };
    rec(rec, 0);
  }
  std::vector<std::vector<int>> sets;
  std::vector<FamilyCopy> copies;
  for (auto& [key, copy] : by_set) {
    sets.push_back(key);
    copies.push_back(copy);
  }
  ExactCover ec(n, sets, budget);
  out.verdict = ec.solve();
  out.nodes = ec.nodes();
  if (out.verdict == Verdict::kFound) {
    for (int c : ec.solution()) out.parts.push_back(copies[c]);
    std::sort(out.parts.begin(), out.parts.end(),
              [](const FamilyCopy& a, const FamilyCopy& b) {
                return *std::min_element(a.image.begin(), a.image.end()) <
                       *std::min_element(b.image.begin(), b.image.end());
              });
  } else if (out.verdict == Verdict::kAbsent) {
    out.reason = "search exhausted";
  }
  return out;
}

}  // namespace kfactor
