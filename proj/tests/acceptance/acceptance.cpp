// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "kfactor/bounds.hpp"
#include "kfactor/cliques.hpp"
#include "kfactor/constructions.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/extremal_cover.hpp"
#include "kfactor/factor.hpp"
#include "kfactor/harvest.hpp"
#include "kfactor/partition.hpp"
#include "kfactor/perturbation.hpp"
#include "kfactor/spread.hpp"
#include "kfactor/threshold.hpp"
#include "oracles.hpp"

using namespace kfactor;

namespace {

struct CritResult {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Random graph with every degree at least need, by topping up deficient vertices.
Graph forced_min_degree(int n, int need, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double p = 0.3 + 0.6 * u(gen);
  Graph g = oracle::gnp(n, p, gen());
  GraphBuilder b(g);
  for (int v = 0; v < n; ++v) {
    std::vector<int> pool;
    for (int w = 0; w < n; ++w)
      if (w != v && !b.has_edge(v, w)) pool.push_back(w);
    std::shuffle(pool.begin(), pool.end(), gen);
    int deg = b.snapshot().degree(v);
    for (size_t i = 0; deg < need && i < pool.size(); ++i, ++deg) b.add_edge(v, pool[i]);
  }
  return std::move(b).build();
}

CritResult criterion1() {
  auto t0 = Clock::now();
  std::mt19937_64 gen(1);
  const int ns[] = {6, 8, 9, 12};
  int agree = 0, total = 0, undecided = 0, bad_cert = 0;
  for (int i = 0; i < 10000; ++i) {
    int n = ns[i % 4], r = 2 + (i / 4) % 3;
    double p = 0.3 + 0.7 * std::uniform_real_distribution<double>(0, 1)(gen);
    Graph g = oracle::gnp(n, p, gen());
    auto a = oracle::matrix_of(g);
    auto res = has_factor(g, r);
    bool truth = oracle::has_factor(a, r);
    ++total;
    if (res.verdict == Verdict::kBudgetExhausted) {
      ++undecided;
      continue;
    }
    if ((res.verdict == Verdict::kFound) == truth) ++agree;
    if (res.verdict == Verdict::kFound && !oracle::valid_factor(a, r, res.parts)) ++bad_cert;
  }
  double secs = seconds_since(t0);
  CritResult o;
  o.pass = agree == total && bad_cert == 0 && secs < 300;
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " agree, " +
             std::to_string(undecided) + " undecided, " + std::to_string(bad_cert) +
             " invalid factors, " + fmt("%.1f s", secs);
  return o;
}

CritResult criterion2() {
  std::mt19937_64 gen(2);
  std::vector<std::pair<int, int>> shapes;
  for (int n = 6; n <= 24; n += 3) shapes.push_back({n, 3});
  for (int n = 8; n <= 24; n += 4) shapes.push_back({n, 4});
  int found = 0, absent = 0, undecided = 0;
  for (int i = 0; i < 500; ++i) {
    auto [n, r] = shapes[i % shapes.size()];
    int need = (n * (r - 1) + r - 1) / r;  // ceil((1 - 1/r) n)
    Graph g = forced_min_degree(n, need, gen);
    auto res = has_factor(g, r, 10'000'000);
    if (res.verdict == Verdict::kFound && verify_factor(g, r, res.parts))
      ++found;
    else if (res.verdict == Verdict::kBudgetExhausted)
      ++undecided;
    else
      ++absent;
  }
  return {found == 500 && undecided == 0,
          std::to_string(found) + "/500 found, " + std::to_string(absent) + " absent, " +
              std::to_string(undecided) + " undecided"};
}

CritResult criterion3() {
  int cases = 0, absent = 0;
  for (int r : {2, 3, 4})
    for (int n = r; n <= 24; n += r) {
      if (n / r + 1 > n) continue;
      ++cases;
      absent += has_factor(hs_tight(n, r).graph, r).verdict == Verdict::kAbsent;
    }
  return {absent == cases, std::to_string(absent) + "/" + std::to_string(cases) + " hosts without a factor"};
}

CritResult criterion4() {
  bool exact = true;
  double worst = 0.0;
  for (int s = 3; s <= 10; ++s) {
    Rational e = Rational(s) - phi(s) * Rational(binom_ll(s + 1, 2) - 1);
    exact = exact && e == Rational(0) && nps_exponent(s) == Rational(0);
    for (long long n = 100; n <= 1000000; n *= 10) worst = std::max(worst, std::abs(nps_value(n, s) - 1.0));
  }
  return {exact && worst < 1e-12, std::string("rational exponent ") + (exact ? "exactly 0" : "nonzero") +
                                      ", worst float error " + fmt("%.2e", worst)};
}

CritResult criterion5() {
  bool three = phi(3) == Rational(3, 5);
  bool dec = true;
  for (int s = 2; s < 10; ++s) dec = dec && phi(s) > phi(s + 1);
  std::ostringstream os;
  os << "phi(3) = " << phi(3).numerator() << "/" << phi(3).denominator()
     << (dec ? ", strictly decreasing on 2..10" : ", NOT decreasing");
  return {three && dec, os.str()};
}

CritResult criterion6() {
  std::ostringstream os;
  bool all = true;
  const int cases[3][3] = {{40, 4, 3}, {80, 4, 3}, {80, 5, 3}};
  for (const auto& c : cases) {
    int n = c[0], r = c[1], s = c[2];
    Host h;
    try {
      h = pseudorandom_lower(n, r, s, 1000 + n + r, 20);
    } catch (const ConstructionFailure& e) {
      os << "(" << n << "," << r << "," << s << ") failed: " << e.what() << "; ";
      all = false;
      continue;
    }
    const auto& A = h.set("A");
    int k = static_cast<int>(h.info.at("k"));
    int a_size = static_cast<int>(A.size());
    std::vector<char> in_a(n, 0);
    for (int v : A) in_a[v] = 1;
    bool g1 = a_size == s * n / r + k;
    for (int u = 0; u < n && g1; ++u)
      for (int v = u + 1; v < n && g1; ++v)
        if (!(in_a[u] && in_a[v])) g1 = h.graph.adjacent(u, v);
    Graph ga = h.graph.induced(A);
    bool g2 = ga.min_degree() >= k;
    auto ma = oracle::matrix_of(ga);
    bool g3 = oracle::cliques(ma, s + 1).empty();
    bool g4 = true;
    for (const auto& cls : graph_classes(s + 1)) {
      auto cnt = oracle::induced_embeddings(oracle::matrix_of(cls.g), ma);
      double bound = h.L_used * std::pow(static_cast<double>(a_size), s + 1) *
                     std::pow(static_cast<double>(k) / a_size, static_cast<double>(cls.g.m()));
      g4 = g4 && static_cast<double>(cnt) <= bound * (1 + 1e-12) &&
           static_cast<double>(cnt) <= g4_bound(a_size, k, s + 1, static_cast<int>(cls.g.m()));
    }
    bool ok = h.attempts <= 20 && g1 && g2 && g3 && g4;
    all = all && ok;
    os << "(" << n << "," << r << "," << s << ") attempts " << h.attempts << " L " << fmt("%.3f", h.L_used)
       << (ok ? " ok" : " BAD") << "; ";
  }
  return {all, os.str()};
}

CritResult criterion7() {
  int cases = 0, good = 0;
  for (int s = 2; s <= 8; ++s)
    for (int t = 1; t < s; ++t) {
      ++cases;
      auto p = k2star_packing(s, t);
      bool ok = packing_residue(p) == Rational(0);
      for (const auto& w : packing_weights(p)) ok = ok && w == Rational(1);
      const auto& M = p.sets[1].second;
      for (const auto& c : p.copies) ok = ok && std::count(M.begin(), M.end(), c.tau) == 1;
      good += ok;
    }
  return {good == cases, std::to_string(good) + "/" + std::to_string(cases) + " (s,t) pairs exact"};
}

CritResult criterion8() {
  Host h = bipartite_random(60, 60, 1.0, 0);
  MuCSampler smp(h.graph, h.set("A"), h.set("B"), 8);
  double q = 4.0 * 8 / 60;
  SpreadCheckOptions opt;
  opt.samples = 20000;
  opt.pairs = 2000;
  opt.pair_factor = 1.5;
  opt.z = 4.0;
  opt.seed = 8;
  auto rep = verify_spread(h.graph, [&](std::uint64_t s) { return smp.sample(s); }, q, opt);
  return {rep.samples == 20000 && rep.flags.empty(),
          std::to_string(rep.samples) + " samples (" + std::to_string(rep.attempts) + " draws), max single " +
              fmt("%.4f", rep.max_single) + " vs " + fmt("%.4f", q) + ", max pair " + fmt("%.5f", rep.max_pair) +
              " vs " + fmt("%.5f", 1.5 * q * q) + ", flags " + std::to_string(rep.flags.size())};
}

CritResult criterion9() {
  std::ostringstream os;
  bool all = true;
  for (auto [delta, g] : {std::pair{0.1, 2}, std::pair{0.05, 3}}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      Graph host = oracle::gnp(300, 0.5, 900 + s);
      try {
        auto b = build_absorber(host, delta, g, s + 1, 50);
        bool ok = is_absorber(host, b.family).ok;
        all = all && ok;
        os << "(" << delta << "," << g << ") seed " << s << ": " << b.attempts << " attempts"
           << (ok ? "" : " NOT an absorber") << "; ";
      } catch (const Error& e) {
        all = false;
        os << "(" << delta << "," << g << ") seed " << s << " failed: " << e.what() << "; ";
      }
    }
  }
  return {all, os.str()};
}

CritResult criterion10() {
  int n = 300, good = 0, invalid = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    HarvestInstance inst;
    inst.host = random_regular(n, 10, 5000 + s);
    inst.g = 10;
    inst.s = 2;
    inst.p = 20 * std::log(static_cast<double>(n)) / n;
    inst.plan = {s, 1};
    auto r = harvest(inst);
    auto a = oracle::matrix_of(perturb(inst.host, inst.p, inst.plan));
    std::vector<int> seen(n, 0);
    bool valid = true;
    for (const auto& c : r.copies) {
      valid = valid && c.size() == 3 && oracle::is_clique(a, c);
      for (int v : c) valid = valid && seen[v]++ == 0;
    }
    invalid += !valid;
    good += valid && r.copies.size() >= 10;
  }
  return {good >= 95 && invalid == 0,
          std::to_string(good) + "/100 seeds with >= 10 disjoint triangles, " + std::to_string(invalid) +
              " invalid runs"};
}

bool mixed_valid(const oracle::Matrix& a, const MixedFactor& f) {
  std::vector<int> seen(a.size(), 0);
  bool ok = true;
  auto take = [&](int v) { ok = ok && seen[v]++ == 0; };
  for (int v : f.singletons) take(v);
  for (auto [u, v] : f.edges) {
    ok = ok && a[u][v];
    take(u), take(v);
  }
  for (const auto& q : f.qs) {
    ok = ok && static_cast<int>(q.M.size()) == f.t && q.N.size() == q.M.size() &&
         static_cast<int>(q.L.size()) == f.s - f.t;
    for (int l : q.L)
      for (int m : q.M) ok = ok && a[l][m];
    for (size_t i = 0; i < q.M.size() && i < q.N.size(); ++i) ok = ok && a[q.M[i]][q.N[i]];
    for (int v : q.L) take(v);
    for (int v : q.M) take(v);
    for (int v : q.N) take(v);
  }
  for (int c : seen) ok = ok && c == 1;
  return ok;
}

CritResult criterion11() {
  std::mt19937_64 gen(11);
  const int n = 120;
  const std::pair<int, int> rs[] = {{5, 3}, {4, 3}, {6, 3}};
  int hosts = 0, valid = 0, covered = 0, sparse = 0, leftover_over_c = 0;
  for (int i = 0; i < 200; ++i) {
    auto [r, s] = rs[i % 3];
    int need = static_cast<int>(std::ceil((1.0 - static_cast<double>(s) / r - 0.02) * n - 1e-9));
    int amax = n - need;
    int a = static_cast<int>(gen() % (amax + 1));
    // independent A of size a joined to everything else, plus a random remainder
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double p = 0.4 + 0.6 * u(gen);
    GraphBuilder b(n);
    for (int x = 0; x < n; ++x)
      for (int y = std::max(x + 1, a); y < n; ++y)
        if (x < a || u(gen) < p) b.add_edge(x, y);
    Graph g = std::move(b).build();
    if (g.min_degree() < need) {
      GraphBuilder top(g);
      for (int v = a; v < n; ++v)
        for (int w = a; w < n && top.snapshot().degree(v) < need; ++w)
          if (w != v) top.add_edge(v, w);
      g = std::move(top).build();
    }
    ++hosts;
    auto res = cover_or_sparse(g, r, s, 0.02);
    auto mat = oracle::matrix_of(g);
    bool ok = mixed_valid(mat, res.factor);
    if (res.covered) {
      ++covered;
      ok = ok && static_cast<int>(res.factor.singletons.size()) <= res.C;
    } else {
      ++sparse;
      ok = ok && oracle::edges_in(mat, res.sparse) == res.sparse_edges;
      ok = ok && static_cast<double>(res.sparse.size()) >= (static_cast<double>(s) / r - 10.0 * s * r * 0.02) * n;
      leftover_over_c += static_cast<int>(res.factor.singletons.size()) > res.C;
    }
    valid += ok;
  }
  return {valid == hosts, std::to_string(valid) + "/" + std::to_string(hosts) + " certificates valid (" +
                              std::to_string(covered) + " covered, " + std::to_string(sparse) + " sparse)"};
}

bool connected(const Graph& g) {
  std::vector<char> seen(g.n(), 0);
  std::vector<int> st{0};
  seen[0] = 1;
  int c = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int y : g.neighbours(x))
      if (!seen[y]) seen[y] = 1, ++c, st.push_back(y);
  }
  return c == g.n();
}

CritResult criterion12() {
  std::mt19937_64 gen(12);
  int hosts = 0, pairs = 0, ok = 0;
  while (hosts < 200) {
    int n = 6 + static_cast<int>(gen() % 7);
    double p = 0.35 + 0.4 * std::uniform_real_distribution<double>(0, 1)(gen);
    Graph g = oracle::gnp(n, p, gen());
    if (!(3 * g.min_degree() > n) || !connected(g)) continue;
    bool tri = true;
    for (int v = 0; v < n && tri; ++v) {
      bool any = false;
      for (int x : g.neighbours(v))
        for (int y : g.neighbours(v))
          any = any || (x < y && g.adjacent(x, y));
      tri = any;
    }
    if (!tri) continue;
    ++hosts;
    auto a = oracle::matrix_of(g);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        ++pairs;
        auto w = even_trail(g, u, v, 8);
        ok += w && oracle::valid_even_trail(a, *w, u, v, 8);
      }
  }
  return {ok == pairs, std::to_string(ok) + "/" + std::to_string(pairs) + " pairs over " +
                           std::to_string(hosts) + " hosts"};
}

CritResult criterion13() {
  std::ostringstream os;
  bool all = true;
  int case_a = 0;
  for (auto [n, r, s, gm] : {std::tuple{40, 4, 2, 0.05}, std::tuple{48, 4, 2, 0.05}, std::tuple{80, 4, 2, 0.05}}) {
    Host h = f_gamma(n, r, s, gm);
    double alpha = 1.0 - static_cast<double>(h.set("A").size()) / n;
    auto c = classify(h.graph, alpha, 0.08, 0.0099);
    bool ok = c.verdict == Case::kA && verify_case_a(h.graph, c.a1, c.a2, alpha, 0.08, 0.0099).ok;
    case_a += ok;
    all = all && ok;
  }
  os << case_a << "/3 f_gamma hosts CaseA verified; ";
  auto kn = classify(complete_graph(40), 0.5, 0.08, 0.05);
  Graph gr = oracle::gnp(40, 0.5, 13);
  auto rnd = classify(gr, 0.5, 0.08, 0.05);
  bool b = kn.verdict == Case::kB && rnd.verdict == Case::kB;
  all = all && b;
  os << "K_40 " << (kn.verdict == Case::kB ? "CaseB" : "CaseA") << ", G(40,0.5) "
     << (rnd.verdict == Case::kB ? "CaseB" : "CaseA") << " (witness " << rnd.witness_edges << " edges); ";
  int agree = 0;
  for (std::uint64_t sd = 0; sd < 100; ++sd) {
    Graph g = oracle::gnp(18, 0.5, 13000 + sd);
    SparseSearchOptions ls;
    ls.mode = SparseMode::kLocalSearch;
    SparseSearchOptions ex;
    ex.mode = SparseMode::kExhaustive;
    agree += find_sparse_set(g, 9, ls).edges == find_sparse_set(g, 9, ex).edges;
  }
  all = all && agree == 100;
  os << "local search = exhaustive on " << agree << "/100";
  return {all, os.str()};
}

CritResult criterion14(int seeds, int workers, long long budget) {
  auto t0 = Clock::now();
  HostSpec lower;
  lower.family = "pseudorandom-lower";
  lower.n = 96;
  lower.r = 4;
  lower.s = 3;
  HostSpec upper;
  upper.family = "f-gamma";
  upper.n = 96;
  upper.r = 4;
  upper.s = 3;
  upper.gamma = 0.1;
  auto el = crossing(lower, seeds, 0.02, budget, 14, workers);
  auto eu = crossing(upper, seeds, 0.02, budget, 14, workers);
  bool order = el.decided > 0 && eu.decided > 0 && el.median > eu.median && el.q1 > eu.q3;
  // undecided lower-bound seeds still carry a certified upper end when a
  // factor was found before the search gave up
  std::vector<double> bounded, floors;
  for (const auto& s : el.seeds)
    if (!s.decided && s.hi > 0.0 && s.hi < 1.0) {
      bounded.push_back(s.hi);
      floors.push_back(s.lo);
    }
  std::ostringstream os;
  os << "n=96 r=4 seeds=" << seeds << " budget=" << budget << ": pseudorandom-lower decided " << el.decided
     << " median " << fmt("%.4f", el.median) << " IQR [" << fmt("%.4f", el.q1) << "," << fmt("%.4f", el.q3)
     << "]; f-gamma decided " << eu.decided << " median " << fmt("%.4f", eu.median) << " IQR ["
     << fmt("%.4f", eu.q1) << "," << fmt("%.4f", eu.q3) << "]";
  if (!bounded.empty())
    os << "; undecided pseudorandom-lower seeds bracket p* in (lo, hi] with median lo "
       << fmt("%.4f", quantile(floors, 0.5)) << ", median hi " << fmt("%.4f", quantile(bounded, 0.5)) << " over "
       << bounded.size() << " seeds";
  // soft part: slope over n in 40..120
  std::vector<std::pair<double, double>> pts;
  for (int n : {40, 60, 80, 100, 120}) {
    HostSpec h = lower;
    h.n = n;
    auto e = crossing(h, 20, 0.02, budget, 140 + n, workers);
    if (e.decided >= 10) pts.push_back({static_cast<double>(n), e.median});
  }
  if (pts.size() >= 3) {
    auto f = fit_exponent(pts);
    os << "; soft slope " << fmt("%.3f", f.slope) << " +- " << fmt("%.3f", f.stderr_slope) << " over "
       << pts.size() << " n values" << (f.slope >= -0.85 && f.slope <= -0.40 ? " (in window)" : " (outside window)");
  } else {
    os << "; soft slope not computable (" << pts.size() << " n values with >= 10 decided seeds)";
  }
  os << ", " << fmt("%.0f s", seconds_since(t0));
  return {order, os.str()};
}

std::string run_capture(const std::string& cmd, const std::string& out_file) {
  int rc = std::system((cmd + " > " + out_file + " 2>&1").c_str());
  std::ifstream in(out_file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return std::to_string(rc) + "\n" + ss.str();
}

CritResult criterion15(const std::string& cli) {
  if (cli.empty() || !std::filesystem::exists(cli)) return {false, "command-line tool not found"};
  namespace fs = std::filesystem;
  fs::path root = fs::temp_directory_path() / "kfactor_acceptance_15";
  fs::remove_all(root);
  std::vector<std::string> files;
  std::ostringstream os;
  bool all = true;
  int compared = 0;
  {
    std::ofstream cfg(root.string() + "_cfg.json");
    cfg << R"({"families":[{"family":"hs-tight","r":3},{"family":"multipartite-s2","r":3}],)"
        << R"("n":[12,15],"p_grid":{"start":0.02,"stop":0.5,"count":4},"trials":5,"seed":15,"workers":2})";
  }
  std::string cfg_path = root.string() + "_cfg.json";
  for (int run = 0; run < 2; ++run) {
    fs::path d = root / std::to_string(run);
    fs::create_directories(d);
    std::string D = d.string() + "/";
    std::vector<std::pair<std::string, std::string>> cmds = {
        {"construct_fg", "construct --family f-gamma --n 40 --r 4 --s 2 --gamma 0.05 -o " + D + "fg.el"},
        {"construct_pl", "construct --family pseudorandom-lower --n 40 --r 4 --s 3 --seed 7 -o " + D + "pl.el"},
        {"construct_br", "construct --family bipartite-random --a 10 --b 10 --p 0.4 --seed 3 -o " + D + "br.el"},
        {"construct_hs", "construct --family hs-tight --n 12 --r 3 -o " + D + "hs.el"},
        {"construct_bm", "construct --family b-mst --m 2 --s 2 --t 1 -o " + D + "bm.el"},
        {"bounds_phi", "bounds phi --s 5"},
        {"bounds_ps", "bounds ps --n 1000 --s 3"},
        {"bounds_ks", "bounds janson --mode ks --n-sub 50 --p 0.2 --s 3"},
        {"bounds_hv", "bounds janson --mode harvest --n 300 --g 20 --s 3 --C 2"},
        {"bounds_divb", "bounds janson --mode divb --n 100 --nu 0.1 --s 3 --C 2"},
        {"perturb", "perturb --input " + D + "hs.el --p 0.2 --seed 5 -o " + D + "hsp.el"},
        {"factor", "factor --input " + D + "hsp.el --r 3 --count"},
        {"factor_none", "factor --input " + D + "hs.el --r 3"},
        {"cover", "cover --input " + D + "fg.el --r 4 --s 2 --delta 0.05 --seed 2"},
        {"harvest", "harvest --input " + D + "fg.el --s 2 --g 20 --p 0.05 --seed 3"},
        {"spread", "spread-test --n 12 --C 4 --trials 300 --seed 2"},
        {"pack", "pack --s 4 --t 2"},
        {"xcover", "xcover --input " + D + "fg.el --sets " + D + "fg.el.sets --set A --limit 3 --seed 4"},
        {"classify", "classify --input " + D + "fg.el --alpha 0.55 --beta 0.08 --gamma 0.0099"},
        {"sweep", "sweep --config " + cfg_path + " -o " + D + "sweep.csv"},
        {"crossing", "crossing --family hs-tight --n 12 --r 3 --seeds 6 --seed 2 --workers 2"},
        {"fit", "fit --input " + D + "sweep.csv --family multipartite-s2"},
        {"bad_input", "factor --input " + D + "missing.el --r 3"},
    };
    for (const auto& [name, args] : cmds) {
      std::string text = run_capture(cli + " " + args, D + name + ".out");
      std::ofstream(D + name + ".txt", std::ios::binary) << text;
    }
  }
  for (const auto& e : fs::directory_iterator(root / "0")) {
    std::string name = e.path().filename().string();
    if (name.size() > 4 && name.substr(name.size() - 4) == ".out") continue;
    auto read = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    std::string a = read(e.path()), b = read(root / "1" / name);
    // outputs quote their own paths; normalise the run directory
    auto norm = [&](std::string s, const std::string& dir) {
      for (size_t pos; (pos = s.find(dir)) != std::string::npos;) s.replace(pos, dir.size(), "<dir>/");
      return s;
    };
    a = norm(a, (root / "0").string() + "/");
    b = norm(b, (root / "1").string() + "/");
    ++compared;
    if (a != b) {
      all = false;
      os << name << " differs; ";
    }
  }
  os << compared << " outputs compared across two runs (single platform)";
  return {all, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int workers = 1, seeds14 = 400;
  long long budget14 = 20000;
  std::vector<int> only, allow_fail;
  std::string cli =
#ifdef KFACTOR_CLI_PATH
      KFACTOR_CLI_PATH;
#else
      "";
#endif
  app.add_option("--workers", workers, "threads for the crossing runs");
  app.add_option("--seeds14", seeds14, "seeds per family for criterion 14");
  app.add_option("--budget14", budget14, "factor-engine budget for criterion 14");
  app.add_option("--only", only, "run just these criteria");
  app.add_option("--allow-fail", allow_fail, "criteria whose FAIL does not change the exit status");
  app.add_option("--cli", cli, "path to the kfactor tool");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<int, std::function<CritResult()>>> all = {
      {1, criterion1},
      {2, criterion2},
      {3, criterion3},
      {4, criterion4},
      {5, criterion5},
      {6, criterion6},
      {7, criterion7},
      {8, criterion8},
      {9, criterion9},
      {10, criterion10},
      {11, criterion11},
      {12, criterion12},
      {13, criterion13},
      {14, [&] { return criterion14(seeds14, workers, budget14); }},
      {15, [&] { return criterion15(cli); }},
  };
  int hard_fail = 0;
  for (auto& [id, fn] : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    CritResult o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    bool allowed = std::find(allow_fail.begin(), allow_fail.end(), id) != allow_fail.end();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail
              << (!o.pass && allowed ? " [known failure]" : "") << std::endl;
    if (!o.pass && !allowed) ++hard_fail;
  }
  return hard_fail == 0 ? 0 : 1;
}
