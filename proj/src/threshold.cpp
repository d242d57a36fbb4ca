#include "kfactor/threshold.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kfactor/errors.hpp"
#include "kfactor/perturbation.hpp"
#include "kfactor/rng.hpp"

namespace kfactor {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto body = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kSuccess: return "success";
    case Outcome::kFailure: return "failure";
    case Outcome::kUndecided: return "undecided";
  }
  return "?";
}

std::uint64_t host_seed(std::uint64_t trial_seed) { return derive_seed(trial_seed, 1); }
std::uint64_t perturbation_seed(std::uint64_t trial_seed) { return derive_seed(trial_seed, 2); }

namespace {

Outcome from_verdict(Verdict v) {
  switch (v) {
    case Verdict::kFound: return Outcome::kSuccess;
    case Verdict::kAbsent: return Outcome::kFailure;
    case Verdict::kBudgetExhausted: return Outcome::kUndecided;
  }
  return Outcome::kUndecided;
}

void check_spec(const HostSpec& spec) {
  if (spec.n < 1) throw ArgumentError("family needs n >= 1");
  if (spec.r < 2) throw ArgumentError("family needs r >= 2");
}

TrialResult solve(const Graph& g, int r, long long budget) {
  FactorResult f = has_factor(g, r, budget);
  TrialResult t;
  t.outcome = from_verdict(f.verdict);
  t.reason = f.reason;
  t.nodes = f.nodes;
  return t;
}

}  // namespace

TrialResult trial(const HostSpec& spec, double p, std::uint64_t seed, long long budget) {
  check_spec(spec);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  HostSpec hs = spec;
  hs.seed = host_seed(seed);
  Host h;
  try {
    h = build_host(hs);
  } catch (const ConstructionFailure& e) {
    return TrialResult{Outcome::kUndecided, std::string("construction failed: ") + e.what(), 0};
  }
  Graph g = perturb(h.graph, p, PerturbationPlan{perturbation_seed(seed), 1}, 0);
  return solve(g, spec.r, budget);
}

SeedCrossing seed_crossing(const HostSpec& spec, std::uint64_t seed, double tol, long long budget) {
  check_spec(spec);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  SeedCrossing sc;
  sc.seed = seed;
  HostSpec hs = spec;
  hs.seed = host_seed(seed);
  Host h;
  try {
    h = build_host(hs);
  } catch (const ConstructionFailure& e) {
    sc.reason = std::string("construction failed: ") + e.what();
    return sc;
  }
  const Graph& host = h.graph;
  std::uint64_t ps = perturbation_seed(seed);
  struct Pair {
    double u;
    int a, b;
  };
  std::vector<Pair> non;
  for (int a = 0; a < host.n(); ++a)
    for (int b = a + 1; b < host.n(); ++b)
      if (!host.adjacent(a, b)) non.push_back({derive_uniform(ps, 0, a, b), a, b});
  std::sort(non.begin(), non.end(), [](const Pair& x, const Pair& y) {
    return std::tie(x.u, x.a, x.b) < std::tie(y.u, y.a, y.b);
  });
  int K = static_cast<int>(non.size());
  // G_i is the host plus the i smallest pairs: the graph for p in (U_i, U_{i+1}].
  auto pval = [&](int i) { return i == 0 ? 0.0 : non[i - 1].u; };
  std::map<int, Outcome> seen;
  auto at = [&](int i) {
    auto it = seen.find(i);
    if (it != seen.end()) return it->second;
    GraphBuilder b(host);
    for (int j = 0; j < i; ++j) b.add_edge(non[j].a, non[j].b);
    Outcome o = solve(std::move(b).build(), spec.r, budget).outcome;
    ++sc.solves;
    seen[i] = o;
    return o;
  };
  Outcome lo_o = at(0);
  if (lo_o != Outcome::kFailure) {
    sc.reason = lo_o == Outcome::kSuccess ? "factor present at p = 0" : "undecided at p = 0";
    return sc;
  }
  Outcome hi_o = at(K);
  if (hi_o != Outcome::kSuccess) {
    sc.reason = hi_o == Outcome::kFailure ? "no factor at p = 1" : "undecided at p = 1";
    return sc;
  }
  int lo = 0, hi = K;
  while (hi - lo > 1 && !(pval(lo) > 0.0 && pval(hi) <= pval(lo) * (1.0 + tol))) {
    int mid = lo + (hi - lo) / 2;
    Outcome o = at(mid);
    if (o == Outcome::kUndecided) {
      sc.lo = pval(lo);
      sc.hi = pval(hi);
      sc.reason = "undecided at p = " + format_p(pval(mid));
      return sc;
    }
    if (o == Outcome::kSuccess) hi = mid;
    else lo = mid;
  }
  sc.decided = true;
  sc.lo = pval(lo);
  sc.hi = pval(hi);
  sc.p_star = sc.hi;
  return sc;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double h = (static_cast<double>(v.size()) - 1.0) * q;
  auto lo = static_cast<size_t>(std::floor(h));
  size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

CrossingEstimate crossing(const HostSpec& spec, int seeds, double tol, long long budget,
                          std::uint64_t master, int workers) {
  if (seeds < 1) throw ArgumentError("need at least one seed");
  CrossingEstimate est;
  est.n = spec.n;
  est.seeds.resize(seeds);
  parallel_for(seeds, workers, [&](int i) {
    est.seeds[i] = seed_crossing(spec, derive_seed(master, static_cast<std::uint64_t>(i)), tol,
                                 budget);
  });
  std::vector<double> ps;
  for (const auto& s : est.seeds)
    if (s.decided) ps.push_back(s.p_star);
  est.decided = static_cast<int>(ps.size());
  est.median = quantile(ps, 0.5);
  est.q1 = quantile(ps, 0.25);
  est.q3 = quantile(ps, 0.75);
  return est;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ArgumentError("need at least three points");
  std::set<double> ns;
  for (auto [n, p] : points) {
    if (!(n > 0.0) || !(p > 0.0)) throw ArgumentError("points need n > 0 and p > 0");
    ns.insert(n);
  }
  if (ns.size() != points.size()) throw ArgumentError("n values must be distinct");
  double k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (auto [n, p] : points) {
    sx += std::log(n);
    sy += std::log(p);
  }
  double mx = sx / k, my = sy / k, sxx = 0, sxy = 0;
  for (auto [n, p] : points) {
    double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p) - my);
  }
  ExponentFit f;
  f.points = static_cast<int>(points.size());
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (auto [n, p] : points) {
    double e = std::log(p) - (f.intercept + f.slope * std::log(n));
    sse += e * e;
  }
  f.stderr_slope = std::sqrt(sse / (k - 2.0) / sxx);
  return f;
}

std::string format_p(double p) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, r.ptr);
}

std::pair<double, double> wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  double n = trials, ph = successes / n, z2 = z * z;
  double centre = (ph + z2 / (2 * n)) / (1 + z2 / n);
  double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

SweepRecord make_record(const std::string& family, int n, double p, int trials, int successes,
                        int undecided) {
  SweepRecord r;
  r.family = family;
  r.n = n;
  r.p = p;
  r.trials = trials;
  r.successes = successes;
  r.budget_exhausted = undecided;
  int decided = trials - undecided;
  r.phat = decided > 0 ? static_cast<double>(successes) / decided : 0.0;
  auto [lo, hi] = wilson_interval(successes, decided);
  r.wilson_lo = lo;
  r.wilson_hi = hi;
  return r;
}

bool record_less(const SweepRecord& a, const SweepRecord& b) {
  return std::tie(a.family, a.n, a.p) < std::tie(b.family, b.n, b.p);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRecord>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += r.family + "," + std::to_string(r.n) + "," + format_p(r.p) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.successes) + "," +
           std::to_string(r.budget_exhausted) + "," + fixed6(r.phat) + "," + fixed6(r.wilson_lo) +
           "," + fixed6(r.wilson_hi) + "\n";
  }
  return out;
}

std::vector<SweepRecord> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader)
    throw InputFormatError("sweep CSV header mismatch", 1);
  std::vector<SweepRecord> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 9) throw InputFormatError("sweep CSV row needs 9 fields", lineno);
    try {
      SweepRecord r;
      r.family = f[0];
      r.n = std::stoi(f[1]);
      r.p = std::stod(f[2]);
      r.trials = std::stoi(f[3]);
      r.successes = std::stoi(f[4]);
      r.budget_exhausted = std::stoi(f[5]);
      r.phat = std::stod(f[6]);
      r.wilson_lo = std::stod(f[7]);
      r.wilson_hi = std::stod(f[8]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw InputFormatError("bad number in sweep CSV", lineno);
    }
  }
  return rows;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  static const std::set<std::string> top = {"families", "n", "p", "p_grid", "trials",
                                            "seed", "budget", "workers", "output"};
  static const std::set<std::string> fam = {"label", "family", "r", "s", "t", "m", "gamma"};
  for (auto& [k, v] : j.items())
    if (!top.count(k)) throw ArgumentError("unknown config field '" + k + "'");
  SweepConfig cfg;
  try {
    if (!j.contains("families") || !j["families"].is_array() || j["families"].empty())
      throw ArgumentError("config needs a nonempty 'families' array");
    for (const auto& f : j["families"]) {
      for (auto& [k, v] : f.items())
        if (!fam.count(k)) throw ArgumentError("unknown family field '" + k + "'");
      SweepFamily sf;
      sf.spec.family = f.at("family").get<std::string>();
      sf.label = f.value("label", sf.spec.family);
      sf.spec.r = f.value("r", 0);
      sf.spec.s = f.value("s", 0);
      sf.spec.t = f.value("t", 0);
      sf.spec.m = f.value("m", 0);
      sf.spec.gamma = f.value("gamma", 0.0);
      if (sf.label.find(',') != std::string::npos) throw ArgumentError("label may not contain ','");
      cfg.families.push_back(sf);
    }
    cfg.n = j.at("n").get<std::vector<int>>();
    if (j.contains("p") && j.contains("p_grid"))
      throw ArgumentError("give either 'p' or 'p_grid', not both");
    if (j.contains("p")) {
      cfg.p = j["p"].get<std::vector<double>>();
    } else if (j.contains("p_grid")) {
      const auto& g = j["p_grid"];
      double a = g.at("start").get<double>(), b = g.at("stop").get<double>();
      int count = g.at("count").get<int>();
      std::string scale = g.value("scale", "log");
      if (count < 0) throw ArgumentError("p_grid count must be nonnegative");
      for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        if (scale == "log") {
          if (!(a > 0.0 && b > 0.0)) throw ArgumentError("log grid needs positive ends");
          cfg.p.push_back(std::exp(std::log(a) + t * (std::log(b) - std::log(a))));
        } else if (scale == "linear") {
          cfg.p.push_back(a + t * (b - a));
        } else {
          throw ArgumentError("p_grid scale must be 'log' or 'linear'");
        }
      }
    } else {
      throw ArgumentError("config needs 'p' or 'p_grid'");
    }
    cfg.trials = j.value("trials", 1);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.budget = j.value("budget", kDefaultBudget);
    cfg.workers = j.value("workers", 1);
    cfg.output = j.value("output", std::string());
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config field has the wrong type: ") + e.what());
  }
  if (cfg.trials < 1) throw ArgumentError("trials must be at least 1");
  if (cfg.budget < 1) throw ArgumentError("budget must be positive");
  for (double p : cfg.p)
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("every p must lie in [0, 1]");
  for (int n : cfg.n)
    if (n < 1) throw ArgumentError("every n must be positive");
  return cfg;
}

SweepConfig read_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

SweepReport sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw ArgumentError("trials must be at least 1");
  SweepReport rep;
  std::vector<SweepRecord> rows;
  if (!cfg.output.empty() && std::filesystem::exists(cfg.output)) {
    std::ifstream in(cfg.output);
    std::stringstream ss;
    ss << in.rdbuf();
    if (!ss.str().empty()) rows = parse_sweep_csv(ss.str());
  }
  auto write = [&] {
    std::sort(rows.begin(), rows.end(), record_less);
    if (cfg.output.empty()) return;
    std::string tmp = cfg.output + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw ArgumentError("cannot write " + cfg.output);
      out << sweep_csv(rows);
      if (!out) throw ArgumentError("cannot write " + cfg.output);
    }
    std::filesystem::rename(tmp, cfg.output);
  };
  auto have = [&](const std::string& label, int n, double p) {
    std::string ps = format_p(p);
    return std::any_of(rows.begin(), rows.end(), [&](const SweepRecord& r) {
      return r.family == label && r.n == n && format_p(r.p) == ps;
    });
  };
  std::vector<int> ns = cfg.n;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<double> ps = cfg.p;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  for (const SweepFamily& fam : cfg.families) {
    for (int n : ns) {
      std::vector<double> todo;
      for (double p : ps) {
        if (have(fam.label, n, p)) ++rep.skipped;
        else todo.push_back(p);
      }
      if (todo.empty()) continue;
      HostSpec spec = fam.spec;
      spec.n = n;
      check_spec(spec);
      std::vector<std::vector<Outcome>> out(cfg.trials);
      std::uint64_t nseed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n));
      parallel_for(cfg.trials, cfg.workers, [&](int t) {
        std::uint64_t seed = derive_seed(nseed, static_cast<std::uint64_t>(t));
        HostSpec hs = spec;
        hs.seed = host_seed(seed);
        std::vector<Outcome>& res = out[t];
        Host h;
        try {
          h = build_host(hs);
        } catch (const ConstructionFailure&) {
          res.assign(todo.size(), Outcome::kUndecided);
          return;
        }
        PerturbationPlan plan{perturbation_seed(seed), 1};
        for (double p : todo)
          res.push_back(solve(perturb(h.graph, p, plan, 0), spec.r, cfg.budget).outcome);
        bool seen_success = false;
        for (size_t i = 0; i < res.size(); ++i) {
          if (res[i] == Outcome::kSuccess) seen_success = true;
          if (res[i] == Outcome::kFailure && seen_success)
            throw InternalError("non-monotone outcome for seed " + std::to_string(t) +
                                " at p = " + format_p(todo[i]));
        }
      });
      for (size_t i = 0; i < todo.size(); ++i) {
        int succ = 0, und = 0;
        for (int t = 0; t < cfg.trials; ++t) {
          if (out[t][i] == Outcome::kSuccess) ++succ;
          if (out[t][i] == Outcome::kUndecided) ++und;
        }
        rows.push_back(make_record(fam.label, n, todo[i], cfg.trials, succ, und));
        ++rep.computed;
      }
      write();
    }
  }
  std::sort(rows.begin(), rows.end(), record_less);
  if (!cfg.output.empty() && (!std::filesystem::exists(cfg.output))) write();
  rep.rows = rows;
  return rep;
}

std::vector<std::pair<double, double>> half_points(const std::vector<SweepRecord>& rows,
                                                  const std::string& family) {
  std::map<std::pair<std::string, int>, std::vector<SweepRecord>> by;
  for (const auto& r : rows)
    if (r.family == family && r.usable() && r.trials > r.budget_exhausted) by[{r.family, r.n}].push_back(r);
  std::vector<std::pair<double, double>> out;
  for (auto& [key, v] : by) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].phat < 0.5) continue;
      if (i == 0) {
        out.emplace_back(key.second, v[0].p);
      } else {
        const auto& a = v[i - 1];
        const auto& b = v[i];
        double t = (0.5 - a.phat) / (b.phat - a.phat);
        if (a.p > 0.0)
          out.emplace_back(key.second, std::exp(std::log(a.p) + t * (std::log(b.p) - std::log(a.p))));
        else
          out.emplace_back(key.second, a.p + t * (b.p - a.p));
      }
      break;
    }
  }
  return out;
}

}  // namespace kfactor
