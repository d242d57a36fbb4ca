// kfactor command-line tool. Every command prints JSON on stdout.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

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

using nlohmann::json;
using namespace kfactor;

namespace {

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string frac(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

json edges_json(const std::vector<Edge>& es) {
  json a = json::array();
  for (auto [u, v] : es) a.push_back({u, v});
  return a;
}

json mixed_json(const MixedFactor& f) {
  json qs = json::array();
  for (const QCopy& q : f.qs) qs.push_back({{"L", q.L}, {"M", q.M}, {"N", q.N}});
  auto [a, b] = f.index();
  return {{"s", f.s},           {"t", f.t},    {"singletons", f.singletons},
          {"edges", edges_json(f.edges)}, {"qs", qs}, {"index", {a, b}}};
}

json host_spec_json(const HostSpec& s) {
  return {{"family", s.family}, {"n", s.n}, {"r", s.r}, {"s", s.s}, {"t", s.t}, {"m", s.m},
          {"gamma", s.gamma}};
}

struct FamilyArgs {
  std::string family;
  int n = 0, r = 0, s = 0, t = 0, m = 0;
  double gamma = 0.0;
  void add(CLI::App* c, bool need_n = true) {
    c->add_option("--family", family, "host family")->required();
    auto* o = c->add_option("--n", n, "vertex count");
    if (need_n) o->required();
    c->add_option("--r", r, "clique order");
    c->add_option("--s", s, "parameter s");
    c->add_option("--t", t, "parameter t");
    c->add_option("--m", m, "parameter m");
    c->add_option("--gamma", gamma, "gamma");
  }
  HostSpec spec() const {
    HostSpec h;
    h.family = family;
    h.n = n;
    h.r = r;
    h.s = s;
    h.t = t;
    h.m = m;
    h.gamma = gamma;
    return h;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clique factors in randomly perturbed graphs"};
  app.require_subcommand(1);
  int exit_code = 0;

  // construct
  auto* construct = app.add_subcommand("construct", "build a host graph");
  FamilyArgs cf;
  std::uint64_t c_seed = 0;
  int c_retries = 20;
  double c_p = 0.0;
  int c_a = 0, c_b = 0;
  std::string c_out;
  cf.add(construct, false);
  construct->add_option("--seed", c_seed, "seed");
  construct->add_option("--max-retries", c_retries, "rejection-sampling retries");
  construct->add_option("--p", c_p, "edge probability (bipartite-random)");
  construct->add_option("--a", c_a, "first class size (bipartite-random)");
  construct->add_option("--b", c_b, "second class size (bipartite-random)");
  construct->add_option("-o,--output", c_out, "output edge list")->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "threshold formulas");
  bounds->require_subcommand(1);
  int b_s = 0;
  long long b_n = 0;
  auto* b_phi = bounds->add_subcommand("phi", "exponent phi(s)");
  b_phi->add_option("--s", b_s)->required();
  auto* b_ps = bounds->add_subcommand("ps", "probability scale p_s(n)");
  b_ps->add_option("--n", b_n)->required();
  b_ps->add_option("--s", b_s)->required();
  auto* b_janson = bounds->add_subcommand("janson", "moment quantities");
  std::string j_mode;
  long long j_nsub = 0, j_g = 0;
  double j_p = 0.0, j_C = 1.0, j_delta = 0.1, j_nu = 0.0;
  b_janson->add_option("--mode", j_mode)->required()->check(CLI::IsMember({"ks", "harvest", "divb"}));
  b_janson->add_option("--n", b_n);
  b_janson->add_option("--n-sub", j_nsub);
  b_janson->add_option("--s", b_s)->required();
  b_janson->add_option("--p", j_p);
  b_janson->add_option("--g", j_g);
  b_janson->add_option("--C", j_C);
  b_janson->add_option("--delta", j_delta);
  b_janson->add_option("--nu", j_nu);

  // perturb
  auto* pert = app.add_subcommand("perturb", "add seeded random edges");
  std::string in_path, out_path;
  double p_p = 0.0;
  std::uint64_t p_seed = 0;
  int p_round = 0, p_rounds = 1;
  pert->add_option("--input", in_path)->required();
  pert->add_option("--p", p_p)->required();
  pert->add_option("--seed", p_seed)->required();
  pert->add_option("--round", p_round);
  pert->add_option("--rounds", p_rounds);
  pert->add_option("-o,--output", out_path)->required();

  // factor
  auto* fac = app.add_subcommand("factor", "decide K_r-factor existence");
  int f_r = 0;
  bool f_count = false;
  long long f_budget = kDefaultBudget;
  fac->add_option("--input", in_path)->required();
  fac->add_option("--r", f_r)->required();
  fac->add_flag("--count", f_count, "also count factors (n <= 16)");
  fac->add_option("--budget", f_budget);

  // cover
  auto* cov = app.add_subcommand("cover", "local-search cover or sparse set");
  int cv_r = 0, cv_s = 0, cv_C = -1;
  double cv_delta = 0.0;
  std::uint64_t cv_seed = 1;
  bool cv_absorber = false;
  cov->add_option("--input", in_path)->required();
  cov->add_option("--r", cv_r)->required();
  cov->add_option("--s", cv_s)->required();
  cov->add_option("--delta", cv_delta)->required();
  cov->add_option("--seed", cv_seed);
  cov->add_option("--C", cv_C, "leftover constant (default 2(s+t)^2)");
  cov->add_flag("--absorber", cv_absorber, "set an absorber aside first");

  // harvest
  auto* hv = app.add_subcommand("harvest", "disjoint K_{s+1} copies in G plus random edges");
  int h_s = 2;
  long long h_g = 0;
  double h_p = 0.0, h_delta = 0.1;
  std::uint64_t h_seed = 0;
  std::string h_regime = "auto";
  hv->add_option("--input", in_path)->required();
  hv->add_option("--s", h_s)->required();
  hv->add_option("--g", h_g)->required();
  hv->add_option("--p", h_p)->required();
  hv->add_option("--seed", h_seed)->required();
  hv->add_option("--regime", h_regime)
      ->check(CLI::IsMember({"auto", "small-g", "main-WF", "greedy"}));
  hv->add_option("--delta", h_delta);

  // spread-test
  auto* sp = app.add_subcommand("spread-test", "spread check of the mu_C sampler on K_{n,n}");
  int sp_n = 0, sp_C = 0;
  long long sp_trials = 0, sp_pairs = 2000;
  std::uint64_t sp_seed = 1;
  sp->add_option("--n", sp_n)->required();
  sp->add_option("--C", sp_C)->required();
  sp->add_option("--trials", sp_trials)->required();
  sp->add_option("--pairs", sp_pairs);
  sp->add_option("--seed", sp_seed);

  // pack
  auto* pk = app.add_subcommand("pack", "K_2* packing of Q(s,t)");
  int pk_s = 0, pk_t = 0;
  pk->add_option("--s", pk_s)->required();
  pk->add_option("--t", pk_t)->required();

  // xcover
  auto* xc = app.add_subcommand("xcover", "sequential random cover of a vertex set");
  std::string xc_sets, xc_set = "A";
  int xc_m = 1, xc_s = 2, xc_t = 2, xc_limit = -1;
  long long xc_cap = 20000;
  std::uint64_t xc_seed = 1;
  xc->add_option("--input", in_path)->required();
  xc->add_option("--sets", xc_sets)->required();
  xc->add_option("--set", xc_set, "name of the set to cover");
  xc->add_option("--limit", xc_limit, "cover only the first K members");
  xc->add_option("--m", xc_m);
  xc->add_option("--s", xc_s);
  xc->add_option("--t", xc_t);
  xc->add_option("--cap", xc_cap, "copies listed per step");
  xc->add_option("--seed", xc_seed);

  // classify
  auto* cl = app.add_subcommand("classify", "extremal or non-extremal");
  double cl_alpha = 0, cl_beta = 0, cl_gamma = 0;
  int cl_budget = 50;
  std::uint64_t cl_seed = 1;
  cl->add_option("--input", in_path)->required();
  cl->add_option("--alpha", cl_alpha)->required();
  cl->add_option("--beta", cl_beta)->required();
  cl->add_option("--gamma", cl_gamma)->required();
  cl->add_option("--budget", cl_budget, "local-search restarts");
  cl->add_option("--seed", cl_seed);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Monte Carlo success curves");
  std::string sw_config, sw_out;
  int sw_workers = 0;
  sw->add_option("--config", sw_config)->required();
  sw->add_option("-o,--output", sw_out);
  sw->add_option("--workers", sw_workers);

  // crossing
  auto* cr = app.add_subcommand("crossing", "per-seed crossing points");
  FamilyArgs crf;
  int cr_seeds = 0, cr_workers = 1;
  double cr_tol = 0.02;
  long long cr_budget = kDefaultBudget;
  std::uint64_t cr_seed = 1;
  crf.add(cr);
  cr->add_option("--seeds", cr_seeds)->required();
  cr->add_option("--tol", cr_tol);
  cr->add_option("--budget", cr_budget);
  cr->add_option("--seed", cr_seed, "master seed");
  cr->add_option("--workers", cr_workers);

  // fit
  auto* ft = app.add_subcommand("fit", "slope of ln p* against ln n");
  std::string ft_family;
  ft->add_option("--input", in_path)->required();
  ft->add_option("--family", ft_family, "family label in a sweep CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) {
      Host h;
      if (cf.family == "bipartite-random") {
        h = bipartite_random(c_a, c_b, c_p, c_seed);
      } else {
        HostSpec spec = cf.spec();
        spec.seed = c_seed;
        spec.max_retries = c_retries;
        spec.p = c_p;
        h = build_host(spec);
      }
      write_edge_list_file(c_out, h.graph);
      write_sets_file(c_out + ".sets", h.sets);
      json sets = json::object();
      for (const auto& [name, vs] : h.sets) sets[name] = vs.size();
      json j = {{"family", cf.family}, {"n", h.graph.n()}, {"m", h.graph.m()},
                {"min_degree", h.graph.n() ? h.graph.min_degree() : 0}, {"sets", sets},
                {"output", c_out}};
      if (cf.family == "pseudorandom-lower") {
        j["L_used"] = h.L_used;
        j["attempts"] = h.attempts;
      }
      for (const auto& [k, v] : h.info) j["info"][k] = v;
      print(j);
    } else if (b_phi->parsed()) {
      Rational q = phi(b_s);
      print({{"s", b_s}, {"phi", frac(q)}, {"value", phi_value(b_s)}});
    } else if (b_ps->parsed()) {
      print({{"n", b_n}, {"s", b_s}, {"p_s", p_s(b_n, b_s)}});
    } else if (b_janson->parsed()) {
      if (j_mode == "ks") {
        JansonReport r = expected_ks_count(j_nsub, j_p, b_s);
        print({{"mode", "ks"}, {"n_sub", j_nsub}, {"p", j_p}, {"s", b_s}, {"mu", r.mu},
               {"delta_bar", r.delta_bar}, {"exponent_bound", r.exponent_bound}});
      } else if (j_mode == "harvest") {
        HarvestMoments h = harvest_moments(b_n, j_g, b_s, j_C, j_delta);
        json terms = json::array();
        for (const auto& t : h.terms)
          terms.push_back({{"i", t.i}, {"j", t.j}, {"g_pow", t.g_pow}, {"n_pow", t.n_pow},
                           {"p_pow", t.p_pow}, {"delta_pow", t.delta_pow}, {"value", t.value},
                           {"growth", frac(t.growth)}});
        print({{"mode", "harvest"}, {"n", b_n}, {"g", j_g}, {"s", b_s}, {"C", j_C}, {"p", h.p},
               {"W", h.W}, {"kappa", h.kappa}, {"d0", h.d0}, {"mu", h.report.mu},
               {"delta_bar", h.report.delta_bar}, {"exponent_bound", h.report.exponent_bound},
               {"terms", terms}});
      } else {
        print({{"mode", "divb"}, {"n", b_n}, {"nu", j_nu}, {"s", b_s}, {"C", j_C},
               {"constant", "1/64"}, {"exponent", divb_bound(b_n, j_nu, b_s, j_C)}});
      }
    } else if (pert->parsed()) {
      Graph g = read_edge_list_file(in_path);
      if (p_round < 0 || p_round >= p_rounds) throw ArgumentError("round must lie in [0, rounds)");
      Graph out = perturb(g, p_p, PerturbationPlan{p_seed, p_rounds}, p_round);
      write_edge_list_file(out_path, out);
      print({{"n", out.n()}, {"m_before", g.m()}, {"m_after", out.m()}, {"p", p_p},
             {"seed", p_seed}, {"round", p_round}, {"output", out_path}});
    } else if (fac->parsed()) {
      Graph g = read_edge_list_file(in_path);
      FactorResult r = has_factor(g, f_r, f_budget);
      json j = {{"verdict", verdict_name(r.verdict)}, {"r", f_r}, {"n", g.n()},
                {"parts", r.parts}, {"reason", r.reason}, {"nodes", r.nodes},
                {"method", r.method}};
      if (f_count) j["count"] = count_factors(g, f_r);
      print(j);
      exit_code = r.verdict == Verdict::kFound ? 0 : r.verdict == Verdict::kAbsent ? 1 : 2;
    } else if (cov->parsed()) {
      Graph g = read_edge_list_file(in_path);
      CoverOptions opt;
      opt.C = cv_C;
      if (cv_absorber) {
        ComposeResult r = compose_cover(g, cv_r, cv_s, cv_delta, cv_seed, opt);
        json j = {{"verdict", r.covered ? "covered" : "sparse"}, {"g_order", r.g_order},
                  {"absorber", r.absorber.cliques}, {"factor", mixed_json(r.factor)},
                  {"C", r.C}};
        if (!r.covered) {
          j["sparse"] = r.sparse;
          j["sparse_size"] = r.sparse.size();
          j["sparse_edges"] = r.sparse_edges;
          j["sparse_source"] = r.sparse_source;
        }
        print(j);
      } else {
        CoverResult r = cover_or_sparse(g, cv_r, cv_s, cv_delta, opt);
        json j = {{"verdict", r.covered ? "covered" : "sparse"}, {"C", r.C},
                  {"leftover", r.factor.singletons.size()}, {"moves", r.moves},
                  {"move_counts", r.move_counts}, {"factor", mixed_json(r.factor)}};
        if (!r.covered) {
          j["sparse"] = r.sparse;
          j["sparse_size"] = r.sparse.size();
          j["sparse_edges"] = r.sparse_edges;
          j["x"] = r.x;
          j["y"] = r.y;
        }
        print(j);
      }
    } else if (hv->parsed()) {
      HarvestInstance inst;
      inst.host = read_edge_list_file(in_path);
      inst.g = h_g;
      inst.s = h_s;
      inst.p = h_p;
      inst.plan = PerturbationPlan{h_seed, 1};
      inst.regime = parse_regime(h_regime);
      inst.delta = h_delta;
      HarvestResult r = harvest(inst);
      print({{"ok", r.ok},
             {"regime", regime_name(r.regime)},
             {"copies", r.copies},
             {"reason", r.reason},
             {"stages",
              {{"random_edges", r.random_edges}, {"peeled", r.peeled}, {"target", r.target},
               {"working_g", r.working_g}, {"partition_attempts", r.partition_attempts},
               {"partition_swaps", r.partition_swaps}, {"A", r.a}, {"B", r.b}, {"D", r.d},
               {"d0", r.d0}, {"W", r.W}, {"W_tilde", r.W_tilde}, {"F_tilde", r.F_tilde},
               {"F1_tilde", r.F1_tilde}, {"survivors", r.survivors}}}});
    } else if (sp->parsed()) {
      Host h = bipartite_random(sp_n, sp_n, 1.0, 0);
      MuCSampler smp(h.graph, h.set("A"), h.set("B"), sp_C);
      SpreadCheckOptions opt;
      opt.samples = sp_trials;
      opt.pairs = sp_pairs;
      opt.pair_factor = 1.5;
      opt.seed = sp_seed;
      double q = 4.0 * sp_C / sp_n;
      SpreadReport r = verify_spread(
          h.graph, [&](std::uint64_t s) { return smp.sample(s); }, q, opt);
      print({{"n", sp_n}, {"C", sp_C}, {"q", q}, {"samples", r.samples},
             {"attempts", r.attempts},
             {"success_rate", r.attempts ? static_cast<double>(r.samples) / r.attempts : 0.0},
             {"max_single", r.max_single},
             {"max_single_edge", {r.max_single_edge.first, r.max_single_edge.second}},
             {"max_pair", r.max_pair}, {"pair_bound", 1.5 * q * q}, {"pairs", r.pairs},
             {"flags", r.flags.size()}});
    } else if (pk->parsed()) {
      WeightedPacking p = k2star_packing(pk_s, pk_t);
      json copies = json::array();
      for (const K2Copy& c : p.copies) copies.push_back({c.sigma, c.tau});
      json weights = json::array();
      for (const Rational& w : packing_weights(p)) weights.push_back(frac(w));
      json sets = json::object();
      for (const auto& [name, vs] : p.sets) sets[name] = vs;
      print({{"s", pk_s}, {"t", pk_t}, {"w_sigma", frac(p.w_sigma)}, {"w_tau", frac(p.w_tau)},
             {"sets", sets}, {"copies", copies}, {"copy_count", p.copies.size()},
             {"vertex_weights", weights}, {"residue", frac(packing_residue(p))}});
    } else if (xc->parsed()) {
      Graph g = read_edge_list_file(in_path);
      NamedSets sets = read_sets_file(xc_sets);
      std::vector<int> members;
      bool found = false;
      for (const auto& [name, vs] : sets)
        if (name == xc_set) {
          members = vs;
          found = true;
        }
      if (!found) throw ArgumentError("no set named " + xc_set);
      if (xc_limit >= 0 && static_cast<size_t>(xc_limit) < members.size()) members.resize(xc_limit);
      XCoverResult r = x_cover_process(g, VertexSet::of(g.n(), members),
                                       b_mst_provider(g, xc_m, xc_s, xc_t, xc_cap), xc_seed);
      json copies = json::array();
      for (const BCopy& b : r.copies) copies.push_back({{"T", b.T}, {"S", b.S}});
      json j = {{"ok", r.ok}, {"covered", members}, {"copies", copies},
                {"candidates", r.candidates}, {"order", r.order}, {"reason", r.reason}};
      if (r.stuck >= 0) j["stuck"] = r.stuck;
      print(j);
    } else if (cl->parsed()) {
      Graph g = read_edge_list_file(in_path);
      SparseSearchOptions opt;
      opt.restarts = cl_budget;
      opt.seed = cl_seed;
      Classification c = classify(g, cl_alpha, cl_beta, cl_gamma, opt);
      json j = {{"verdict", c.verdict == Case::kA ? "A" : "B"}, {"alpha", c.alpha},
                {"beta", c.beta}, {"gamma", c.gamma}, {"reason", c.reason}};
      if (c.verdict == Case::kA) {
        j["A1"] = c.a1;
        j["A2"] = c.a2;
        j["U"] = c.U;
        j["W"] = c.W;
        j["check"] = {{"i", c.check.slack_i}, {"ii", c.check.slack_ii},
                      {"iii", c.check.slack_iii}, {"size", c.check.slack_size},
                      {"missing_cross", c.check.missing_cross}};
      } else {
        j["witness"] = c.witness;
        j["witness_edges"] = c.witness_edges;
        j["exact"] = c.exact;
      }
      print(j);
    } else if (sw->parsed()) {
      SweepConfig cfg = read_sweep_config(sw_config);
      if (!sw_out.empty()) cfg.output = sw_out;
      if (sw_workers > 0) cfg.workers = sw_workers;
      if (cfg.output.empty()) throw ArgumentError("sweep needs an output path");
      SweepReport r = sweep(cfg);
      json unusable = json::array();
      for (const auto& row : r.rows)
        if (!row.usable()) unusable.push_back({{"family", row.family}, {"n", row.n}, {"p", row.p}});
      print({{"output", cfg.output}, {"rows", r.rows.size()}, {"computed", r.computed},
             {"skipped", r.skipped}, {"unusable", unusable}});
    } else if (cr->parsed()) {
      HostSpec spec = crf.spec();
      CrossingEstimate e = crossing(spec, cr_seeds, cr_tol, cr_budget, cr_seed, cr_workers);
      json seeds = json::array();
      for (const auto& s : e.seeds) {
        json js = {{"seed", s.seed}, {"decided", s.decided}, {"solves", s.solves}};
        if (s.decided) js["p_star"] = s.p_star;
        js["lo"] = s.lo;
        js["hi"] = s.hi;
        if (!s.reason.empty()) js["reason"] = s.reason;
        seeds.push_back(js);
      }
      print({{"spec", host_spec_json(spec)}, {"tol", cr_tol}, {"budget", cr_budget},
             {"decided", e.decided}, {"discarded", cr_seeds - e.decided}, {"median", e.median},
             {"q1", e.q1}, {"q3", e.q3}, {"seeds", seeds}});
    } else if (ft->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw ArgumentError("cannot read " + in_path);
      std::stringstream ss;
      ss << in.rdbuf();
      std::string text = ss.str();
      std::vector<std::pair<double, double>> pts;
      std::string label = ft_family;
      if (text.rfind(kSweepHeader, 0) == 0) {
        auto rows = parse_sweep_csv(text);
        if (label.empty() && !rows.empty()) label = rows.front().family;
        pts = half_points(rows, label);
      } else {
        std::istringstream ls(text);
        std::string line;
        std::getline(ls, line);
        if (line != "n,p_star") throw InputFormatError("expected a sweep CSV or 'n,p_star'", 1);
        long lineno = 1;
        while (std::getline(ls, line)) {
          ++lineno;
          if (line.empty()) continue;
          auto comma = line.find(',');
          if (comma == std::string::npos) throw InputFormatError("expected 'n,p_star'", lineno);
          try {
            pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
          } catch (const std::logic_error&) {
            throw InputFormatError("bad number", lineno);
          }
        }
      }
      ExponentFit f = fit_exponent(pts);
      json points = json::array();
      for (auto [n, p] : pts) points.push_back({n, p});
      json j = {{"slope", f.slope}, {"intercept", f.intercept}, {"stderr", f.stderr_slope},
                {"points", points}};
      if (!label.empty()) j["family"] = label;
      print(j);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
