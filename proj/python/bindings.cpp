#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kfactor/bounds.hpp"
#include "kfactor/constructions.hpp"
#include "kfactor/errors.hpp"
#include "kfactor/extremal_cover.hpp"
#include "kfactor/factor.hpp"
#include "kfactor/graph.hpp"
#include "kfactor/harvest.hpp"
#include "kfactor/partition.hpp"
#include "kfactor/perturbation.hpp"
#include "kfactor/spread.hpp"
#include "kfactor/threshold.hpp"

namespace py = pybind11;
using namespace kfactor;

namespace {

py::tuple frac(const Rational& q) { return py::make_tuple(q.numerator(), q.denominator()); }

py::dict host_dict(const Host& h) {
  py::dict d;
  d["graph"] = h.graph;
  py::dict sets;
  for (const auto& [name, vs] : h.sets) sets[py::str(name)] = vs;
  d["sets"] = sets;
  d["info"] = h.info;
  d["attempts"] = h.attempts;
  d["L_used"] = h.L_used;
  return d;
}

py::dict mixed_dict(const MixedFactor& f) {
  py::dict d;
  d["singletons"] = f.singletons;
  d["edges"] = f.edges;
  py::list qs;
  for (const auto& q : f.qs) {
    py::dict e;
    e["L"] = q.L;
    e["M"] = q.M;
    e["N"] = q.N;
    qs.append(e);
  }
  d["qs"] = qs;
  return d;
}

HostSpec make_spec(const std::string& family, int n, int r, int s, int t, int m, double gamma, double p,
                   std::uint64_t seed, int max_retries) {
  HostSpec h;
  h.family = family;
  h.n = n;
  h.r = r;
  h.s = s;
  h.t = t;
  h.m = m;
  h.gamma = gamma;
  h.p = p;
  h.seed = seed;
  h.max_retries = max_retries;
  return h;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "K_r-factors in randomly perturbed graphs";

  auto base = py::register_exception<Error>(mod, "KFactorError");
  py::register_exception<InputFormatError>(mod, "InputFormatError", base.ptr());
  py::register_exception<ArgumentError>(mod, "ArgumentError", base.ptr());
  py::register_exception<DomainError>(mod, "DomainError", base.ptr());
  py::register_exception<SizeLimitError>(mod, "SizeLimitError", base.ptr());
  py::register_exception<RejectedInput>(mod, "RejectedInput", base.ptr());
  py::register_exception<ConstructionFailure>(mod, "ConstructionFailure", base.ptr());

  py::class_<Graph>(mod, "Graph")
      .def(py::init<int>(), py::arg("n") = 0)
      .def_static("from_edges", &from_edge_list, py::arg("n"), py::arg("edges"))
      .def_static("parse", [](const std::string& text) {
        std::istringstream in(text);
        return parse_edge_list(in);
      })
      .def_static("read", &read_edge_list_file)
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("adjacent", &Graph::adjacent)
      .def("degree", &Graph::degree)
      .def("min_degree", &Graph::min_degree)
      .def("max_degree", &Graph::max_degree)
      .def("edges", &Graph::edges)
      .def("neighbours", [](const Graph& g, int v) { return g.neighbours(v).to_vector(); })
      .def("is_clique", &Graph::is_clique)
      .def("induced", &Graph::induced)
      .def("complement", &Graph::complement)
      .def("to_text", &to_edge_list_text)
      .def("write", [](const Graph& g, const std::string& path) { write_edge_list_file(path, g); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) + ">";
      });

  mod.def("overlay", &overlay);
  mod.def("complete_graph", &complete_graph);
  mod.def("empty_graph", &empty_graph);
  mod.def("cycle_graph", &cycle_graph);

  mod.def(
      "build_host",
      [](const std::string& family, int n, int r, int s, int t, int m, double gamma, double p, std::uint64_t seed,
         int max_retries) {
        return host_dict(build_host(make_spec(family, n, r, s, t, m, gamma, p, seed, max_retries)));
      },
      py::arg("family"), py::arg("n") = 0, py::arg("r") = 0, py::arg("s") = 0, py::arg("t") = 0, py::arg("m") = 0,
      py::arg("gamma") = 0.0, py::arg("p") = 0.0, py::arg("seed") = 0, py::arg("max_retries") = 20);
  mod.def("random_regular", &random_regular, py::arg("n"), py::arg("d"), py::arg("seed"));

  mod.def("phi", [](int s) { return frac(phi(s)); });
  mod.def("phi_value", &phi_value);
  mod.def("p_s", &p_s, py::arg("n"), py::arg("s"));
  mod.def("nps_exponent", [](int s) { return frac(nps_exponent(s)); });
  mod.def("nps_value", &nps_value);
  mod.def(
      "expected_ks_count",
      [](long long n_sub, double p, int s) {
        auto r = expected_ks_count(n_sub, p, s);
        py::dict d;
        d["mu"] = r.mu;
        d["delta_bar"] = r.delta_bar;
        d["exponent_bound"] = r.exponent_bound;
        return d;
      },
      py::arg("n_sub"), py::arg("p"), py::arg("s"));

  mod.def("derive_uniform", &derive_uniform, py::arg("seed"), py::arg("round"), py::arg("u"), py::arg("v"));
  mod.def(
      "perturb",
      [](const Graph& g, double p, std::uint64_t seed, int rounds, int round) {
        return perturb(g, p, PerturbationPlan{seed, rounds}, round);
      },
      py::arg("g"), py::arg("p"), py::arg("seed"), py::arg("rounds") = 1, py::arg("round") = 0);

  mod.def(
      "has_factor",
      [](const Graph& g, int r, long long budget) {
        auto res = has_factor(g, r, budget);
        py::dict d;
        d["verdict"] = verdict_name(res.verdict);
        d["parts"] = res.parts;
        d["reason"] = res.reason;
        d["nodes"] = res.nodes;
        d["method"] = res.method;
        return d;
      },
      py::arg("g"), py::arg("r"), py::arg("budget") = kDefaultBudget);
  mod.def("verify_factor", &verify_factor);
  mod.def("count_factors", &count_factors);

  mod.def(
      "cover_or_sparse",
      [](const Graph& g, int r, int s, double delta) {
        auto res = cover_or_sparse(g, r, s, delta);
        py::dict d;
        d["covered"] = res.covered;
        d["factor"] = mixed_dict(res.factor);
        d["sparse"] = res.sparse;
        d["sparse_edges"] = res.sparse_edges;
        d["C"] = res.C;
        d["moves"] = res.moves;
        return d;
      },
      py::arg("g"), py::arg("r"), py::arg("s"), py::arg("delta"));

  mod.def(
      "classify",
      [](const Graph& g, double alpha, double beta, double gamma) {
        auto c = classify(g, alpha, beta, gamma);
        py::dict d;
        d["case"] = c.verdict == Case::kA ? "A" : "B";
        d["a1"] = c.a1;
        d["a2"] = c.a2;
        d["witness"] = c.witness;
        d["witness_edges"] = c.witness_edges;
        d["exact"] = c.exact;
        d["reason"] = c.reason;
        return d;
      },
      py::arg("g"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  mod.def(
      "harvest",
      [](const Graph& host, long long g, int s, double p, std::uint64_t seed, const std::string& regime,
         double delta) {
        HarvestInstance inst;
        inst.host = host;
        inst.g = g;
        inst.s = s;
        inst.p = p;
        inst.plan = {seed, 1};
        inst.regime = parse_regime(regime);
        inst.delta = delta;
        auto r = harvest(inst);
        py::dict d;
        d["ok"] = r.ok;
        d["copies"] = r.copies;
        d["regime"] = regime_name(r.regime);
        d["reason"] = r.reason;
        return d;
      },
      py::arg("host"), py::arg("g"), py::arg("s"), py::arg("p"), py::arg("seed") = 0,
      py::arg("regime") = "auto", py::arg("delta") = 0.1);

  mod.def("k2star_packing", [](int s, int t) {
    auto p = k2star_packing(s, t);
    py::dict d;
    d["copies"] = p.copies.size();
    d["w_sigma"] = frac(p.w_sigma);
    d["w_tau"] = frac(p.w_tau);
    py::list w;
    for (const auto& x : packing_weights(p)) w.append(frac(x));
    d["weights"] = w;
    d["residue"] = frac(packing_residue(p));
    return d;
  });

  mod.def(
      "trial",
      [](const std::string& family, int n, int r, int s, double gamma, double p, std::uint64_t seed,
         long long budget) {
        auto t = trial(make_spec(family, n, r, s, 0, 0, gamma, 0.0, 0, 20), p, seed, budget);
        return std::string(outcome_name(t.outcome));
      },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("s") = 0, py::arg("gamma") = 0.0, py::arg("p"),
      py::arg("seed"), py::arg("budget") = kDefaultBudget);
  mod.def(
      "crossing",
      [](const std::string& family, int n, int r, int s, double gamma, int seeds, double tol, long long budget,
         std::uint64_t master, int workers) {
        auto e = crossing(make_spec(family, n, r, s, 0, 0, gamma, 0.0, 0, 20), seeds, tol, budget, master,
                          workers);
        py::dict d;
        d["decided"] = e.decided;
        d["median"] = e.median;
        d["q1"] = e.q1;
        d["q3"] = e.q3;
        std::vector<double> ps;
        for (const auto& sc : e.seeds)
          if (sc.decided) ps.push_back(sc.p_star);
        d["p_star"] = ps;
        return d;
      },
      py::arg("family"), py::arg("n"), py::arg("r"), py::arg("s") = 0, py::arg("gamma") = 0.0,
      py::arg("seeds") = 10, py::arg("tol") = 0.02, py::arg("budget") = kDefaultBudget, py::arg("master") = 1,
      py::arg("workers") = 1);
  mod.def("fit_exponent", [](const std::vector<std::pair<double, double>>& pts) {
    auto f = fit_exponent(pts);
    py::dict d;
    d["slope"] = f.slope;
    d["intercept"] = f.intercept;
    d["stderr_slope"] = f.stderr_slope;
    d["points"] = f.points;
    return d;
  });
}
