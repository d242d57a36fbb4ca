import itertools
import math
import random

import networkx as nx
import pytest

import kfactor


def gnp(n, p, seed):
    rng = random.Random(seed)
    return [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]


def test_graph_roundtrip():
    g = kfactor.Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert g.n == 5 and g.m == 3
    assert g.adjacent(2, 1)
    assert kfactor.Graph.parse(g.to_text()) == g
    assert g.neighbours(1) == [0, 2]


def test_bad_edge_list_raises():
    with pytest.raises(kfactor.KFactorError):
        kfactor.Graph.parse("3 1\n0 7\n")


def test_phi_and_nps():
    assert kfactor.phi(3) == (3, 5)
    assert kfactor.nps_exponent(4) == (0, 1)
    assert abs(kfactor.nps_value(10**4, 3) - 1.0) < 1e-12


def test_matching_agrees_with_networkx():
    for seed in range(40):
        edges = gnp(10, 0.3, seed)
        g = kfactor.Graph.from_edges(10, edges)
        ref = nx.Graph()
        ref.add_nodes_from(range(10))
        ref.add_edges_from(edges)
        perfect = len(nx.max_weight_matching(ref, maxcardinality=True)) == 5
        res = kfactor.has_factor(g, 2)
        assert (res["verdict"] == "found") == perfect
        if perfect:
            assert kfactor.verify_factor(g, 2, res["parts"])


def test_triangle_factor_count_on_k6():
    # K6 splits into two triangles in 10 ways
    assert kfactor.count_factors(kfactor.complete_graph(6), 3) == 10


def test_constructions():
    h = kfactor.build_host("f-gamma", n=40, r=4, s=2, gamma=0.05)
    a = h["sets"]["A"]
    g = h["graph"]
    assert all(not g.adjacent(u, v) for u, v in itertools.combinations(a, 2))
    hs = kfactor.build_host("hs-tight", n=12, r=3)["graph"]
    assert kfactor.has_factor(hs, 3)["verdict"] == "absent"


def test_perturb_is_monotone_in_p():
    g = kfactor.empty_graph(30)
    lo = set(kfactor.perturb(g, 0.1, seed=5).edges())
    hi = set(kfactor.perturb(g, 0.3, seed=5).edges())
    assert lo <= hi
    u = kfactor.derive_uniform(5, 0, 2, 9)
    assert ((2, 9) in lo) == (u < 0.1)


def test_cover_complete_graph():
    res = kfactor.cover_or_sparse(kfactor.complete_graph(40), 4, 3, 0.05)
    assert res["covered"]
    assert res["factor"]["singletons"] == []


def test_classify_dense_is_case_b():
    assert kfactor.classify(kfactor.complete_graph(40), 0.5, 0.08, 0.05)["case"] == "B"


def test_harvest_triangles_are_cliques():
    host = kfactor.random_regular(300, 10, 1)
    p = 20 * math.log(300) / 300
    res = kfactor.harvest(host, 10, 2, p, seed=3)
    pert = kfactor.perturb(host, p, seed=3)
    seen = set()
    for c in res["copies"]:
        assert pert.is_clique(c)
        assert not seen & set(c)
        seen |= set(c)
    assert res["ok"]


def test_packing_exact():
    p = kfactor.k2star_packing(5, 3)
    assert p["residue"] == (0, 1)
    assert all(w == (1, 1) for w in p["weights"])


def test_crossing_and_fit():
    est = kfactor.crossing("hs-tight", n=12, r=3, seeds=5)
    assert est["decided"] == 5
    assert 0 < est["median"] <= 1
    fit = kfactor.fit_exponent([(n, n ** -0.6) for n in (40, 80, 120)])
    assert abs(fit["slope"] + 0.6) < 1e-12
