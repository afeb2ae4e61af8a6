import json
import math
import random
from importlib import resources

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_connected, to_nx
from spectrex.canon import is_isomorphic
from spectrex.charpoly import DomainError, beta
from spectrex.families import FamilyId, build
from spectrex.graph import GraphError, classify, complete_bipartite, cycle, is_complete_bipartite, path
from spectrex.graph6 import from_graph6
from spectrex.search import (
    CLASSICAL,
    all_triangle_free,
    connected_graphs,
    edge_levels,
    enumerate_graphs,
    extremal,
    hill_climb,
    identify,
    random_rotation,
    structure_audit,
    verify_classical,
    wxh_rotate,
)
from spectrex.spectral import lambda1, spectral_radius


def golden():
    return json.loads((resources.files("spectrex") / "data" / "v1" / "golden_counts.json").read_text())


def naive_connected_triangle_free(max_m):
    """All connected graphs by edge count, grown with no pruning and deduplicated
    with networkx isomorphism, then filtered for triangles."""
    level = [nx.path_graph(2)]
    out = {1: level}
    for m in range(2, max_m + 1):
        buckets: dict = {}
        for g in level:
            n = g.number_of_nodes()
            cands = []
            for u in range(n):
                for v in range(u + 1, n):
                    if not g.has_edge(u, v):
                        h = g.copy()
                        h.add_edge(u, v)
                        cands.append(h)
                h = g.copy()
                h.add_edge(u, n)
                cands.append(h)
            for h in cands:
                key = nx.weisfeiler_lehman_graph_hash(h)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, k) for k in bucket):
                    bucket.append(h)
        level = [h for b in buckets.values() for h in b]
        out[m] = level
    return {m: [g for g in gs if sum(nx.triangles(g).values()) == 0] for m, gs in out.items()}


def test_enumeration_complete_against_naive_oracle():
    naive = naive_connected_triangle_free(8)
    levels = edge_levels(8)
    for m in range(1, 9):
        assert len(levels[m]) == len(naive[m]), m
        nonbip = sum(1 for g in naive[m] if not nx.is_bipartite(g))
        assert len(connected_graphs(m, bipartite=False)) == nonbip


def test_golden_counts():
    gold = golden()
    levels = edge_levels(11)
    for m in range(1, 12):
        assert len(levels[m]) == gold["connected"][str(m)]
        assert len(connected_graphs(m)) == gold["non_bipartite"][str(m)]


def test_enumeration_sound():
    for m in range(5, 10):
        seen = []
        count = enumerate_graphs(m, emit=seen.append)
        assert count == len(seen)
        for g in seen:
            rep = classify(g)
            assert g.m == m and rep.triangle_free and not rep.bipartite and rep.connected


def test_enumeration_independent_of_jobs():
    from spectrex import search

    saved = dict(search._LEVELS)
    try:
        search._LEVELS.clear()
        search._LEVELS[1] = saved[1]
        sharded = edge_levels(9, jobs=2)
    finally:
        search._LEVELS.clear()
        search._LEVELS.update(saved)
    assert sharded[9] == edge_levels(9)[9]


def test_enumeration_range():
    with pytest.raises(DomainError):
        enumerate_graphs(4)
    with pytest.raises(DomainError):
        extremal(14)


def test_all_triangle_free_includes_disconnected():
    graphs = list(all_triangle_free(4))
    # connected: P5, K_{1,4}, chair, C4; then P4+K2, K_{1,3}+K2, P3+P3, P3+2K2, 4K2
    assert len(graphs) == 4 + 2 + 1 + 1 + 1
    nxg = [to_nx(g) for g, _ in graphs]
    assert all(not nx.is_isomorphic(a, b) for i, a in enumerate(nxg) for b in nxg[i + 1:])


@pytest.mark.parametrize(
    "m,family",
    [(5, ("SK2k", 5)), (6, ("Ym", 6)), (7, ("SK2k", 7)), (8, ("Lm", 8)), (9, ("SK2k", 9)), (10, ("Tm", 10)), (11, ("SK2k", 11))],
)
def test_extremal_small(m, family):
    rep = extremal(m)
    assert rep.unique
    g = from_graph6(rep.maximizers[0])
    assert is_isomorphic(g, build(FamilyId(*family)))
    if m % 2:
        assert rep.lambda_max == pytest.approx(beta(m).value, abs=1e-9)
    else:
        assert rep.lambda_max > math.sqrt(m - 2.5)
    assert all(rep.verdicts.values())


def test_extremal_stated_values():
    assert extremal(6).lambda_max == pytest.approx(2.1149, abs=5e-4)
    assert extremal(8).lambda_max == pytest.approx(2.4938, abs=5e-4)
    assert "SK_{3,3}" in extremal(10).identified


@pytest.mark.parametrize("which", CLASSICAL)
def test_classical_bounds(which):
    for m in range(2, 10):
        v = verify_classical(m, which)
        assert v.passed, (m, v.violations, v.notes)
        assert v.checked > 0 or which in ("lnw", "zs")


def test_nosal_equality_is_complete_bipartite():
    v = verify_classical(9, "nosal")
    eq = [from_graph6(s) for s in v.equality]
    assert eq and all(is_complete_bipartite(g) for g in eq)
    assert any(is_isomorphic(g, complete_bipartite(3, 3)) for g in eq)
    assert any(is_isomorphic(g, complete_bipartite(1, 9)) for g in eq)


def test_lnw_equality_is_C5():
    v = verify_classical(5, "lnw")
    assert [from_graph6(s) for s in v.equality] == [cycle(5)] or is_isomorphic(from_graph6(v.equality[0]), cycle(5))
    assert verify_classical(7, "lnw").equality == []


def test_zs_equality_is_SK2k():
    v = verify_classical(9, "zs")
    assert len(v.equality) == 1 and is_isomorphic(from_graph6(v.equality[0]), build(FamilyId("SK2k", 9)))


def test_classical_errors():
    with pytest.raises(DomainError):
        verify_classical(9, "turan")
    with pytest.raises(DomainError):
        verify_classical(1, "bn_base")


def test_audit_T10():
    a = structure_audit(build(FamilyId("Tm", 10)))
    assert a["shortest_odd_cycle"] == 5 and a["distance_2"] == 0
    assert a["populated"] == ["N13", "N24"]


def test_audit_L12():
    # the pendant hangs on u1, so it sits in V1 rather than at distance 2
    a = structure_audit(build(FamilyId("Lm", 12)))
    assert a["distance_2"] == 0 and a["V1_size"] == 1 and a["claim_at_most_one_distance_2"]


def test_audit_C7_flags_violation():
    a = structure_audit(cycle(7))
    assert not a["claim_shortest_odd_cycle_5"] and "violation" in a


def test_audit_distance_two():
    from spectrex.graph import add_pendant

    h = add_pendant(add_pendant(add_pendant(cycle(5), 0), 5), 6)  # tail u1-5-6-7
    a = structure_audit(h)
    assert (a["V1_size"], a["distance_2"], a["distance_3"]) == (1, 1, 1)


def test_even_maximizers_pass_audit():
    for m in (6, 8, 10):
        a = structure_audit(from_graph6(extremal(m).maximizers[0]))
        assert a["claim_shortest_odd_cycle_5"] and a["distance_2"] <= 1


def test_rotation_example():
    g = path(4)
    h = wxh_rotate(g, 1, 2, [3])
    assert is_isomorphic(h, complete_bipartite(1, 3))
    assert lambda1(h) == pytest.approx(math.sqrt(3))
    assert lambda1(g) == pytest.approx((1 + math.sqrt(5)) / 2)


@pytest.mark.parametrize(
    "args,msg",
    [((1, 2, []), "nonempty"), ((1, 1, [0]), "differ"), ((1, 2, [1]), "not lie in S"), ((0, 2, [1]), "avoid"), ((1, 3, [0]), "N\\(v_j\\)"), ((9, 2, [3]), "not in")],
)
def test_rotation_preconditions(args, msg):
    with pytest.raises(GraphError, match=msg):
        wxh_rotate(path(4), *args)


def test_rotation_requires_perron_order():
    g = path(5)  # centre has the largest entry
    with pytest.raises(GraphError, match="Perron"):
        wxh_rotate(g, 0, 2, [3])
    with pytest.raises(GraphError, match="connected"):
        wxh_rotate(g.induced([0, 1, 3, 4]), 1, 2, [3])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 11), st.floats(0.0, 0.5), st.randoms(use_true_random=False))
def test_rotation_increases_radius(n, p, r):
    g = random_connected(r, n, p)
    move = random_rotation(g, r)
    if move is None:
        return
    assert lambda1(wxh_rotate(g, *move)) > lambda1(g) + 1e-10


def test_hill_climb_is_unverified():
    res = hill_climb(build(FamilyId("Lm", 20)), steps=30)
    assert res.verified is False and res.to_dict()["verified"] is False
    assert res.lam >= lambda1(build(FamilyId("Lm", 20))) - 1e-12


def test_identify():
    assert identify(build(FamilyId("Lm", 8))) == ["Lm(m=8)"]
