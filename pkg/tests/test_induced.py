import itertools
import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from conftest import random_graph, to_nx
from spectrex.families import FamilyId, build
from spectrex.graph import GraphError, complete_bipartite, cycle, mask_of, path
from spectrex.induced import contains_induced, count_induced, find_induced_c5, induced_c5s, induces_c5, neighborhood_classify


def brute_c5_count(g):
    c5 = nx.cycle_graph(5)
    h = to_nx(g)
    return sum(1 for s in itertools.combinations(range(g.n), 5) if nx.is_isomorphic(h.subgraph(s), c5))


def test_contains_induced_matches_networkx():
    rng = random.Random(3)
    for _ in range(150):
        g = random_graph(rng, rng.randint(3, 9), 0.45)
        h = random_graph(rng, rng.randint(2, 4), 0.5)
        emb = contains_induced(g, h)
        assert (emb is not None) == GraphMatcher(to_nx(g), to_nx(h)).subgraph_is_isomorphic()
        if emb is not None:
            assert g.induced(emb) == h


def test_count_induced():
    # 5 copies of P3 in C5, each with 2 automorphisms
    assert count_induced(cycle(5), path(3)) == 10
    assert contains_induced(cycle(6), cycle(5)) is None


def test_induced_c5s_match_brute_force():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randint(5, 9), 0.4)
        found = induced_c5s(g)
        assert len(found) == brute_c5_count(g)
        assert len({frozenset(c) for c in found}) == len(found)
        assert all(induces_c5(g, c) for c in found)


def test_limit_and_find():
    g = build(FamilyId("SK2k", 21))
    assert len(induced_c5s(g, limit=3)) == 3
    assert find_induced_c5(complete_bipartite(3, 3)) is None


def test_partition_T10():
    g = build(FamilyId("Tm", 10))
    p = neighborhood_classify(g, (0, 1, 2, 3, 4))
    assert sorted(p.V2_all) == [5, 6] and not p.V1_all and not p.dist2


def test_partition_Y12():
    # Y12: two extra blown copies of u2 land in N13, the apex sees only the u2 class
    g = build(FamilyId("Ym", 12))
    p = neighborhood_classify(g, (0, 1, 2, 3, 4))
    assert p.N[(1, 3)] == [5, 6]
    assert p.V1[2] == [7]


def test_partition_L12():
    g = build(FamilyId("Lm", 12))
    p = neighborhood_classify(g, mask_of(range(5)))
    assert p.S == (0, 1, 2, 3, 4)
    assert len(p.N[(1, 3)]) == 3 and p.V1[1] == [8] and not p.dist2
    d = p.to_dict()
    assert d["N"] == {"N13": [5, 6, 7]} and d["V1"] == {"u1": [8]}


def test_partition_distances():
    g = path(9)
    g = nx.cycle_graph(5)
    g.add_edges_from([(0, 5), (5, 6), (6, 7), (7, 8)])
    from spectrex.graph import Graph

    p = neighborhood_classify(Graph.from_edges(9, g.edges()), (0, 1, 2, 3, 4))
    assert p.V1[1] == [5] and p.dist2 == [6] and p.dist3 == [7] and p.farther == [8]


def test_partition_errors():
    with pytest.raises(GraphError):
        neighborhood_classify(cycle(6), (0, 1, 2, 3, 4))
    with pytest.raises(GraphError):
        neighborhood_classify(cycle(5), (0, 1, 2, 3))
    w = nx.wheel_graph(6)
    from spectrex.graph import Graph

    with pytest.raises(GraphError, match="triangle"):
        neighborhood_classify(Graph.from_edges(6, [(u - 1 if u else 5, v - 1 if v else 5) for u, v in w.edges()]), (0, 1, 2, 3, 4))
