import math

import pytest

from spectrex.canon import is_isomorphic
from spectrex.charpoly import DomainError
from spectrex.families import INFERRED, TAGS, FamilyId, build, manifest, polynomial, validate
from spectrex.graph import Graph, is_triangle_free
from spectrex.graph6 import from_graph6
from spectrex.spectral import lambda1

CASES = (
    [FamilyId("Lm", m) for m in (6, 8, 12, 100, 258, 1000)]
    + [FamilyId("Ym", m) for m in (6, 12, 42, 300)]
    + [FamilyId("Tm", m) for m in (7, 10, 13, 301)]
    + [FamilyId("SK2k", m) for m in (5, 7, 9, 101)]
    + [FamilyId("SKab", None, a, b) for a, b in ((3, 3), (5, 3), (7, 5), (45, 7))]
    + [FamilyId("G2", m) for m in (6, 8, 260)]
    + [FamilyId("G4", m) for m in (12, 14, 258)]
    + [FamilyId("G5", m) for m in (8, 10, 258)]
    + [FamilyId("G6", m) for m in (13, 18, 258)]
)


@pytest.mark.parametrize("fid", CASES, ids=lambda f: f.label())
def test_family_members_validate(fid):
    g = build(fid)
    rep = validate(g, fid)
    assert rep.passed, rep.failures
    assert g.m == fid.edges()


def test_deterministic_labels():
    g = build(FamilyId("Lm", 10))
    assert g.edges()[:5] == [(0, 1), (0, 4), (0, 5), (0, 6), (0, 7)] or all(g.has_edge(i, (i + 1) % 5) for i in range(5))
    assert build(FamilyId("Lm", 10)) == g


def test_T10_is_SK33():
    assert is_isomorphic(build(FamilyId("Tm", 10)), build(FamilyId("SKab", None, 3, 3)))


def test_small_Y_and_L_coincide():
    assert is_isomorphic(build(FamilyId("Ym", 6)), build(FamilyId("Lm", 6)))


@pytest.mark.parametrize(
    "fid",
    [FamilyId("Lm", 7), FamilyId("Ym", 8), FamilyId("Tm", 9), FamilyId("SK2k", 6), FamilyId("SKab", None, 4, 3), FamilyId("G4", 10), FamilyId("G6", 12), FamilyId("Zz", 10)],
    ids=str,
)
def test_domain_errors(fid):
    with pytest.raises(DomainError):
        build(fid)


def test_validate_detects_wrong_graph():
    g = build(FamilyId("Lm", 12))
    rep = validate(g, FamilyId("Ym", 12))
    assert not rep.passed and not rep.checks["residual"]
    bad = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    rep = validate(bad, FamilyId("Lm", 6))
    assert not rep.checks["triangle_free"] and not rep.checks["edge_count"]


def test_below_L_for_auxiliary_families():
    for tag in ("G2", "G4", "G5"):
        for m in range(12, 60, 2):
            assert lambda1(build(FamilyId(tag, m))) < lambda1(build(FamilyId("Lm", m)))


def test_manifest():
    man = manifest(FamilyId("Tm", 10))
    assert man["valid"] and man["polynomial"]["id"] == "T" and not man["inferred"]
    assert from_graph6(man["graph6"]) == build(FamilyId("Tm", 10))
    assert man["lambda"] == pytest.approx(2.9032119259, abs=1e-9)
    g5 = manifest(FamilyId("G5", 10))
    assert g5["inferred"] and g5["polynomial"] is None and g5["residual"] is None
    assert INFERRED <= set(TAGS)
    assert polynomial(FamilyId("G2", 10)) is None


def test_L_lies_in_bracket_for_large_m():
    for m in (300, 1000, 2000):
        lam = lambda1(build(FamilyId("Lm", m)))
        assert math.sqrt(m - 2.5) < lam < math.sqrt(m - 2)
        assert is_triangle_free(build(FamilyId("Lm", m)))
