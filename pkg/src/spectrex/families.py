"""Named extremal and auxiliary graph families.

Every construction starts from the 5-cycle u1..u5 on vertices 0..4 (u_i is
vertex i-1) and appends new vertices in a fixed order, so outputs are
deterministic.  Blown-up copies of u2 are exactly the vertices adjacent to
both u1 and u3, i.e. the class N_{1,3}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .canon import is_isomorphic
from .charpoly import LARGE_M, DomainError, family_poly, largest_root, residual
from .graph import Graph, classify, components
from .graph6 import to_graph6
from .induced import find_induced_c5
from .spectral import lambda1

TAGS = ("Lm", "Ym", "Tm", "SK2k", "SKab", "G2", "G4", "G5", "G6")

# Family -> polynomial whose largest root is its spectral radius.
POLY_OF = {"Lm": "L", "Ym": "Y", "Tm": "T", "SK2k": "Z", "SKab": "Fab", "G4": "F4", "G6": "F6"}

# Reconstructed from prose alone, with no polynomial fingerprint to confirm.
INFERRED = {"G5"}

RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class FamilyId:
    tag: str
    m: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None

    def edges(self) -> int:
        if self.tag == "SKab":
            return self.a * self.b + 1
        return self.m

    def label(self) -> str:
        if self.tag == "SKab":
            return f"SK_{{{self.a},{self.b}}}"
        return f"{self.tag}(m={self.m})"


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


class _Builder:
    """Accumulates edges over C5 plus appended vertices."""

    def __init__(self):
        self.n = 5
        self.edges = [(i, (i + 1) % 5) for i in range(5)]

    def add(self, nbrs) -> int:
        v = self.n
        self.n += 1
        self.edges.extend((u, v) for u in nbrs)
        return v

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def build(fid: FamilyId) -> Graph:
    tag, m = fid.tag, fid.m
    bl = _Builder()
    if tag == "Lm":
        _need(m is not None and m >= 6 and m % 2 == 0, f"Lm needs even m >= 6, got {m}")
        for _ in range((m - 6) // 2):
            bl.add([0, 2])
        bl.add([0])  # pendant at u1, a maximum-degree vertex
    elif tag == "Ym":
        _need(m is not None and m >= 6 and m % 3 == 0, f"Ym needs (m - 3)/3 a positive integer, got {m}")
        k = (m - 3) // 3
        blown = [1] + [bl.add([0, 2]) for _ in range(k - 1)]
        bl.add(blown)
    elif tag == "Tm":
        _need(m is not None and m >= 7 and m % 3 == 1, f"Tm needs (m - 4)/3 a positive integer, got {m}")
        k = (m - 4) // 3
        ones = [0] + [bl.add([1, 4]) for _ in range(k - 1)]
        bl.add(ones + [2])  # second copy of u2, joined to every copy of u1
    elif tag == "SK2k":
        _need(m is not None and m >= 5 and m % 2 == 1, f"SK2k needs odd m >= 5, got {m}")
        for _ in range((m - 5) // 2):
            bl.add([0, 2])
    elif tag == "SKab":
        a, b = fid.a, fid.b
        _need(a is not None and b is not None, "SKab needs a and b")
        _need(a >= 3 and b >= 3 and a % 2 == 1 and b % 2 == 1, f"SKab needs odd a, b >= 3, got ({a}, {b})")
        n13 = [bl.add([0, 2]) for _ in range(a - 2)]
        for _ in range(b - 2):
            bl.add([1, 3] + n13)
    elif tag == "G2":
        _need(m is not None and m >= 6 and m % 2 == 0, f"G2 needs even m >= 6, got {m}")
        for _ in range((m - 6) // 2):
            bl.add([0, 2])
        bl.add([1])
    elif tag == "G4":
        _need(m is not None and m >= 12 and m % 2 == 0, f"G4 needs even m >= 12, got {m}")
        for _ in range((m - 8) // 2):
            bl.add([0, 2])
        for _ in range(3):
            bl.add([0])
    elif tag == "G5":
        _need(m is not None and m >= 8 and m % 2 == 0, f"G5 needs even m >= 8, got {m}")
        for _ in range((m - 8) // 2):
            bl.add([0, 2])
        for _ in range(3):
            bl.add([1])
    elif tag == "G6":
        _need(m is not None and m > 8 and (m - 8) % 5 == 0, f"G6 needs (m - 8)/5 a positive integer, got {m}")
        k = (m - 8) // 5
        n13 = [bl.add([0, 2]) for _ in range(k)]
        for _ in range(3):
            bl.add([1] + n13)
    else:
        raise DomainError(f"unknown family {tag!r}; expected one of {', '.join(TAGS)}")
    g = bl.graph()
    assert g.m == fid.edges()
    return g


def polynomial(fid: FamilyId):
    pid = POLY_OF.get(fid.tag)
    if pid is None:
        return None
    if pid == "Fab":
        return family_poly("Fab", fid.edges(), fid.a, fid.b)
    return family_poly(pid, fid.m)


def _pendant_structure(g: Graph, pendants: int) -> tuple[bool, str]:
    """Core is SK_{2,k} and all pendants hang on one blown copy of u2."""
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if len(leaves) != pendants:
        return False, f"expected {pendants} pendant vertices, found {len(leaves)}"
    hosts = {g.neighbors(v)[0] for v in leaves}
    if len(hosts) != 1:
        return False, "pendants do not share one attachment vertex"
    host = hosts.pop()
    core = g.induced([v for v in range(g.n) if v not in leaves])
    if core.m % 2 == 0 or core.m < 5:
        return False, "core edge count is not odd"
    ref = build(FamilyId("SK2k", core.m))
    if not is_isomorphic(core, ref):
        return False, "core is not SK_{2,(m'-1)/2}"
    if g.degree(host) - pendants != 2:
        return False, "attachment vertex is not in the blown class"
    return True, "ok"


@dataclass
class ValidationReport:
    family: str
    params: dict
    passed: bool
    n: int
    m: int
    lam: float
    residual: Optional[float] = None
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "passed": self.passed,
            "n": self.n,
            "m": self.m,
            "lambda": self.lam,
            "residual": self.residual,
            "checks": self.checks,
            "failures": self.failures,
        }


def _params(fid: FamilyId) -> dict:
    return {"a": fid.a, "b": fid.b, "m": fid.edges()} if fid.tag == "SKab" else {"m": fid.m}


def validate(g: Graph, fid: FamilyId) -> ValidationReport:
    """Check a graph against the claims made for family ``fid``."""
    checks: dict = {}
    failures = []
    expected_m = fid.edges()
    checks["edge_count"] = g.m == expected_m
    if not checks["edge_count"]:
        failures.append(f"edge count {g.m} != {expected_m}")
    rep = classify(g)
    checks["triangle_free"] = rep.triangle_free
    if not rep.triangle_free:
        failures.append("contains a triangle")
    checks["non_bipartite"] = not rep.bipartite
    if rep.bipartite:
        failures.append("bipartite")
    checks["connected"] = rep.connected
    if not rep.connected:
        failures.append("disconnected")
    checks["induced_c5"] = find_induced_c5(g) is not None
    if not checks["induced_c5"]:
        failures.append("no induced C5")
    lam = lambda1(g) if g.n else 0.0
    res = None
    try:
        p = polynomial(fid)
    except DomainError as e:
        p = None
        failures.append(str(e))
    if p is not None:
        r = residual(g, p, radius=lam)
        res = r["distance"]
        checks["residual"] = res < RESIDUAL_TOL
        if not checks["residual"]:
            failures.append(f"residual {res:.3g} against {p.id} exceeds {RESIDUAL_TOL}")
        root = largest_root(p)
        checks["largest_root_agrees"] = abs(root.value - lam) < 1e-8
        if not checks["largest_root_agrees"]:
            failures.append(f"lambda {lam!r} is not the largest root {root.value!r} of {p.id}")
    if fid.tag in ("G2", "G4", "G5", "G6") and fid.m >= LARGE_M and fid.m % 2 == 0:
        lam_l = lambda1(build(FamilyId("Lm", fid.m)))
        checks["below_L"] = lam < lam_l
        if not checks["below_L"]:
            failures.append(f"lambda {lam!r} is not below lambda(L_m) = {lam_l!r}")
    if fid.tag in ("G2", "G5"):
        ok, why = _pendant_structure(g, 1 if fid.tag == "G2" else 3)
        checks["structure"] = ok
        if not ok:
            failures.append(why)
    return ValidationReport(fid.tag, _params(fid), not failures, g.n, g.m, lam, res, checks, failures)


def manifest(fid: FamilyId, g: Optional[Graph] = None) -> dict:
    g = build(fid) if g is None else g
    rep = validate(g, fid)
    p = polynomial(fid)
    return {
        "family": fid.tag,
        "params": _params(fid),
        "n": g.n,
        "m": g.m,
        "lambda": rep.lam,
        "residual": rep.residual,
        "polynomial": p.to_dict() if p is not None else None,
        "inferred": fid.tag in INFERRED,
        "valid": rep.passed,
        "failures": rep.failures,
        "graph6": to_graph6(g),
    }
