"""Forbidden induced subgraphs: reference spectra, realizations, and the
triangle-count threshold engine.

The engine lower-bounds the triangle count of a hypothetical extremal graph
G with m edges that contains the entry as an induced subgraph.  It uses only
  * sqrt(m - 2.5) < lambda_1 < sqrt(m - 1.85),
  * interlacing against the entry's spectrum mu_1 >= ... >= mu_s,
  * sum of squared eigenvalues = 2m,
  * f(x) = (sqrt(m - 2.5) + x) x^2 and its endpoint minimum on [a, b] <= 0,
and a positive bound contradicts t(G) = 0.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .canon import canonical
from .graph import Graph, is_triangle_free
from .graph6 import from_graph6, to_graph6
from .induced import find_induced_c5
from .spectral import f_interval_min, f_value, spectrum

TOL = 1e-3
MIN_M = 62
SCAN_CAP = 10_000
LAMBDA1_LO = 2.5  # lambda_1^2 > m - 2.5
LAMBDA1_HI = 1.85  # lambda_1^2 < m - 1.85 for even m >= 62
COEFF = 2.5 / 3

# Table rows, non-increasing; row length is the vertex count.
TABLES = {
    "H1": (2.578, 1.373, 0.618, 0, 0, 0, -0.451, -1.618, -2.501),
    "H2": (2.641, 1, 0.723, 0.414, -0.589, -1.775, -2.414),
    "H3": (2.681, 1, 0.642, 0, 0, -2, -2.323),
    "T1": (2.377, 1.273, 0.801, 0, -0.554, -1.651, -2.246),
    "T2": (2.342, 1, 1, 0.470, -1, -1.813, -2),
    "T3": (2.641, 1, 0.723, 0.414, -0.589, -1.775, -2.414),
    "T4": (2.447, 1.176, 0.656, 0, -0.264, -1.832, -2.183),
    "J1": (2.151, 1.268, 0.618, 0.420, -0.895, -1.618, -1.944),
    "J2": (2.554, 1.223, 0.618, 0.565, 0, -0.942, -1.618, -2.401),
    "J3": (2.900, 1.362, 0.690, 0.618, 0.618, -0.273, -1.618, -1.618, -2.679),
    "J4": (3.082, 1.380, 0.827, 0.670, 0.338, -0.406, -1.209, -1.726, -2.956),
    "L1": (2.950, 1.156, 0.618, 0.522, 0, -0.790, -1.618, -2.838),
    "L2": (2.753, 1.204, 0.641, 0.618, -0.253, -0.700, -1.618, -2.645),
    "L3": (3.141, 1.139, 0.763, 0, 0, -0.277, -1.745, -3.021),
    "L4": (2.964, 1, 0.764, 0.513, 0, -0.710, -1.722, -2.809),
}
STATED_THRESHOLD = {name: 258 for name in TABLES} | {"H1": 188, "H3": 162}
NAMES = tuple(TABLES)


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class ForbiddenEntry:
    name: str
    ref_spectrum: tuple[float, ...]
    stated_threshold: int
    realizations: tuple[str, ...] = ()  # graph6
    # How many of the lowest negative slots receive an f-bound (None: all).
    # Every negative slot's square is committed to the budget regardless.
    f_negatives: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.ref_spectrum)

    def graphs(self) -> list[Graph]:
        return [from_graph6(s) for s in self.realizations]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "spectrum": list(self.ref_spectrum),
            "realizations": list(self.realizations),
            "stated_threshold": self.stated_threshold,
        }


def cycle_entry(s: int) -> ForbiddenEntry:
    """Induced odd cycle C_s; only the two lowest negative slots get f."""
    if s < 7 or s % 2 == 0:
        raise ValueError(f"odd cycle length must be odd and >= 7, got {s}")
    vals = tuple(sorted((2 * math.cos(2 * math.pi * k / s) for k in range(s)), reverse=True))
    return ForbiddenEntry(f"C{s}", vals, 258, f_negatives=2)


# -- data files ---------------------------------------------------------------------


def data_dir() -> Path:
    env = os.environ.get("SPECTREX_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("spectrex") / "data" / "v1"))


def catalog_path() -> Path:
    return data_dir() / "catalog.json"


def load_catalog(path: Optional[Path] = None) -> dict[str, ForbiddenEntry]:
    """Entries keyed by name; table rows come from code, realizations from disk."""
    path = catalog_path() if path is None else Path(path)
    stored = {}
    if path.exists():
        doc = json.loads(path.read_text())
        stored = {e["name"]: e for e in doc["entries"]}
    out = {}
    for name, row in TABLES.items():
        e = stored.get(name, {})
        if e and tuple(e["spectrum"]) != row:
            raise CatalogError(f"{path}: stored spectrum for {name} differs from the reference table")
        out[name] = ForbiddenEntry(name, row, STATED_THRESHOLD[name], tuple(e.get("realizations", ())))
    return out


def get_entry(name: str, catalog: Optional[dict] = None) -> ForbiddenEntry:
    if name.startswith("C") and name[1:].isdigit():
        return cycle_entry(int(name[1:]))
    catalog = load_catalog() if catalog is None else catalog
    try:
        return catalog[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}; expected one of {', '.join(NAMES)} or C<odd s>") from None


# -- reconstruction -----------------------------------------------------------------


def _independent_sets(g: Graph) -> list[int]:
    """All independent vertex sets (as masks), the empty set included."""
    out = [0]
    for v in range(g.n):
        earlier = (1 << v) - 1
        out += [s | (1 << v) for s in out if not (s & g.adj[v] & earlier)]
    return out


def _extend(g: Graph, nbrs: int) -> Graph:
    v = g.n
    rows = list(g.adj) + [nbrs]
    for u in range(g.n):
        if nbrs >> u & 1:
            rows[u] |= 1 << v
    return Graph._trusted(g.n + 1, tuple(rows), g.m + nbrs.bit_count())


def _children(g: Graph) -> list[Graph]:
    # Adding a vertex joined to an independent set keeps the graph triangle-free.
    return [_extend(g, s) for s in _independent_sets(g)]


def _dedupe(graphs: Iterable[Graph]) -> list[Graph]:
    seen: dict[tuple, Graph] = {}
    for h in graphs:
        code = canonical(h)
        if code not in seen:
            seen[code] = Graph._trusted(code[0], tuple(code[1:]), h.m)
    return [seen[c] for c in sorted(seen)]


def _child_codes(g: Graph) -> set:
    return {canonical(h) for h in _children(g)}


def c5_levels(max_n: int, jobs: int = 1) -> dict[int, list[Graph]]:
    """Isomorph-free triangle-free graphs on n <= max_n vertices with an induced C5.

    Grown from C5 one vertex at a time; every such graph arises because
    deleting any vertex outside a fixed induced C5 leaves a smaller one.
    """
    from .graph import cycle

    levels = {5: [cycle(5)]}
    for n in range(6, max_n + 1):
        parents = levels[n - 1]
        codes: set = set()
        if jobs > 1 and len(parents) > 50:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                for part in ex.map(_child_codes, parents, chunksize=16):
                    codes |= part
        else:
            for p in parents:
                codes |= _child_codes(p)
        levels[n] = [Graph(c[0], c[1:]) for c in sorted(codes)]
    return levels


def _matches(values: Sequence[float], row: Sequence[float], tol: float = TOL) -> bool:
    return len(values) == len(row) and all(abs(a - b) <= tol for a, b in zip(values, row))


def reconstruct(entry: ForbiddenEntry, levels: Optional[dict[int, list[Graph]]] = None, jobs: int = 1) -> list[Graph]:
    """All graphs on entry.n vertices (triangle-free, induced C5) matching its row.

    LAPACK screens the level in one batch with a 5e-3 margin; survivors are
    confirmed with the Jacobi solver at the 1e-3 table tolerance.
    """
    if entry.n > 9:
        raise CatalogError(f"reconstruction is limited to n <= 9, {entry.name} has n={entry.n}")
    if levels is None or entry.n not in levels:
        levels = c5_levels(entry.n, jobs=jobs)
    pool = levels[entry.n]
    if not pool:
        raise CatalogError(f"no candidates on {entry.n} vertices")
    mats = np.stack([g.to_matrix() for g in pool])
    vals = np.linalg.eigvalsh(mats)[:, ::-1]
    close = np.all(np.abs(vals - np.asarray(entry.ref_spectrum)) <= TOL + 5e-3, axis=1)
    found = []
    for i in np.flatnonzero(close):
        g = pool[int(i)]
        if _matches(spectrum(g).values, entry.ref_spectrum) and is_triangle_free(g) and find_induced_c5(g) is not None:
            found.append(g)
    if not found:
        raise CatalogError(f"no graph realizes the {entry.name} row; table transcription suspect")
    return found


def regenerate_catalog(jobs: int = 1, path: Optional[Path] = None) -> dict:
    """Rebuild every entry's realizations and write the catalog file."""
    max_n = max(len(r) for r in TABLES.values())
    levels = c5_levels(max_n, jobs=jobs)
    entries = []
    for name, row in TABLES.items():
        e = ForbiddenEntry(name, row, STATED_THRESHOLD[name])
        graphs = reconstruct(e, levels)
        entries.append(ForbiddenEntry(name, row, STATED_THRESHOLD[name], tuple(to_graph6(g) for g in graphs)).to_dict())
    doc = {
        "version": 1,
        "tolerance": TOL,
        "level_sizes": {str(n): len(gs) for n, gs in sorted(levels.items())},
        "entries": entries,
    }
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(json.dumps(doc, indent=1) + "\n")
    return doc


# -- threshold engine ----------------------------------------------------------------


@dataclass
class ThresholdCertificate:
    entry: str
    m: int
    lower_bound: float
    steps: list = field(default_factory=list)
    committed_max: float = 0.0  # largest committed sum of squares, lambda_1 included
    coefficient: float = COEFF
    diagnostics: list = field(default_factory=list)
    variants: dict = field(default_factory=dict)

    @property
    def positive(self) -> bool:
        return self.lower_bound > 0

    def to_dict(self) -> dict:
        lb = self.lower_bound
        return {
            "entry": self.entry,
            "m": self.m,
            "lower_bound": lb if math.isfinite(lb) else None,
            "positive": self.positive,
            "committed_max": self.committed_max,
            "budget": 2 * self.m,
            "coefficient": self.coefficient,
            "steps": self.steps,
            "diagnostics": self.diagnostics,
            "variants": self.variants,
        }


def _engine(entry: ForbiddenEntry, m: int, coeff: float = COEFF, lambda1_lo_sq: Optional[float] = None) -> ThresholdCertificate:
    mu = entry.ref_spectrum
    s = len(mu)
    cert = ThresholdCertificate(entry.name, m, -math.inf, coefficient=coeff)
    lo_sq = m - LAMBDA1_LO if lambda1_lo_sq is None else lambda1_lo_sq
    if m < MIN_M:
        cert.diagnostics.append(f"m={m} is below {MIN_M}, where lambda_1 < sqrt(m - 1.85) is not available")
        return cert
    total = 0.0
    committed = lo_sq
    for i in range(1, s):
        if mu[i] > 0:
            val = f_value(mu[i], m)
            committed += mu[i] ** 2
            total += val
            cert.steps.append({"slot": f"lambda_{i + 1}", "kind": "positive", "interval": [mu[i], None], "endpoint": "lower", "f": val})
    negatives = [i for i in range(1, s) if mu[i] < 0]  # table indices, ascending
    neg_sq = sum(mu[i] ** 2 for i in negatives)
    cert.committed_max = committed + neg_sq
    if cert.committed_max > 2 * m:
        cert.diagnostics.append(f"committed squares {cert.committed_max:.6g} exceed 2m = {2 * m}")
        return cert
    use_f = len(negatives) if entry.f_negatives is None else entry.f_negatives
    # Top-down from lambda_n: slot n-j has j+1 slots at or below it, whose
    # squares share whatever budget the slots above have not committed.
    for j, i in enumerate(reversed(negatives)):
        above = sum(mu[k] ** 2 for k in negatives[: len(negatives) - 1 - j])
        budget = 2 * m - committed - above
        if budget <= 0:
            cert.diagnostics.append(f"budget exhausted at slot n-{j}")
            return cert
        a = -math.sqrt(budget / (j + 1))
        b = mu[i]
        slot = "lambda_n" if j == 0 else f"lambda_(n-{j})"
        if a > b:
            cert.diagnostics.append(f"interval [{a:.6g}, {b}] for {slot} is empty")
            return cert
        if j >= use_f:
            cert.steps.append({"slot": slot, "kind": "committed", "interval": [a, b], "endpoint": None, "f": 0.0, "budget": budget, "committed": committed + above})
            continue
        fa, fb = f_value(a, m), f_value(b, m)
        val = f_interval_min(a, b, m)
        total += val
        cert.steps.append(
            {
                "slot": slot,
                "kind": "negative",
                "interval": [a, b],
                "endpoint": "a" if fa <= fb else "b",
                "f": val,
                "budget": budget,
                "committed": committed + above,
            }
        )
    cert.lower_bound = total / 6 - coeff * math.sqrt(m - LAMBDA1_HI)
    return cert


def triangle_lower_bound(entry: ForbiddenEntry, m: int) -> ThresholdCertificate:
    """Lower bound on t(G) for an extremal G containing ``entry`` induced.

    ``variants`` carries the H3 proof's 2/3 coefficient and a tighter bound
    that also uses lambda_1 >= lambda(L_m) (metadata only).
    """
    if m % 2:
        raise ValueError(f"m must be even, got {m}")
    cert = _engine(entry, m)
    if entry.name == "H3":
        cert.variants["coefficient_2_3"] = _engine(entry, m, coeff=2 / 3).lower_bound
    if m >= MIN_M and math.isfinite(cert.lower_bound):
        cert.variants["with_lambda_L"] = _tight_bound(entry, m)
    return cert


def _tight_bound(entry: ForbiddenEntry, m: int) -> float:
    """Same slots, but lambda_1 >= lambda(L_m) in both the budget and the
    (lambda_1^2 - m) lambda_1 / 3 term, which increases in lambda_1."""
    from .charpoly import family_poly, largest_root

    lam = largest_root(family_poly("L", m)).lo_f
    cert = _engine(entry, m, coeff=0.0, lambda1_lo_sq=lam * lam)
    if not math.isfinite(cert.lower_bound):
        return cert.lower_bound
    return cert.lower_bound + (lam * lam - m) * lam / 3


def odd_cycle_exclusion(s: int, m: int) -> ThresholdCertificate:
    return triangle_lower_bound(cycle_entry(s), m)


@dataclass
class ThresholdScan:
    entry: str
    m_star: Optional[int]
    monotone: bool
    scanned: int

    def to_dict(self) -> dict:
        return {"entry": self.entry, "m_star": self.m_star, "monotone": self.monotone, "scanned": self.scanned}


def min_even_threshold(entry: ForbiddenEntry, cap: int = SCAN_CAP) -> ThresholdScan:
    """Smallest even m with a positive bound, scanning upward from 62."""
    prev = -math.inf
    monotone = True
    count = 0
    for m in range(MIN_M, cap + 1, 2):
        lb = triangle_lower_bound(entry, m).lower_bound
        count += 1
        if lb < prev - 1e-12:
            monotone = False
        prev = lb
        if lb > 0:
            return ThresholdScan(entry.name, m, monotone, count)
    raise CatalogError(f"{entry.name}: no even m <= {cap} gives a positive bound")
