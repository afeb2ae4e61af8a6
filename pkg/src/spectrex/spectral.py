"""Adjacency spectra, Perron pairs and spectral triangle counting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .graph import Graph, bits, components

JACOBI_MAX_N = 64
OFF_TOL = 1e-12
MAX_SWEEPS = 100


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]  # non-increasing
    m: int

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def trace_errors(self) -> tuple[float, float]:
        """|sum(lambda)| and |sum(lambda^2) - 2m|."""
        v = np.asarray(self.values)
        return abs(float(v.sum())), abs(float((v * v).sum()) - 2 * self.m)


@dataclass(frozen=True)
class PerronPair:
    radius: float
    vector: np.ndarray = field(repr=False)
    connected: bool = True
    # Collatz-Wielandt bracket from the returned vector: min/max of (Ax)_i / x_i.
    bracket: tuple[float, float] = (float("nan"), float("nan"))
    iterations: int = 0


def jacobi_eigenvalues(a: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run over all (p, q) pairs in row order until the off-diagonal
    Frobenius norm drops to ``tol``.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float((np.triu(a, 1) ** 2).sum()))
        if off <= tol:
            return np.diag(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
    raise NumericError(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")


def spectrum(g: Graph) -> Spectrum:
    """All adjacency eigenvalues, non-increasing.

    Cyclic Jacobi up to 64 vertices; LAPACK (``numpy.linalg.eigvalsh``)
    beyond, where the large family members live.
    """
    if g.n < 1:
        raise ValueError("spectrum needs at least one vertex")
    a = g.to_matrix()
    vals = jacobi_eigenvalues(a) if g.n <= JACOBI_MAX_N else np.linalg.eigvalsh(a)
    return Spectrum(tuple(float(x) for x in sorted(vals, reverse=True)), g.m)


def fast_eigenvalues(g: Graph) -> np.ndarray:
    """LAPACK eigenvalues, non-increasing; used for bulk screening only."""
    return np.linalg.eigvalsh(g.to_matrix())[::-1]


def _operator(g: Graph):
    if g.n > 200:
        from scipy.sparse import csr_matrix

        rows, cols = [], []
        for u, v in g.edges():
            rows += [u, v]
            cols += [v, u]
        return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    return g.to_matrix()


def _connected_radius(g: Graph, max_iter: int = 100000) -> tuple[float, np.ndarray, int]:
    if g.n == 1:
        return 0.0, np.ones(1), 0
    a = _operator(g)
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    rho = 0.0
    it = 0
    # Shift by 1 so the Perron root dominates in modulus even for bipartite
    # graphs, where lambda_n = -lambda_1.
    for it in range(1, max_iter + 1):
        y = a @ x
        new_rho = float(x @ y)
        y = y + x
        x = y / np.linalg.norm(y)
        if abs(new_rho - rho) <= 1e-15 * max(1.0, abs(new_rho)) and it > 5:
            rho = new_rho
            break
        rho = new_rho
        resid = np.linalg.norm(a @ x - float(x @ (a @ x)) * x)
        if resid < 1e-6:
            break
    # Rayleigh-quotient polish.
    dense = a.toarray() if hasattr(a, "toarray") else a
    for _ in range(6):
        rho = float(x @ (a @ x))
        resid = np.linalg.norm(a @ x - rho * x)
        if resid < 1e-13 * max(1.0, rho):
            break
        try:
            y = np.linalg.solve(dense - rho * np.eye(g.n), x)
        except np.linalg.LinAlgError:
            break
        y = np.abs(y)  # the Perron vector is positive; fixes the sign flip
        x = y / np.linalg.norm(y)
        it += 1
    rho = float(x @ (a @ x))
    return rho, x, it


def spectral_radius(g: Graph, cross_check: bool = True) -> PerronPair:
    """Perron root and unit Perron vector.

    Disconnected inputs are handled on the component of largest radius; the
    vector is zero off that component and ``connected`` is False.
    """
    if g.n < 1:
        raise ValueError("spectral_radius needs at least one vertex")
    comps = components(g)
    best = None
    for comp in comps:
        verts = list(bits(comp))
        rho, x, it = _connected_radius(g.induced(verts))
        if best is None or rho > best[0] + 1e-12:
            best = (rho, x, it, verts)
    rho, x, it, verts = best
    vec = np.zeros(g.n)
    vec[verts] = x
    sub = g.induced(verts)
    ax = _operator(sub) @ x
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = ax / x
    bracket = (float(np.min(ratios)), float(np.max(ratios))) if np.all(x > 0) else (float("nan"),) * 2
    if cross_check and g.n <= JACOBI_MAX_N:
        top = spectrum(g).values[0]
        if abs(top - rho) > 1e-9:
            raise NumericError(f"power iteration {rho!r} disagrees with Jacobi {top!r}")
    return PerronPair(rho, vec, len(comps) == 1, bracket, it)


def lambda1(g: Graph) -> float:
    return spectral_radius(g, cross_check=False).radius


# -- triangle counting --------------------------------------------------------


def triangles_from_spectrum(spec: Spectrum | Sequence[float]) -> float:
    vals = spec.values if isinstance(spec, Spectrum) else spec
    return sum(x ** 3 for x in vals) / 6.0


def triangles_from_radius(spec: Spectrum, m: int) -> float:
    """Triangle count from lambda_1, the remaining eigenvalues and m.

    t = (1/6) sum_{i>=2} (l1 + li) li^2 + (1/3)(l1^2 - m) l1, which equals
    the trace formula because sum li^2 = 2m.
    """
    if m != spec.m:
        raise ValueError(f"m={m} does not match the spectrum's m={spec.m}")
    l1 = spec.values[0]
    head = sum((l1 + x) * x * x for x in spec.values[1:]) / 6.0
    return head + (l1 * l1 - m) * l1 / 3.0


def interlace_ok(spec_g: Spectrum | Sequence[float], spec_h: Spectrum | Sequence[float], tol: float = 1e-9) -> bool:
    """Cauchy interlacing of ``spec_h`` (a principal submatrix) inside ``spec_g``."""
    lg = spec_g.values if isinstance(spec_g, Spectrum) else tuple(spec_g)
    lh = spec_h.values if isinstance(spec_h, Spectrum) else tuple(spec_h)
    n, s = len(lg), len(lh)
    if s > n:
        return False
    return all(lg[n - s + i] - tol <= lh[i] <= lg[i] + tol for i in range(s))


# -- the cubic helper f --------------------------------------------------------


def f_value(x: float, m: float) -> float:
    return (math.sqrt(m - 2.5) + x) * x * x


def f_interval_min(a: float, b: float, m: float) -> float:
    """Lower bound of f(x) = (sqrt(m - 2.5) + x) x^2 over a <= x <= b <= 0.

    f increases up to -(2/3) sqrt(m - 2.5) and decreases after it, so on any
    interval inside the non-positive axis the minimum sits at an endpoint.
    """
    if a > b:
        raise ValueError(f"empty interval [{a}, {b}]")
    if b > 0:
        raise ValueError(f"interval must lie in x <= 0, got b={b}")
    return min(f_value(a, m), f_value(b, m))
