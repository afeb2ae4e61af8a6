"""Polynomial families with exact rational coefficients and certified roots.

Roots are located by bisection on Sturm counts over dyadic rationals, so
every bracket endpoint is exact; the "largest root" claim is certified by
a Sturm count of zero roots between the upper endpoint and the Cauchy
bound.  Comparisons against square roots (sqrt(m - 2.5) and friends) are
decided exactly by evaluating at sqrt(c) in Q(sqrt(c)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

Number = Union[int, Fraction]


class DomainError(ValueError):
    """Parameters outside a family's or lemma's stated domain."""


class RootError(ArithmeticError):
    pass


# -- dense polynomials over Q (ascending coefficients) --------------------------


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Number]):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def from_descending(cls, coeffs: Sequence[Number]) -> "Poly":
        return cls(list(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def descending(self) -> list[Fraction]:
        return list(reversed(self.c))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({self.pretty()})"

    def pretty(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.c[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            coef = "" if (mag == 1 and k > 0) else str(mag)
            var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(f"{sign} {coef}{var}".rstrip())
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.c), len(other.c))
        return Poly([(self.c[i] if i < len(self.c) else 0) + (other.c[i] if i < len(other.c) else 0) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self.c])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", Number]) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([x * other for x in self.c])
        if not self.c or not other.c:
            return Poly([])
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x^k."""
        return Poly([0] * k + list(self.c))

    def derivative(self) -> "Poly":
        return Poly([k * self.c[k] for k in range(1, len(self.c))])

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        if not d.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(d.c) + 1)
        lead = d.c[-1]
        for k in range(len(r) - len(d.c), -1, -1):
            coef = r[k + len(d.c) - 1] / lead
            q[k] = coef
            if coef:
                for i, b in enumerate(d.c):
                    r[k + i] -= coef * b
        return Poly(q), Poly(r[: len(d.c) - 1])

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, Fraction) else Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + (float(a) if isinstance(x, float) else a)
        return acc

    def eval_exact(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def integer_coeffs(self) -> list[int]:
        """Coefficients scaled by a positive integer to be integral."""
        den = 1
        for a in self.c:
            den = den * a.denominator // math.gcd(den, a.denominator)
        return [int(a * den) for a in self.c]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b.c:
        a, b = b, a.divmod(b)[1]
    return a * (1 / a.c[-1]) if a.c else a


def squarefree(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    return p.divmod(g)[0] if g.degree > 0 else p


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2].divmod(chain[-1])[1]
        if not r.c:
            break
        chain.append(-r)
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _horner_sign(coeffs: list[int], x: Fraction) -> int:
    """Sign of p(x) from integer coefficients, scaled by den^deg > 0."""
    num, den = x.numerator, x.denominator
    acc = coeffs[-1]
    dp = 1
    for a in reversed(coeffs[:-1]):
        dp *= den
        acc = acc * num + a * dp
    return _sign(acc)


def sign_at_sqrt(p: Poly, c: Number) -> int:
    """Exact sign of p(sqrt(c)) for rational c >= 0."""
    c = Fraction(c)
    if c < 0:
        raise ValueError("sqrt of a negative number")
    even = Fraction(0)
    odd = Fraction(0)
    pw = Fraction(1)
    for k, a in enumerate(p.c):
        if k % 2 == 0:
            even += a * pw
        else:
            odd += a * pw
            pw *= c
    # even + odd*sqrt(c), where pw tracked c^(k//2)
    se, so = _sign(even), _sign(odd)
    if so == 0 or c == 0:
        return se
    if se == 0 or se == so:
        return so
    return se if even * even > odd * odd * c else (so if even * even < odd * odd * c else 0)


class SturmCounter:
    """Distinct real roots of ``p`` in half-open intervals, exactly."""

    def __init__(self, p: Poly):
        self.poly = p
        self.sq = squarefree(p)
        self.chain = sturm_chain(self.sq)
        self.int_chain = [q.integer_coeffs() for q in self.chain]
        lead = self.sq.c[-1]
        self.bound = 1 + max((abs(a / lead) for a in self.sq.c[:-1]), default=Fraction(0))

    def _variations(self, signs: list[int]) -> int:
        s = [x for x in signs if x]
        return sum(1 for a, b in zip(s, s[1:]) if a != b)

    def variations_at(self, x: Fraction) -> int:
        return self._variations([_horner_sign(c, x) for c in self.int_chain])

    def variations_at_sqrt(self, c: Number) -> int:
        return self._variations([sign_at_sqrt(q, c) for q in self.chain])

    def variations_at_inf(self) -> int:
        return self._variations([_sign(q.c[-1]) for q in self.chain])

    def count_above(self, x: Fraction) -> int:
        """Number of distinct real roots in (x, +inf)."""
        return self.variations_at(x) - self.variations_at_inf()

    def count_above_sqrt(self, c: Number) -> int:
        return self.variations_at_sqrt(c) - self.variations_at_inf()


# -- certified largest root -----------------------------------------------------


@dataclass(frozen=True)
class CertifiedRoot:
    value: float
    lo: Fraction
    hi: Fraction
    # Float endpoints rounded outward from the exact dyadic bracket.
    lo_f: float
    hi_f: float
    cauchy_bound: Fraction
    roots_above_hi: int  # Sturm count on (hi, inf); 0 certifies "largest"
    sign_change: bool

    @property
    def width(self) -> float:
        return float(self.hi - self.lo)

    def above_sqrt(self, c: Number) -> bool:
        """Certified root > sqrt(c), decided from the exact bracket."""
        c = Fraction(c)
        return self.lo >= 0 and self.lo * self.lo >= c

    def below_sqrt(self, c: Number) -> bool:
        c = Fraction(c)
        return self.hi >= 0 and self.hi * self.hi <= c

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "bracket": [self.lo_f, self.hi_f],
            "width": self.width,
            "cauchy_bound": float(self.cauchy_bound),
            "roots_above_hi": self.roots_above_hi,
            "sign_change": self.sign_change,
        }


def _round_down(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -math.inf) if Fraction(f) > x else f


def _round_up(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if Fraction(f) < x else f


def largest_root(p: Union[Poly, "PolyFamily"], width: float = 1e-10) -> CertifiedRoot:
    """Largest real root of ``p`` with an exact certified bracket.

    Bisection starts from [-B, B] with B the Cauchy bound of the square-free
    part; while more than one distinct root lies above the lower end the
    Sturm count steers the bisection, then plain sign bisection finishes.
    """
    if isinstance(p, PolyFamily):
        p = p.poly
    if p.degree < 1:
        raise RootError(f"constant polynomial {p.pretty()} has no roots")
    sc = SturmCounter(p)
    sq_int = sc.int_chain[0]
    bound = sc.bound
    lo, hi = -Fraction(math.ceil(bound)), Fraction(math.ceil(bound))
    if sc.count_above(lo) < 1:
        raise RootError(f"{p.pretty()} has no real root in [-{bound}, {bound}]")
    target = Fraction(width)
    exact = False
    isolated = False
    while hi - lo > target:
        mid = (lo + hi) / 2
        if not isolated:
            if sc.count_above(mid) >= 1:
                lo = mid
            else:
                hi = mid
            isolated = sc.count_above(lo) == 1 and _horner_sign(sq_int, lo) * _horner_sign(sq_int, hi) < 0
            continue
        s_mid = _horner_sign(sq_int, mid)
        if s_mid == 0:
            lo = hi = mid
            exact = True
            break
        if s_mid == _horner_sign(sq_int, hi):
            hi = mid
        else:
            lo = mid
    s_lo, s_hi = _horner_sign(sq_int, lo), _horner_sign(sq_int, hi)
    if not exact and s_hi == 0:
        lo, exact = hi, True
    sign_change = exact or s_lo * s_hi < 0
    above = sc.count_above(hi)
    if above != 0 or not sign_change:
        raise RootError(f"certification failed for {p.pretty()}: roots above hi={above}, sign change={sign_change}")
    return CertifiedRoot(
        value=float((lo + hi) / 2),
        lo=lo,
        hi=hi,
        lo_f=_round_down(lo),
        hi_f=_round_up(hi),
        cauchy_bound=bound,
        roots_above_hi=above,
        sign_change=sign_change,
    )


# -- the families -----------------------------------------------------------------

FAMILY_DEGREE = {"Z": 3, "Y": 4, "T": 5, "L": 6, "F4": 6, "F6": 4, "Fab": 5}


@dataclass(frozen=True)
class PolyFamily:
    id: str
    m: int
    poly: Poly
    a: Optional[int] = None
    b: Optional[int] = None

    @property
    def coefficients(self) -> list[Fraction]:
        """Descending coefficients."""
        return self.poly.descending()

    def __call__(self, x):
        return self.poly(x)

    def to_dict(self) -> dict:
        d = {"id": self.id, "m": self.m, "coefficients": [str(c) for c in self.coefficients], "text": self.poly.pretty()}
        if self.a is not None:
            d.update(a=self.a, b=self.b)
        return d


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def family_poly(fid: str, m: int, a: Optional[int] = None, b: Optional[int] = None) -> PolyFamily:
    """Exact polynomial whose largest root is the family's spectral radius."""
    F = Fraction
    if fid == "Z":
        _require(m >= 3, f"Z needs m >= 3, got {m}")
        c = [1, -1, -(m - 2), m - 3]
    elif fid == "Y":
        _require(m >= 6 and m % 3 == 0, f"Y needs m >= 6 with 3 | m, got {m}")
        c = [1, -1, 2 - m, m - 3, F(m, 3) - 1]
    elif fid == "T":
        _require(m >= 7 and m % 3 == 1, f"T needs m >= 7 with m = 1 mod 3, got {m}")
        c = [1, 0, -m, 0, F(7 * m - 22, 3), F(16 - 4 * m, 3)]
    elif fid == "L":
        _require(m >= 6 and m % 2 == 0, f"L needs even m >= 6, got {m}")
        c = [1, 0, -m, 0, F(5 * m, 2) - 7, 4 - m, 2 - F(m, 2)]
    elif fid == "F4":
        _require(m >= 8 and m % 2 == 0, f"F4 needs even m >= 8, got {m}")
        c = [1, 0, -m, 0, F(7 * m, 2) - 14, 6 - m, 9 - F(3 * m, 2)]
    elif fid == "F6":
        _require(m > 8 and (m - 8) % 5 == 0, f"F6 needs (m - 8)/5 a positive integer, got m={m}")
        c = [1, -1, 2 - m, m - 3, F(3 * m - 9, 5)]
    elif fid == "Fab":
        _require(a is not None and b is not None, "Fab needs a and b")
        _require(a >= 2 and b >= 2, f"Fab needs a, b >= 2, got ({a}, {b})")
        _require(m == a * b + 1, f"Fab needs m = ab + 1, got m={m}, a={a}, b={b}")
        c = [1, 0, -m, 0, 3 * m - 2 - 2 * a - 2 * b, -2 * m + 2 * a + 2 * b]
    else:
        raise DomainError(f"unknown polynomial family {fid!r}")
    poly = Poly.from_descending(c)
    assert poly.degree == FAMILY_DEGREE[fid]
    return PolyFamily(fid, m, poly, a if fid == "Fab" else None, b if fid == "Fab" else None)


def beta(m: int) -> CertifiedRoot:
    """Largest root of Z(x) = x^3 - x^2 - (m - 2)x + m - 3."""
    return largest_root(family_poly("Z", m))


def residual(g, p: Union[PolyFamily, Poly], radius: Optional[float] = None) -> dict:
    """How well p annihilates the spectral radius of g.

    ``abs`` is |p(lambda)| evaluated exactly at the float lambda; ``distance``
    is |p(lambda) / p'(lambda)|, the Newton estimate of the gap between lambda
    and the nearest root, which stays meaningful when lambda is large.
    """
    from .spectral import lambda1

    poly = p.poly if isinstance(p, PolyFamily) else p
    lam = lambda1(g) if radius is None else radius
    x = Fraction(lam)
    val = abs(poly.eval_exact(x))
    der = abs(poly.derivative().eval_exact(x))
    dist = float(val / der) if der else (0.0 if val == 0 else math.inf)
    return {"lambda": lam, "abs": float(val), "distance": dist}


# -- inequality checks --------------------------------------------------------------

LEMMAS = ("L_bracket", "beta_bracket", "LY", "LT", "F4_vs_L", "F6_vs_L", "Fab_vs_L")
LARGE_M = 258

_DOMAINS = {
    "L_bracket": "even m >= 12",
    "beta_bracket": "even m >= 62",
    "LY": "even m >= 12 with 3 | m (claimed for m >= 38; 12..36 is flagged)",
    "LT": "even m >= 10 with m = 1 mod 3",
    "F4_vs_L": f"even m >= {LARGE_M}",
    "F6_vs_L": f"even m >= {LARGE_M} with (m - 8)/5 a positive integer",
    "Fab_vs_L": f"odd a >= b >= 5 with m = ab + 1 >= {LARGE_M}",
}

LY_FLAG_RANGE = (12, 36)


@dataclass
class InequalityResult:
    lemma: str
    m: int
    holds: bool
    margin: float
    witness: dict = field(default_factory=dict)
    flagged: bool = False
    a: Optional[int] = None
    b: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"lemma": self.lemma, "m": self.m, "holds": self.holds, "margin": self.margin, "flagged": self.flagged, "witness": self.witness}
        if self.a is not None:
            d.update(a=self.a, b=self.b)
        return d


def root_above_sqrt(p: Poly, c: Number) -> bool:
    """Exact: the largest real root of p exceeds sqrt(c)."""
    return SturmCounter(p).count_above_sqrt(c) >= 1


def root_below_sqrt(p: Poly, c: Number) -> bool:
    """Exact: every real root of p is below sqrt(c)."""
    return SturmCounter(p).count_above_sqrt(c) == 0 and sign_at_sqrt(p, c) != 0


def no_roots_at_or_above_sqrt(p: Poly, c: Number) -> bool:
    return root_below_sqrt(p, c)


def root_less(p: Poly, q: Poly) -> tuple[bool, CertifiedRoot, CertifiedRoot]:
    """Certified largest_root(p) < largest_root(q), refining brackets on overlap."""
    rp, rq = largest_root(p), largest_root(q)
    width = 1e-10
    while not (rp.hi < rq.lo or rq.hi < rp.lo):
        if rp.lo == rp.hi == rq.lo == rq.hi:
            return False, rp, rq
        width *= 1e-8
        if width < 1e-200:
            raise RootError("largest roots coincide to 200 digits")
        rp, rq = largest_root(p, width), largest_root(q, width)
    return rp.hi < rq.lo, rp, rq


def _negative_on(p: Poly, r: CertifiedRoot) -> bool:
    """p < 0 on the whole certified bracket of r, so in particular at the root."""
    sc = SturmCounter(p)
    return p.eval_exact(r.lo) < 0 and p.eval_exact(r.hi) < 0 and sc.count_above(r.lo) == sc.count_above(r.hi)


def _x() -> Poly:
    return Poly([0, 1])


def _check_domain(lemma: str, ok: bool) -> None:
    if not ok:
        raise DomainError(f"{lemma} is stated for {_DOMAINS[lemma]}")


def _sqrt(c: Number) -> float:
    return math.sqrt(float(c))


def check_inequality(lemma: str, m: int, a: Optional[int] = None, b: Optional[int] = None) -> InequalityResult:
    """Verify one inequality lemma at one parameter point.

    ``holds`` is decided by certified roots (or exact Sturm counts at square
    roots); the witness additionally records the algebraic route, i.e. the
    difference polynomial, its value at the anchor point and monotonicity.
    """
    F = Fraction
    x = _x()
    if lemma == "L_bracket":
        _check_domain(lemma, m >= 12 and m % 2 == 0)
        L = family_poly("L", m).poly
        lo_c, hi_c = F(m) - F(5, 2), F(m - 2)
        above, below = root_above_sqrt(L, lo_c), root_below_sqrt(L, hi_c)
        r = largest_root(L)
        s = _sqrt(lo_c)
        t = _sqrt(hi_c)
        dL = L.derivative()
        w = {
            "root": r.to_dict(),
            "lower": s,
            "upper": t,
            "root_above_lower": above,
            "root_below_upper": below,
            "L_at_lower_negative": sign_at_sqrt(L, lo_c) < 0,
            "L_at_lower_closed_form": -(1.25 + s) * m + 4 * s + 3.875,
            "L_at_lower": float(L(s)),
            "L_at_upper_positive": sign_at_sqrt(L, hi_c) > 0,
            "L_at_upper_closed_form": 0.5 * (m * m - (9 + 2 * t) * m + 8 * (2 + t)),
            "dL_nonneg_above_upper": sign_at_sqrt(dL, hi_c) > 0 and SturmCounter(dL).count_above_sqrt(hi_c) == 0,
        }
        margin = min(r.lo_f - s, t - r.hi_f)
        return InequalityResult(lemma, m, above and below, margin, w)

    if lemma == "beta_bracket":
        _check_domain(lemma, m >= 62 and m % 2 == 0)
        Z = family_poly("Z", m).poly
        lo_c, hi_c = F(m - 2), F(m) - F(185, 100)
        above, below = root_above_sqrt(Z, lo_c), root_below_sqrt(Z, hi_c)
        r = largest_root(Z)
        dZ = Z.derivative()
        w = {
            "root": r.to_dict(),
            "lower": _sqrt(lo_c),
            "upper": _sqrt(hi_c),
            "root_above_lower": above,
            "root_below_upper": below,
            # Z(sqrt(m-2)) = -1 identically
            "Z_at_lower": float(Z(_sqrt(lo_c))),
            "Z_at_lower_is_minus_one": sign_at_sqrt(Z + Poly([1]), lo_c) == 0,
            "Z_at_upper_positive": sign_at_sqrt(Z, hi_c) > 0,
            "dZ_positive_above_upper": sign_at_sqrt(dZ, hi_c) > 0 and SturmCounter(dZ).count_above_sqrt(hi_c) == 0,
        }
        margin = min(r.lo_f - _sqrt(lo_c), _sqrt(hi_c) - r.hi_f)
        return InequalityResult(lemma, m, above and below, margin, w)

    if lemma == "LY":
        _check_domain(lemma, m >= 12 and m % 2 == 0 and m % 3 == 0)
        L = family_poly("L", m).poly
        Y = family_poly("Y", m).poly
        less, rl, ry = root_less(L, Y)
        D = L - Y.shift_up(2)
        stated = Poly.from_descending([1, -2, 3 - m, F(13 * m, 6) - 6, 4 - m, 2 - F(m, 2)])
        anchor = F(m - 3)
        s = _sqrt(anchor)
        dD = D.derivative()
        w = {
            "root_L": rl.to_dict(),
            "root_Y": ry.to_dict(),
            "difference_matches": D == stated,
            "difference_at_anchor": float(D(s)),
            "difference_at_anchor_closed_form": m * m / 6 - m * s - m + 4 * s + 2,
            "difference_positive_at_anchor": sign_at_sqrt(D, anchor) > 0,
            "difference_increasing_above_anchor": sign_at_sqrt(dD, anchor) > 0 and SturmCounter(dD).count_above_sqrt(anchor) == 0,
        }
        flagged = LY_FLAG_RANGE[0] <= m <= LY_FLAG_RANGE[1]
        if flagged:
            w["note"] = "below the claimed range m >= 38; reported, not judged"
        return InequalityResult(lemma, m, less, ry.lo_f - rl.hi_f, w, flagged=flagged)

    if lemma == "LT":
        _check_domain(lemma, m >= 10 and m % 2 == 0 and m % 3 == 1)
        L = family_poly("L", m).poly
        T = family_poly("T", m).poly
        less, rl, rt = root_less(L, T)
        D = L - T * x
        stated = Poly.from_descending([F(m + 2, 6), F(m - 4, 3), F(4 - m, 2)])
        sc = SturmCounter(D)
        three = F(3)
        w = {
            "root_L": rl.to_dict(),
            "root_T": rt.to_dict(),
            "difference_matches": D == stated,
            "difference_positive_from_3": D.eval_exact(three) > 0 and sc.count_above(three) == 0,
            "root_T_at_least_3": rt.lo >= 3,
        }
        return InequalityResult(lemma, m, less, rt.lo_f - rl.hi_f, w)

    if lemma == "F4_vs_L":
        _check_domain(lemma, m >= LARGE_M and m % 2 == 0)
        L = family_poly("L", m).poly
        F4 = family_poly("F4", m).poly
        less, r4, rl = root_less(F4, L)
        D = F4 - L
        stated = Poly.from_descending([m - 7, 2, 7 - m])
        one = F(1)
        w = {
            "root_F4": r4.to_dict(),
            "root_L": rl.to_dict(),
            "difference_matches": D == stated,
            "difference_positive_from_1": D.eval_exact(one) > 0 and SturmCounter(D).count_above(one) == 0,
        }
        return InequalityResult(lemma, m, less, rl.lo_f - r4.hi_f, w)

    if lemma == "F6_vs_L":
        _check_domain(lemma, m >= LARGE_M and m % 2 == 0 and (m - 8) % 5 == 0)
        L = family_poly("L", m).poly
        F6 = family_poly("F6", m).poly
        less, r6, rl = root_less(F6, L)
        D = L - F6.shift_up(2)
        stated = Poly.from_descending([1, -2, 3 - m, F(19 * m, 10) - F(26, 5), 4 - m, 2 - F(m, 2)])
        anchor = F(m - 3)
        s = _sqrt(anchor)
        dD = D.derivative()
        w = {
            "root_F6": r6.to_dict(),
            "root_L": rl.to_dict(),
            "difference_matches": D == stated,
            "difference_at_anchor": float(D(s)),
            "difference_at_anchor_closed_form": -m * m / 10 - m * s + 3 * m / 5 + 4 * s - 0.4,
            "difference_negative_at_anchor": sign_at_sqrt(D, anchor) < 0,
            "F6_root_above_anchor": r6.above_sqrt(anchor),
            "difference_negative_at_F6_root": _negative_on(D, r6),
            # Literal "decreasing for every x >= sqrt(m-3)" reading; a quintic
            # with positive lead cannot satisfy it (see notes).
            "difference_decreasing_above_anchor": sign_at_sqrt(dD, anchor) < 0 and SturmCounter(dD).count_above_sqrt(anchor) == 0,
        }
        return InequalityResult(lemma, m, less, rl.lo_f - r6.hi_f, w)

    if lemma == "Fab_vs_L":
        _check_domain(lemma, a is not None and b is not None)
        a, b = max(a, b), min(a, b)
        _check_domain(lemma, b >= 5 and a % 2 == 1 and b % 2 == 1 and m == a * b + 1 and m >= LARGE_M)
        L = family_poly("L", m).poly
        Fab = family_poly("Fab", m, a, b).poly
        less, rf, rl = root_less(Fab, L)
        D = L - Fab * x
        stated = Poly.from_descending([-(F(m, 2) + 5 - 2 * a - 2 * b), 4 + m - 2 * a - 2 * b, 2 - F(m, 2)])
        lead = F(m, 2) + 5 - 2 * a - 2 * b
        sc = SturmCounter(D)
        neg_at_root = _negative_on(D, rf)
        w = {
            "root_Fab": rf.to_dict(),
            "root_L": rl.to_dict(),
            "difference_matches": D == stated,
            "leading_identity": lead == F((a - 4) * (b - 4) - 5, 2),
            "leading_positive": lead > 0,
            "difference_negative_at_Fab_root": neg_at_root,
            # Literal "for every x >= 3" reading; fails when b = 5 (see notes).
            "difference_nonpositive_from_3": D.eval_exact(F(3)) <= 0 and sc.count_above(F(3)) == 0,
        }
        return InequalityResult(lemma, m, less, rl.lo_f - rf.hi_f, w, a=a, b=b)

    raise DomainError(f"unknown lemma {lemma!r}; expected one of {', '.join(LEMMAS)}")


def algebraic_ok(result: InequalityResult) -> bool:
    """All boolean witness entries that encode the algebraic route are true."""
    skip = {"difference_nonpositive_from_3", "difference_decreasing_above_anchor", "root_T_at_least_3"}
    vals = [v for k, v in result.witness.items() if isinstance(v, bool) and k not in skip]
    return all(vals)
