"""Strata of varieties over F_q encoded by weight-graded L-polynomial factors.

An :class:`LData` stores factors ``(w, P_w, m)``: ``P_w`` is an integer
polynomial in t with ``P_w(0) = 1`` whose inverse roots are declared pure
of weight ``w`` and ``m`` is a signed multiplicity.  The Serre zeta function
of the stratum is

    prod P_w(t) ** (m * (-1)**(w + 1)).

Frobenius eigenvalues never appear explicitly; point counts come from
Newton power sums of the integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import divisors, mobius

from .series import RationalFunction, SeriesError, TruncatedSeries, poly_mul, poly_pow

__all__ = [
    "LDataError",
    "LFactor",
    "LData",
    "PointCountSequence",
    "WeilPoincarePolynomial",
    "ClosedPointCensus",
    "point_counts",
    "serre_zeta",
    "closed_point_census",
    "weil_poincare",
    "catalog",
    "disjoint_union",
    "complement",
    "product",
    "projective_space",
    "CATALOG_NAMES",
]

MAX_WEIGHT = 4


class LDataError(ValueError):
    pass


def _power_sums(coeffs: Sequence[int], K: int) -> list:
    """Power sums p_1..p_K of the inverse roots of 1 + c_1 t + c_2 t^2 + ...

    Newton: p_k = -k c_k - sum_{i=1}^{k-1} c_i p_{k-i}.
    """
    c = list(coeffs) + [0] * max(0, K + 1 - len(coeffs))
    p = [0] * (K + 1)
    for k in range(1, K + 1):
        acc = -k * c[k]
        for i in range(1, k):
            acc -= c[i] * p[k - i]
        p[k] = acc
    return p[1:]


def _poly_from_power_sums(p: Sequence, deg: int) -> tuple:
    """Inverse of _power_sums: coefficients of prod (1 - a_i t) of given degree."""
    c = [Fraction(1)]
    for k in range(1, deg + 1):
        acc = Fraction(p[k - 1])
        for i in range(1, k):
            acc += c[i] * p[k - i - 1]
        c.append(-acc / k)
    if any(x.denominator != 1 for x in c):
        raise LDataError("power sums do not come from an integer polynomial")
    return tuple(int(x) for x in c)


@dataclass(frozen=True)
class LFactor:
    weight: int
    poly: tuple
    mult: int = 1

    def __post_init__(self):
        if not 0 <= self.weight <= MAX_WEIGHT:
            raise LDataError(f"weight {self.weight} outside 0..{MAX_WEIGHT}")
        poly = tuple(self.poly)
        for a in poly:
            if isinstance(a, Fraction) and a.denominator != 1:
                raise LDataError(f"non-integer coefficient {a} in L-factor")
            if not isinstance(a, (int, Fraction)):
                raise LDataError(f"bad coefficient {a!r} in L-factor")
        poly = tuple(int(a) for a in poly)
        while len(poly) > 1 and poly[-1] == 0:
            poly = poly[:-1]
        if not poly or poly[0] != 1:
            raise LDataError("L-factor must satisfy P(0) = 1")
        object.__setattr__(self, "poly", poly)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1


@dataclass(frozen=True)
class LData:
    q: int
    factors: tuple = ()
    virtual: bool = False
    name: str = ""

    def __post_init__(self):
        if self.q < 2:
            raise LDataError("q must be a prime power >= 2")
        merged: dict = {}
        for f in self.factors:
            if not isinstance(f, LFactor):
                f = LFactor(*f)
            key = (f.weight, f.poly)
            merged[key] = merged.get(key, 0) + f.mult
        facs = tuple(
            LFactor(w, p, m) for (w, p), m in sorted(merged.items()) if m != 0 and len(p) > 1
        )
        object.__setattr__(self, "factors", facs)

    def counts(self, K: int) -> list:
        return point_counts(self, K).counts

    def serre(self) -> RationalFunction:
        return serre_zeta(self)

    def betti(self) -> tuple:
        return weil_poincare(self).coeffs


@dataclass(frozen=True)
class PointCountSequence:
    q: int
    counts: tuple

    def __getitem__(self, k: int) -> int:
        return self.counts[k - 1]


@dataclass(frozen=True)
class WeilPoincarePolynomial:
    coeffs: tuple = field(default=(0, 0, 0, 0, 0))

    def __call__(self, z):
        return sum(b * z**i for i, b in enumerate(self.coeffs))

    def __add__(self, other: "WeilPoincarePolynomial") -> "WeilPoincarePolynomial":
        return WeilPoincarePolynomial(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.coeffs))


@dataclass(frozen=True)
class ClosedPointCensus:
    q: int
    degrees: tuple

    def __getitem__(self, k: int) -> int:
        return self.degrees[k - 1]


def point_counts(L: LData, K: int) -> PointCountSequence:
    if K < 1:
        raise LDataError("K must be >= 1")
    total = [0] * K
    for f in L.factors:
        sign = f.mult * (-1) ** f.weight
        for k, pk in enumerate(_power_sums(f.poly, K)):
            total[k] += sign * pk
    return PointCountSequence(L.q, tuple(total))


def serre_zeta(L: LData) -> RationalFunction:
    num: tuple = (Fraction(1),)
    den: tuple = (Fraction(1),)
    for f in L.factors:
        e = f.mult * (-1) ** (f.weight + 1)
        if e > 0:
            num = poly_mul(num, poly_pow(f.poly, e))
        else:
            den = poly_mul(den, poly_pow(f.poly, -e))
    return RationalFunction(num, den)


def closed_point_census(L: LData, K: int) -> ClosedPointCensus:
    """Number of closed points of each degree 1..K by Moebius inversion."""
    N = point_counts(L, K).counts
    out = []
    for k in range(1, K + 1):
        s = sum(mobius(k // d) * N[d - 1] for d in divisors(k))
        if s % k:
            raise LDataError(f"degree-{k} census is not an integer; L-data is inconsistent")
        a = s // k
        if a < 0:
            raise LDataError(
                f"negative number of degree-{k} closed points ({a}); "
                f"{L.name or 'L-data'} does not describe a variety"
            )
        out.append(int(a))
    return ClosedPointCensus(L.q, tuple(out))


def weil_poincare(L: LData) -> WeilPoincarePolynomial:
    b = [0] * (MAX_WEIGHT + 1)
    for f in L.factors:
        b[f.weight] += f.mult * f.degree
    return WeilPoincarePolynomial(tuple(b))


def _census_nonnegative(L: LData, K: int = 12) -> bool:
    try:
        closed_point_census(L, K)
    except LDataError:
        return False
    return True


def disjoint_union(*parts: LData, name: str = "") -> LData:
    if not parts:
        raise LDataError("empty union")
    q = parts[0].q
    if any(p.q != q for p in parts):
        raise LDataError("cannot combine L-data over different fields")
    facs = [f for p in parts for f in p.factors]
    return LData(q, tuple(facs), any(p.virtual for p in parts), name)


def complement(X: LData, Y: LData, name: str = "") -> LData:
    """X minus a closed subvariety Y; virtual unless the census stays nonnegative."""
    if X.q != Y.q:
        raise LDataError("cannot combine L-data over different fields")
    facs = list(X.factors) + [LFactor(f.weight, f.poly, -f.mult) for f in Y.factors]
    out = LData(X.q, tuple(facs), False, name or f"{X.name}-{Y.name}")
    if not _census_nonnegative(out):
        out = LData(out.q, out.factors, True, out.name)
    return out


def product(X: LData, Y: LData, name: str = "") -> LData:
    """Cartesian product: inverse roots multiply, weights add."""
    if X.q != Y.q:
        raise LDataError("cannot combine L-data over different fields")
    facs = []
    for f in X.factors:
        for g in Y.factors:
            w = f.weight + g.weight
            if w > MAX_WEIGHT:
                raise LDataError("product exceeds weight 4 (surfaces only)")
            deg = f.degree * g.degree
            pf = _power_sums(f.poly, deg)
            pg = _power_sums(g.poly, deg)
            poly = _poly_from_power_sums([a * b for a, b in zip(pf, pg)], deg)
            facs.append(LFactor(w, poly, f.mult * g.mult))
    return LData(X.q, tuple(facs), X.virtual or Y.virtual, name or f"{X.name}x{Y.name}")


def projective_space(q: int, n: int) -> LData:
    return LData(q, tuple(LFactor(2 * i, (1, -(q**i))) for i in range(n + 1)), name=f"P{n}")


def _point(q):
    return LData(q, (LFactor(0, (1, -1)),), name="point")


def _affine_line(q):
    return LData(q, (LFactor(2, (1, -q)),), name="affine_line")


def _gm(q):
    return LData(q, (LFactor(2, (1, -q)), LFactor(0, (1, -1), -1)), name="punctured_affine_line")


def _curve(q, numerator: Sequence[int], name: str) -> LData:
    numerator = tuple(int(a) for a in numerator)
    if len(numerator) % 2 != 1:
        raise LDataError("curve numerator must have even degree 2g")
    g = (len(numerator) - 1) // 2
    if g and numerator[-1] != q**g:
        raise LDataError(f"leading coefficient of L(t) must be q^g = {q ** g}")
    L = LData(
        q,
        (LFactor(0, (1, -1)), LFactor(1, numerator), LFactor(2, (1, -q))),
        name=name,
    )
    if not _census_nonnegative(L):
        raise LDataError(f"numerator {numerator} gives a negative closed-point census")
    return L


CATALOG_NAMES = (
    "point",
    "affine_line",
    "punctured_affine_line",
    "P1",
    "P2",
    "A2",
    "P1xP1",
    "elliptic",
    "genus_g_curve",
    "three_lines",
    "conic_line",
    "nodal_cubic",
    "complement",
)


def catalog(name: str, q: int, **params) -> LData:
    """Named L-data over F_q.

    ``elliptic`` takes ``trace``; ``genus_g_curve`` takes ``numerator``
    (coefficients of L(t), constant term first); ``complement`` takes
    ``X`` and ``Y`` (catalog names or LData).
    """
    if name == "point":
        return _point(q)
    if name == "affine_line":
        return _affine_line(q)
    if name == "punctured_affine_line":
        return _gm(q)
    if name == "P1":
        return projective_space(q, 1)
    if name == "P2":
        return projective_space(q, 2)
    if name == "A2":
        return LData(q, (LFactor(4, (1, -q * q)),), name="A2")
    if name == "P1xP1":
        return product(projective_space(q, 1), projective_space(q, 1), name="P1xP1")
    if name == "elliptic":
        a = int(params.get("trace", 0))
        if a * a > 4 * q:
            raise LDataError(f"trace {a} violates the Hasse bound for q={q}")
        return _curve(q, (1, -a, q), name=f"elliptic(a={a})")
    if name == "genus_g_curve":
        return _curve(q, params["numerator"], name="curve")
    if name == "three_lines":
        # a coordinate line, an affine line and a punctured affine line
        return disjoint_union(projective_space(q, 1), _affine_line(q), _gm(q), name="three_lines")
    if name == "conic_line":
        # the conic, and the line minus its two intersection points with it
        P1 = projective_space(q, 1)
        return disjoint_union(P1, complement(P1, disjoint_union(_point(q), _point(q))), name="conic_line")
    if name == "nodal_cubic":
        # normalisation minus the two branches over the node, plus the node
        P1 = projective_space(q, 1)
        return disjoint_union(complement(P1, disjoint_union(_point(q), _point(q))), _point(q), name="nodal_cubic")
    if name == "complement":
        X = params["X"]
        Y = params["Y"]
        X = catalog(X, q) if isinstance(X, str) else X
        Y = catalog(Y, q) if isinstance(Y, str) else Y
        return complement(X, Y)
    raise LDataError(f"unknown catalog entry {name!r}")


def serre_series(L: LData, N: int) -> TruncatedSeries:
    return serre_zeta(L).expand(N)


def serre_from_counts(L: LData, N: int) -> TruncatedSeries:
    """exp(sum_k N_k t^k / k); independent of the rational-function route."""
    if N == 0:
        return TruncatedSeries.one(0)
    counts = point_counts(L, N).counts
    log = TruncatedSeries([0] + [Fraction(c, k) for k, c in enumerate(counts, 1)], N)
    return log.exp()


def from_factors(q: int, factors: Iterable, name: str = "", virtual: bool = False) -> LData:
    """Build L-data from ``(weight, coefficients[, mult])`` triples."""
    facs = []
    for f in factors:
        if len(f) == 2:
            facs.append(LFactor(int(f[0]), tuple(f[1])))
        elif len(f) == 3:
            facs.append(LFactor(int(f[0]), tuple(f[1]), int(f[2])))
        else:
            raise LDataError(f"bad factor spec {f!r}")
    L = LData(q, tuple(facs), virtual, name)
    try:
        point_counts(L, 1)
    except SeriesError as exc:
        raise LDataError(str(exc)) from exc
    return L
