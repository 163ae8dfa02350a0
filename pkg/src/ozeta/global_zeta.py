"""Global zeta functions of maximal orders on surfaces over F_q.

Every formula here is a product of substituted Serre zeta functions, so
the building block is :func:`_substituted_product`, which multiplies
``Z(q^{nr-j} t^{nr})`` over ``n >= 1`` and ``1 <= j <= r`` using the gap
contract of :func:`infinite_product` (factor n starts at degree n*r).

Strata of the ramification locus are given by the L-data of their
covers; the base curve only enters the ratio reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .local import local_factor
from .series import (
    QZ,
    DirichletSeries,
    RationalFunction,
    SeriesError,
    TruncatedSeries,
    ZPoly,
    dirichlet_from_euler,
    infinite_product,
    substitute,
)
from .weil import (
    LData,
    LDataError,
    catalog,
    closed_point_census,
    complement,
    disjoint_union,
    point_counts,
    projective_space,
    serre_zeta,
    weil_poincare,
)

__all__ = [
    "OrderError",
    "RamificationStratum",
    "OrderSpec",
    "azumaya_zeta",
    "brauer_severi_serre",
    "brauer_severi_zeta",
    "strata_zeta",
    "order_zeta",
    "order_zeta_from_counts",
    "euler_product_zeta",
    "segal_local_factor",
    "segal_dirichlet",
    "poincare_exp_form",
    "poincare_product_form",
    "poincare_zeta",
    "euler_specialize",
    "euler_closed_form",
    "poincare_at_q",
    "nc_plane_preset",
    "matrix_algebra_spec",
    "sklyanin_ratio",
    "poincare_ratio_closed_form",
    "PRESETS",
]


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class RamificationStratum:
    cover: LData
    e: int

    def __post_init__(self):
        if self.e < 2:
            raise OrderError(f"ramification index must be >= 2, got {self.e}")


@dataclass(frozen=True)
class OrderSpec:
    q: int
    d: int
    azumaya_locus: LData
    strata: tuple = ()
    name: str = ""
    base: LData | None = None
    ramification_base: LData | None = None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise OrderError("degree d must be >= 1")
        if gcd(self.q, self.d) != 1:
            raise OrderError(f"q={self.q} is not coprime to d={self.d}")
        if self.azumaya_locus.q != self.q:
            raise OrderError("Azumaya locus is defined over a different field")
        strata = tuple(self.strata)
        for s in strata:
            if self.d % s.e:
                raise OrderError(f"ramification index {s.e} does not divide d={self.d}")
            if s.cover.q != self.q:
                raise OrderError("cover L-data over a different field")
        object.__setattr__(self, "strata", strata)
        flags = dict(self.flags)
        es = {s.e for s in strata}
        flags.setdefault("uniform_ramification_index", len(es) <= 1)
        object.__setattr__(self, "flags", flags)

    def r(self, stratum: RamificationStratum) -> int:
        return self.d // stratum.e


def _substituted_product(Z: RationalFunction, q: int, r: int, N: int) -> TruncatedSeries:
    def factor(n: int) -> RationalFunction:
        out = RationalFunction.one()
        for j in range(1, r + 1):
            out = out * substitute(Z, q, n * r - j, n * r)
        return out

    return infinite_product(factor, r, N)


def azumaya_zeta(X: LData, d: int, N: int) -> TruncatedSeries:
    """prod_{n>=1} prod_{j=1}^d Z_X(q^{nd-j} t^{nd})."""
    if d < 1:
        raise OrderError("d must be >= 1")
    return _substituted_product(serre_zeta(X), X.q, d, N)


def brauer_severi_serre(X: LData, d: int) -> RationalFunction:
    """Serre zeta of the relative P^{d-1} over X: prod_{j=1}^d Z_X(q^{d-j} t)."""
    Z = serre_zeta(X)
    out = RationalFunction.one()
    for j in range(1, d + 1):
        out = out * substitute(Z, X.q, d - j, 1)
    return out


def brauer_severi_zeta(X: LData, d: int, N: int) -> TruncatedSeries:
    """prod_{n>=1} Z_B(q^{nd-d} t^{nd}) with B the Brauer-Severi scheme."""
    ZB = brauer_severi_serre(X, d)
    return infinite_product(lambda n: substitute(ZB, X.q, n * d - d, n * d), d, N)


def strata_zeta(stratum: RamificationStratum, d: int, N: int) -> TruncatedSeries:
    if d % stratum.e:
        raise OrderError(f"e={stratum.e} does not divide d={d}")
    return _substituted_product(serre_zeta(stratum.cover), stratum.cover.q, d // stratum.e, N)


def order_zeta(spec: OrderSpec, N: int) -> TruncatedSeries:
    out = azumaya_zeta(spec.azumaya_locus, spec.d, N)
    for s in spec.strata:
        out = out * strata_zeta(s, spec.d, N)
    return out


def _log_from_counts(L: LData, r: int, N: int) -> TruncatedSeries:
    # sum_k N_k/k * t^{kr} * (q^{rk}-1)/(q^k-1) / (1 - (qt)^{kr})
    q = L.q
    K = N // r
    if K < 1:
        return TruncatedSeries([], N)
    counts = point_counts(L, K).counts
    c = [Fraction(0)] * (N + 1)
    for k in range(1, K + 1):
        base = Fraction(counts[k - 1], k) * sum(q ** (k * l) for l in range(r))
        n = 0
        while k * r * (n + 1) <= N:
            c[k * r * (n + 1)] += base * q ** (k * r * n)
            n += 1
    return TruncatedSeries(c, N)


def order_zeta_from_counts(spec: OrderSpec, N: int) -> TruncatedSeries:
    """exp of the point-count logarithm; an independent route to order_zeta."""
    log = _log_from_counts(spec.azumaya_locus, spec.d, N)
    for s in spec.strata:
        log = log + _log_from_counts(s.cover, spec.r(s), N)
    return log.exp()


def _census_product(L: LData, q: int, r: int, N: int) -> TruncatedSeries:
    census = closed_point_census(L, N).degrees
    out = TruncatedSeries.one(N)
    for k, a in enumerate(census, 1):
        if a and k * r <= N:
            out = out * local_factor(k, q, r, 1, N) ** a
    return out


def euler_product_zeta(spec: OrderSpec, N: int) -> TruncatedSeries:
    """Product of local slice factors over closed points of U and of each cover."""
    if N < 1:
        return TruncatedSeries.one(N)
    try:
        out = _census_product(spec.azumaya_locus, spec.q, spec.d, N)
        for s in spec.strata:
            out = out * _census_product(s.cover, spec.q, spec.r(s), N)
    except LDataError as exc:
        raise OrderError(f"census unavailable: {exc}") from exc
    return out


def segal_local_factor(p: int, K: int) -> TruncatedSeries:
    """p-part of the zeta function of Z[x], as a series in u = p^{-s}."""
    return azumaya_zeta(catalog("affine_line", p), 1, K)


def segal_dirichlet(N: int) -> DirichletSeries:
    return dirichlet_from_euler(segal_local_factor, N)


def _betti(L: LData) -> tuple:
    return weil_poincare(L).coeffs


def poincare_exp_form(betti: Sequence[int], r: int, N: int) -> TruncatedSeries:
    """Z(z,t) for one stratum of period r via the exponential formula.

    The formula natively gives Z(-z,t) from P(-z^k); substituting z -> -z
    turns P(-z^k) into P(-(-z)^k) and leaves even powers alone.
    """
    c = [ZPoly()] * (N + 1)
    for k in range(1, N // r + 1):
        sign_k = (-1) ** (k + 1)  # -(-1)^k
        P = ZPoly([Fraction(b * sign_k**i) for i, b in enumerate(betti)]).subs_power(k)
        P = P / k
        geo = ZPoly.const(0)
        for l in range(r):
            geo = geo + ZPoly.monomial(2 * k * l)
        n = 0
        while k * r * (n + 1) <= N:
            deg = k * r * (n + 1)
            c[deg] = c[deg] + P * geo * ZPoly.monomial(2 * k * r * n)
            n += 1
    return TruncatedSeries(c, N, QZ).exp()


def poincare_product_form(betti: Sequence[int], r: int, N: int) -> TruncatedSeries:
    """prod_i prod_j prod_{l<r} (1 - (-z)^{2jr+2l+i} t^{jr+r})^{-(-1)^i b_i}."""

    def factor(n: int) -> TruncatedSeries:
        j = n - 1
        out = TruncatedSeries.one(N, QZ)
        for i, b in enumerate(betti):
            if not b:
                continue
            for l in range(r):
                e = 2 * j * r + 2 * l + i
                mono = ZPoly.monomial(e, (-1) ** e)
                f = TruncatedSeries.from_dict({0: ZPoly.const(1), j * r + r: -mono}, N, QZ)
                out = out * f ** (-((-1) ** i) * b)
        return out

    return infinite_product(factor, r, N, QZ)


def poincare_zeta(spec: OrderSpec, N: int) -> TruncatedSeries:
    """Z^Poin(z, t); computed twice and cross-checked."""
    parts = [(_betti(spec.azumaya_locus), spec.d)]
    parts += [(_betti(s.cover), spec.r(s)) for s in spec.strata]
    a = TruncatedSeries.one(N, QZ)
    b = TruncatedSeries.one(N, QZ)
    for betti, r in parts:
        a = a * poincare_exp_form(betti, r, N)
        b = b * poincare_product_form(betti, r, N)
    diff = a.first_difference(b)
    if diff is not None:
        k, x, y = diff
        raise SeriesError(f"Poincare forms disagree at t^{k}: exp form {x}, product form {y}")
    return a


def euler_specialize(p: TruncatedSeries) -> TruncatedSeries:
    return p.subs_z(-1)


def euler_closed_form(euler_char: int, d: int, N: int) -> TruncatedSeries:
    """prod_{j>=0} (1 - t^{dj+d})^{-euler_char*d}."""
    return infinite_product(
        lambda n: RationalFunction((1,), [1] + [0] * (n * d - 1) + [-1]) ** (euler_char * d), d, N
    )


def poincare_at_q(p: TruncatedSeries, q: int) -> TruncatedSeries:
    """Evaluate Z(-z, t) at z^2 = q; only meaningful when odd powers vanish."""
    return TruncatedSeries((a.negate_z().eval_z2(q) for a in p.coefficients()), p.N)


def matrix_algebra_spec(X: LData, d: int, name: str = "") -> OrderSpec:
    return OrderSpec(X.q, d, X, (), name or f"M_{d}({X.name})", base=X)


def _preset_pieces(kind: str, q: int, trace: int):
    """Base curve Y and the covers of its components, one per stratum."""
    P1 = projective_space(q, 1)
    A1 = catalog("affine_line", q)
    Gm = catalog("punctured_affine_line", q)
    pt = catalog("point", q)
    if kind == "three_lines":
        return catalog("three_lines", q), [P1, A1, Gm], {}
    if kind == "conic_line":
        # conic cover is P^1; the line minus the two nodes has cover G_m
        return catalog("conic_line", q), [P1, Gm], {}
    if kind == "nodal_cubic":
        # normalisation minus the node's preimages, plus the totally ramified node
        return catalog("nodal_cubic", q), [disjoint_union(Gm, pt, name="nodal_cover")], {
            "terminal_ramification_assumption": False
        }
    if kind == "sklyanin":
        Y = catalog("elliptic", q, trace=trace)
        cover = LData(q, Y.factors, name=f"etale_cover({Y.name})")
        return Y, [cover], {}
    raise OrderError(f"unknown preset {kind!r}")


PRESETS = ("three_lines", "conic_line", "nodal_cubic", "sklyanin")
_H = {"three_lines": 3, "conic_line": 2, "nodal_cubic": 1}


def nc_plane_preset(kind: str, d: int, e: int, q: int, trace: int = 0) -> OrderSpec:
    if e < 2 or d % e:
        raise OrderError(f"need e >= 2 dividing d, got d={d}, e={e}")
    if gcd(q, d) != 1:
        raise OrderError(f"q={q} is not coprime to d={d}")
    P2 = projective_space(q, 2)
    Y, covers, flags = _preset_pieces(kind, q, trace)
    U = complement(P2, Y, name=f"P2-{Y.name}")
    flags = {"terminal_ramification_assumption": True, "h": _H.get(kind), **flags}
    strata = tuple(RamificationStratum(c, e) for c in covers)
    return OrderSpec(q, d, U, strata, name=kind, base=P2, ramification_base=Y, flags=flags)


def sklyanin_ratio(Y: LData, d: int, e: int, N: int) -> TruncatedSeries:
    """Ratio of the order's zeta to that of M_d(O_X), from the base curve alone."""
    num = _substituted_product(serre_zeta(Y), Y.q, d // e, N)
    den = _substituted_product(serre_zeta(Y), Y.q, d, N)
    return num / den


def poincare_ratio_closed_form(Y: LData, d: int, e: int, N: int) -> TruncatedSeries:
    """Poincare zeta of the order divided by that of M_d(O_X), from the Betti numbers of Y."""
    betti = _betti(Y)
    return poincare_product_form(betti, d // e, N) / poincare_product_form(betti, d, N)
