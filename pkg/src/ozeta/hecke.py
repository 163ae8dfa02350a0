"""Symbolic calculus of z-adic Hecke operators.

Generators ``z^i(t_j)`` are keyed by pairs ``(i, j)`` with ``i >= 0`` the
z-shift and ``1 <= j <= g`` the simple module index.  A monomial is a
sorted tuple of ``((i, j), exponent)`` pairs.  Series are truncated by
total degree.

The operator Xi sends a monomial ``m = m_0 * m_{>0}`` (split by whether
``i == 0``) to ``chi(z(m)) / chi(m_{>0}) * m_0 * z(m)``, where ``z`` raises
every shift by one.  It is multiplicative, so it extends to a continuous
ring endomorphism of the completed monoid ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .series import TruncatedSeries

__all__ = [
    "LMonomial",
    "LSeries",
    "ChiSpec",
    "xi",
    "xi_series",
    "xi_power_closed_form",
    "rho",
    "rho_prime",
    "partial_product",
    "multi_param_zeta",
    "hey_multivariate",
    "degree_T",
    "slice_from_hecke",
]


class LMonomial:
    """Finitely supported exponent map on generators (i, j)."""

    __slots__ = ("items", "_h")

    def __init__(self, exps: Mapping | Iterable = ()):
        d: dict = {}
        it = exps.items() if isinstance(exps, Mapping) else exps
        for (i, j), e in it:
            if i < 0 or j < 1 or e < 0:
                raise ValueError(f"bad generator/exponent {(i, j)}^{e}")
            if e:
                d[(i, j)] = d.get((i, j), 0) + e
        self.items = tuple(sorted(d.items()))
        self._h = hash(self.items)

    @classmethod
    def gen(cls, i: int, j: int, e: int = 1) -> "LMonomial":
        return cls({(i, j): e})

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.items)

    def __mul__(self, other: "LMonomial") -> "LMonomial":
        d = dict(self.items)
        for k, e in other.items:
            d[k] = d.get(k, 0) + e
        return LMonomial(d)

    def __pow__(self, e: int) -> "LMonomial":
        return LMonomial({k: v * e for k, v in self.items})

    def split(self) -> tuple:
        """(m_0, m_{>0})"""
        return (
            LMonomial([(k, e) for k, e in self.items if k[0] == 0]),
            LMonomial([(k, e) for k, e in self.items if k[0] > 0]),
        )

    def shift(self, s: int = 1) -> "LMonomial":
        return LMonomial({(i + s, j): e for (i, j), e in self.items})

    def __eq__(self, other):
        return isinstance(other, LMonomial) and self.items == other.items

    def __lt__(self, other):
        return self.items < other.items

    def __hash__(self):
        return self._h

    def __repr__(self):
        if not self.items:
            return "1"
        parts = []
        for (i, j), e in self.items:
            g = f"t{j}" if i == 0 else (f"z(t{j})" if i == 1 else f"z^{i}(t{j})")
            parts.append(g if e == 1 else f"{g}^{e}")
        return "*".join(parts)


ONE = LMonomial()


@dataclass(frozen=True)
class ChiSpec:
    """chi(z^i(t_j)) = values[sigma^i(j)], extended multiplicatively.

    ``values[k-1]`` is the cardinality of the k-th simple module and
    ``sigma`` is a permutation of 1..g given as the tuple of images.
    """

    g: int
    values: tuple
    sigma: tuple = ()

    def __post_init__(self):
        sigma = tuple(self.sigma) or tuple(range(1, self.g + 1))
        if sorted(sigma) != list(range(1, self.g + 1)):
            raise ValueError(f"sigma {sigma} is not a permutation of 1..{self.g}")
        if len(self.values) != self.g or any(int(v) < 1 for v in self.values):
            raise ValueError("chi needs one positive value per simple module")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def matrix(cls, q: int, r: int, g: int = 1, sigma: Sequence[int] = ()) -> "ChiSpec":
        """Default for prod^g M_r(F_q): every simple has q^r elements."""
        return cls(g, (q**r,) * g, tuple(sigma))

    def sigma_power(self, i: int, j: int) -> int:
        for _ in range(i):
            j = self.sigma[j - 1]
        return j

    def gen_value(self, i: int, j: int) -> int:
        return self.values[self.sigma_power(i, j) - 1]

    def __call__(self, m: LMonomial) -> int:
        out = 1
        for (i, j), e in m.items:
            out *= self.gen_value(i, j) ** e
        return out


def xi(m: LMonomial, chi: ChiSpec) -> tuple:
    m0, mpos = m.split()
    zm = m.shift()
    return Fraction(chi(zm), chi(mpos)), m0 * zm


class LSeries:
    """Element of the completed monoid ring, truncated at total degree D."""

    __slots__ = ("D", "terms")

    def __init__(self, terms: Mapping, D: int):
        self.D = D
        self.terms = {m: Fraction(c) for m, c in terms.items() if c and m.degree <= D}

    @classmethod
    def one(cls, D: int) -> "LSeries":
        return cls({ONE: 1}, D)

    @classmethod
    def from_multivariate(cls, coeffs: Mapping[tuple, object], D: int) -> "LSeries":
        """Build an i=0 series from ``{(a_1..a_g): c}`` meaning c * t_1^a_1 ... t_g^a_g."""
        terms = {}
        for exps, c in coeffs.items():
            m = LMonomial({(0, j + 1): a for j, a in enumerate(exps)})
            terms[m] = terms.get(m, 0) + Fraction(c)
        return cls(terms, D)

    def __getitem__(self, m: LMonomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __add__(self, other: "LSeries") -> "LSeries":
        D = min(self.D, other.D)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LSeries(out, D)

    def __sub__(self, other: "LSeries") -> "LSeries":
        return self + LSeries({m: -c for m, c in other.terms.items()}, other.D)

    def __mul__(self, other: "LSeries") -> "LSeries":
        D = min(self.D, other.D)
        out: dict = {}
        b = [(m, c, m.degree) for m, c in other.terms.items()]
        for m1, c1 in self.terms.items():
            d1 = m1.degree
            for m2, c2, d2 in b:
                if d1 + d2 <= D:
                    m = m1 * m2
                    out[m] = out.get(m, 0) + c1 * c2
        return LSeries(out, D)

    def __eq__(self, other):
        if not isinstance(other, LSeries):
            return NotImplemented
        D = min(self.D, other.D)
        a = {m: c for m, c in self.terms.items() if m.degree <= D}
        b = {m: c for m, c in other.terms.items() if m.degree <= D}
        return a == b

    def min_degree_nonconstant(self) -> int | None:
        degs = [m.degree for m in self.terms if m != ONE]
        return min(degs) if degs else None

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (kv[0].degree, kv[0]))
        return " + ".join(f"{c}*{m}" for m, c in items[:10]) + (" + ..." if len(items) > 10 else "")


def xi_series(s: LSeries, chi: ChiSpec) -> LSeries:
    out: dict = {}
    for m, c in s.terms.items():
        a, m2 = xi(m, chi)
        out[m2] = out.get(m2, 0) + a * c
    return LSeries(out, s.D)


def xi_power_closed_form(j: int, n: int, chi: ChiSpec) -> tuple:
    """Expected Xi^n(t_j) when chi is constant: (chi^n, t_j z(t_j) ... z^n(t_j))."""
    c = chi.values[0]
    if any(v != c for v in chi.values):
        raise ValueError("closed form needs a constant character")
    return Fraction(c**n), LMonomial({(i, j): 1 for i in range(n + 1)})


def rho(s: LSeries, chi: ChiSpec) -> dict:
    """z^i(t_j) -> t_{sigma^i(j)}; result keyed by exponent tuples (a_1..a_g)."""
    out: dict = {}
    for m, c in s.terms.items():
        exps = [0] * chi.g
        for (i, j), e in m.items:
            exps[chi.sigma_power(i, j) - 1] += e
        k = tuple(exps)
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def rho_prime(multi: Mapping[tuple, object], r: int, D: int) -> TruncatedSeries:
    """t_j -> t^r; total degree D becomes t-degree r*D."""
    N = r * D
    c = [Fraction(0)] * (N + 1)
    for exps, v in multi.items():
        deg = r * sum(exps)
        if deg <= N:
            c[deg] += Fraction(v)
    return TruncatedSeries(c, N)


def partial_product(Zbar: LSeries, chi: ChiSpec, n: int, D: int | None = None) -> LSeries:
    """prod_{k<n} Xi^k(Zbar), truncated at total degree D."""
    D = Zbar.D if D is None else min(D, Zbar.D)
    if Zbar[ONE] != 1:
        raise ValueError("Zbar must have constant term 1")
    out = LSeries.one(D)
    cur = LSeries(Zbar.terms, D)
    for _ in range(n):
        out = out * cur
        cur = xi_series(cur, chi)
    return out


def multi_param_zeta(chi: ChiSpec, Zbar: LSeries, D: int | None = None) -> dict:
    """rho of the stabilised partial product; Xi^k(Zbar) = 1 + O(deg k+1)."""
    D = Zbar.D if D is None else min(D, Zbar.D)
    return rho(partial_product(Zbar, chi, D + 1, D), chi)


def hey_multivariate(q: int, r: int, m: int, D: int) -> LSeries:
    """prod_{i=1}^m prod_{j<r} (1 - q^j t_i)^{-1}: the residue zeta with t_i per simple."""
    one_var = [Fraction(1)] + [Fraction(0)] * D
    for j in range(r):
        geo = [Fraction(q**j) ** k for k in range(D + 1)]
        one_var = [sum(one_var[a] * geo[k - a] for a in range(k + 1)) for k in range(D + 1)]
    coeffs: dict = {(): Fraction(1)}
    for _ in range(m):
        nxt: dict = {}
        for exps, c in coeffs.items():
            used = sum(exps)
            for k in range(D - used + 1):
                if one_var[k]:
                    nxt[exps + (k,)] = nxt.get(exps + (k,), 0) + c * one_var[k]
        coeffs = nxt
    return LSeries.from_multivariate(coeffs, D)


def degree_T(a_N: int, nu_N: LMonomial, s: LSeries, chi: ChiSpec) -> LSeries:
    """Degree of T_{N} applied to s: a_N * nu(N) * Xi(s)."""
    lifted = xi_series(s, chi)
    return LSeries({nu_N * m: a_N * c for m, c in lifted.terms.items()}, s.D)


def slice_from_hecke(q: int, r: int, m: int, N: int, sigma: Sequence[int] = ()) -> TruncatedSeries:
    """rho' rho of the stabilised product for a matrix residue shape, to t-degree N."""
    D = N // r
    chi = ChiSpec.matrix(q, r, m, sigma)
    s = rho_prime(multi_param_zeta(chi, hey_multivariate(q, r, m, D), D), r, D)
    # degrees between r*D and N are not multiples of r, so padding with zeros is exact
    return TruncatedSeries(s.coefficients(), N)
