"""Local zeta functions of maximal orders.

Colengths are F_q-dimensions of quotients throughout, so a lattice of
colength n in O^r gives a left ideal of M_r(O) of colength r*n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import RationalFunction, TruncatedSeries, infinite_product, poly_mul, poly_pow

__all__ = ["LocalOrderShape", "hey_zeta", "slice_zeta", "local_factor", "hey_factor"]


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@dataclass(frozen=True)
class LocalOrderShape:
    q: int
    r: int = 1
    m: int = 1

    def __post_init__(self):
        if not _is_prime_power(self.q):
            raise ValueError(f"q={self.q} is not a prime power")
        if self.r < 1 or self.m < 1:
            raise ValueError("r and m must be >= 1")


def hey_factor(shape: LocalOrderShape) -> RationalFunction:
    """prod_{j<r} (1 - q^j t^r)^{-m} as a rational function."""
    q, r, m = shape.q, shape.r, shape.m
    den = (1,)
    for j in range(r):
        den = poly_mul(den, [1] + [0] * (r - 1) + [-(q**j)])
    return RationalFunction((1,), poly_pow(den, m))


def hey_zeta(shape: LocalOrderShape, N: int) -> TruncatedSeries:
    if N < 0:
        raise ValueError("N must be >= 0")
    return hey_factor(shape).expand(N)


def slice_zeta(shape: LocalOrderShape, N: int) -> TruncatedSeries:
    """prod_{n>=1} prod_{j=1}^r (1 - q^{nr-j} t^{nr})^{-m}."""
    if N < 0:
        raise ValueError("N must be >= 0")
    q, r, m = shape.q, shape.r, shape.m

    def factor(n: int) -> RationalFunction:
        den = (1,)
        for j in range(1, r + 1):
            den = poly_mul(den, [1] + [0] * (n * r - 1) + [-(q ** (n * r - j))])
        return RationalFunction((1,), poly_pow(den, m))

    return infinite_product(factor, r, N)


def local_factor(k: int, q: int, r: int, m: int, N: int) -> TruncatedSeries:
    """Slice zeta at a closed point with residue field F_{q^k}, in the variable t^k."""
    if k < 1:
        raise ValueError("point degree must be >= 1")
    s = slice_zeta(LocalOrderShape(q**k, r, m), N // k)
    return s.compose_monomial(1, k, N)
