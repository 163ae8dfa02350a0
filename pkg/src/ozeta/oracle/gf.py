"""Small finite fields as lookup tables.

Elements of F_{p^k} (k <= 2) are encoded as integers ``a0 + p*a1`` meaning
``a0 + a1*alpha`` with alpha a root of a fixed irreducible quadratic.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["GF", "field"]

# alpha^2 = c0 + c1*alpha
_QUADRATIC = {2: (1, 1), 3: (-1, 0), 5: (2, 0), 7: (-1, 0)}


class GF:
    def __init__(self, q: int):
        p, k = _split(q)
        self.q, self.p, self.k = q, p, k
        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._add(a, b)
                mul[a, b] = self._mul(a, b)
        neg = np.array([self._neg(a) for a in range(q)], dtype=np.uint8)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            (b,) = [b for b in range(1, q) if mul[a, b] == 1]
            inv[a] = b
        self.add, self.mul, self.neg, self.inv = add, mul, neg, inv
        self.tables = (add, mul, neg, inv)

    def _digits(self, a):
        return (a % self.p, a // self.p) if self.k == 2 else (a, 0)

    def _enc(self, a0, a1):
        return a0 % self.p + (self.p * (a1 % self.p) if self.k == 2 else 0)

    def _add(self, a, b):
        x, y = self._digits(a), self._digits(b)
        return self._enc(x[0] + y[0], x[1] + y[1])

    def _neg(self, a):
        x = self._digits(a)
        return self._enc(-x[0], -x[1])

    def _mul(self, a, b):
        (a0, a1), (b0, b1) = self._digits(a), self._digits(b)
        if self.k == 1:
            return (a0 * b0) % self.p
        c0, c1 = _QUADRATIC[self.p]
        hi = a1 * b1
        return self._enc(a0 * b0 + hi * c0, a0 * b1 + a1 * b0 + hi * c1)

    def elem(self, n: int) -> int:
        """Image of the integer n."""
        return n % self.p

    def pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = int(self.mul[out, a])
        return out

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = int(self.mul[x, a])
            n += 1
        return n

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"GF({self.q})"


def _split(q: int):
    for p in (2, 3, 5, 7):
        if q == p:
            return p, 1
        if q == p * p and p in _QUADRATIC:
            return p, 2
    raise ValueError(f"unsupported field size {q}; use 2, 3, 4, 5, 7, 9, 25 or 49")


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
