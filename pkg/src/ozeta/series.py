"""Exact truncated power series, rational functions and Dirichlet series.

Coefficients are either rationals (``Fraction``) or polynomials in an
auxiliary variable ``z`` with rational coefficients (:class:`ZPoly`).
Nothing in here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from sympy import factorint

__all__ = [
    "SeriesError",
    "GapViolation",
    "DomainMismatch",
    "ZPoly",
    "TruncatedSeries",
    "RationalFunction",
    "DirichletSeries",
    "infinite_product",
    "dirichlet_from_euler",
    "poly_mul",
    "poly_pow",
]

Q = "Q"
QZ = "Q[z]"


class SeriesError(ValueError):
    pass


class GapViolation(SeriesError):
    """A factor of an infinite product starts below its declared degree."""


class DomainMismatch(SeriesError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class ZPoly:
    """Dense polynomial in z with rational coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a) -> "ZPoly":
        return cls((a,))

    @classmethod
    def monomial(cls, k: int, a=1) -> "ZPoly":
        return cls([0] * k + [a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def _lift(self, other) -> "ZPoly":
        if isinstance(other, ZPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ZPoly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.c), len(o.c))
        return ZPoly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(-a for a in self.c)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZPoly(a * other for a in self.c)
        if not isinstance(other, ZPoly):
            return NotImplemented
        if not self.c or not other.c:
            return ZPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZPoly(a / other for a in self.c)
        if isinstance(other, ZPoly) and other.is_const() and other.c:
            return self / other.c[0]
        raise SeriesError("ZPoly division only by nonzero constants")

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(("ZPoly", self.c))

    def __bool__(self):
        return bool(self.c)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def subs_power(self, k: int, sign: int = 1) -> "ZPoly":
        """Return p(sign * z**k)."""
        out = [Fraction(0)] * (k * self.degree + 1 if self.c else 0)
        for i, a in enumerate(self.c):
            out[k * i] += a * (sign**i)
        return ZPoly(out)

    def negate_z(self) -> "ZPoly":
        return self.subs_power(1, -1)

    def eval_z2(self, value) -> Fraction:
        """Evaluate at z**2 = value; the polynomial must be even."""
        if any(a for a in self.c[1::2]):
            raise SeriesError("odd powers of z present; cannot evaluate at z^2")
        return sum((a * _frac(value) ** (i // 2) for i, a in enumerate(self.c) if a), Fraction(0))

    def as_ints(self) -> list:
        out = []
        for a in self.c:
            out.append(int(a) if a.denominator == 1 else str(a))
        return out

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*z^{i}")
        return " + ".join(terms)


Coeff = Union[Fraction, ZPoly]


def _zero(domain: str) -> Coeff:
    return Fraction(0) if domain == Q else ZPoly()


def _coerce(x, domain: str) -> Coeff:
    if domain == Q:
        if isinstance(x, ZPoly):
            if not x.is_const():
                raise DomainMismatch("polynomial coefficient in a rational series")
            return x.coeff(0)
        return _frac(x)
    if isinstance(x, ZPoly):
        return x
    return ZPoly((_frac(x),))


class TruncatedSeries:
    """Power series in t known modulo t**(N+1)."""

    __slots__ = ("N", "domain", "c")

    def __init__(self, coeffs: Iterable, N: int, domain: str = Q):
        if N < 0:
            raise SeriesError("truncation order must be >= 0")
        if domain not in (Q, QZ):
            raise SeriesError(f"unknown coefficient domain {domain!r}")
        c = [_coerce(a, domain) for a in coeffs]
        if len(c) > N + 1:
            c = c[: N + 1]
        c += [_zero(domain)] * (N + 1 - len(c))
        self.N = N
        self.domain = domain
        self.c = tuple(c)

    # -- constructors -------------------------------------------------
    @classmethod
    def one(cls, N: int, domain: str = Q) -> "TruncatedSeries":
        return cls([1], N, domain)

    @classmethod
    def from_dict(cls, d: Mapping[int, object], N: int, domain: str = Q) -> "TruncatedSeries":
        c = [0] * (N + 1)
        for k, v in d.items():
            if k <= N:
                c[k] = v
        return cls(c, N, domain)

    # -- access ---------------------------------------------------------
    def __getitem__(self, k: int) -> Coeff:
        if k < 0 or k > self.N:
            raise IndexError(k)
        return self.c[k]

    def __len__(self):
        return self.N + 1

    def coefficients(self) -> list:
        return list(self.c)

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.N:
            raise SeriesError(f"cannot extend a series known to order {self.N} to {N}")
        return TruncatedSeries(self.c[: N + 1], N, self.domain)

    def to_z(self) -> "TruncatedSeries":
        return self if self.domain == QZ else TruncatedSeries(self.c, self.N, QZ)

    def map(self, f: Callable[[Coeff], object], domain: str | None = None) -> "TruncatedSeries":
        return TruncatedSeries((f(a) for a in self.c), self.N, domain or self.domain)

    def is_integral(self) -> bool:
        if self.domain == Q:
            return all(a.denominator == 1 for a in self.c)
        return all(b.denominator == 1 for a in self.c for b in a.c)

    # -- arithmetic -------------------------------------------------------
    def _other(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.domain != self.domain:
                raise DomainMismatch(f"{self.domain} vs {other.domain}")
            return other
        return TruncatedSeries([other], self.N, self.domain)

    def __add__(self, other):
        o = self._other(other)
        N = min(self.N, o.N)
        return TruncatedSeries((self.c[k] + o.c[k] for k in range(N + 1)), N, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries((-a for a in self.c), self.N, self.domain)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (isinstance(other, ZPoly) and self.domain == QZ):
            return TruncatedSeries((a * other for a in self.c), self.N, self.domain)
        o = self._other(other)
        N = min(self.N, o.N)
        a, b = self.c, o.c
        nz_a = [i for i in range(N + 1) if a[i]]
        nz_b = [j for j in range(N + 1) if b[j]]
        out = [_zero(self.domain)] * (N + 1)
        for i in nz_a:
            ai = a[i]
            for j in nz_b:
                if i + j > N:
                    break
                out[i + j] = out[i + j] + ai * b[j]
        return TruncatedSeries(out, N, self.domain)

    __rmul__ = __mul__

    def _const_inverse(self) -> Coeff:
        c0 = self.c[0]
        if self.domain == Q:
            if c0 == 0:
                raise SeriesError("constant term is not invertible")
            return 1 / c0
        if not c0.is_const() or not c0:
            raise SeriesError("constant term is not invertible in Q[z]")
        return ZPoly((1 / c0.c[0],))

    def invert(self) -> "TruncatedSeries":
        inv0 = self._const_inverse()
        N = self.N
        a = self.c
        out = [inv0]
        for n in range(1, N + 1):
            acc = _zero(self.domain)
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * out[n - k]
            out.append(-(acc * inv0))
        return TruncatedSeries(out, N, self.domain)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((a / other for a in self.c), self.N, self.domain)
        return self * self._other(other).invert()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("integer exponents only")
        base = self if e >= 0 else self.invert()
        e = abs(e)
        result = TruncatedSeries.one(self.N, self.domain)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exp(self) -> "TruncatedSeries":
        if self.c[0] != 0:
            raise SeriesError("exp needs a series with zero constant term")
        N = self.N
        a = self.c
        out = [_coerce(1, self.domain)]
        for n in range(1, N + 1):
            acc = _zero(self.domain)
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * out[n - k] * k
            out.append(acc / n)
        return TruncatedSeries(out, N, self.domain)

    def log(self) -> "TruncatedSeries":
        if self.c[0] != 1:
            raise SeriesError("log needs a series with constant term 1")
        N = self.N
        s = self.c
        out = [_zero(self.domain)]
        for n in range(1, N + 1):
            acc = _zero(self.domain)
            for k in range(1, n):
                if out[k]:
                    acc = acc + out[k] * s[n - k] * k
            out.append(s[n] - acc / n)
        return TruncatedSeries(out, N, self.domain)

    def compose_monomial(self, scale, b: int, N: int | None = None) -> "TruncatedSeries":
        """Return f(scale * t**b) truncated at N (default: self.N)."""
        if b < 1:
            raise SeriesError("b must be >= 1")
        N = self.N if N is None else N
        if (N // b) > self.N:
            raise SeriesError("not enough known coefficients for this substitution")
        out = [_zero(self.domain)] * (N + 1)
        s = _frac(scale) if not isinstance(scale, ZPoly) else scale
        pw = _coerce(1, Q) if not isinstance(s, ZPoly) else ZPoly.const(1)
        for i in range(N // b + 1):
            out[i * b] = self.c[i] * pw
            pw = pw * s
        return TruncatedSeries(out, N, self.domain)

    def subs_z(self, value) -> "TruncatedSeries":
        """Substitute a rational value for z in a Q[z] series."""
        if self.domain != QZ:
            raise DomainMismatch("subs_z needs a Q[z] series")
        return TruncatedSeries((a(_frac(value)) for a in self.c), self.N, Q)

    def negate_z(self) -> "TruncatedSeries":
        if self.domain != QZ:
            raise DomainMismatch("negate_z needs a Q[z] series")
        return self.map(ZPoly.negate_z)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.domain != self.domain:
            return False
        N = min(self.N, other.N)
        return self.c[: N + 1] == other.c[: N + 1]

    def __hash__(self):
        return hash((self.N, self.domain, self.c))

    def first_difference(self, other: "TruncatedSeries"):
        N = min(self.N, other.N)
        for k in range(N + 1):
            if self.c[k] != other.c[k]:
                return k, self.c[k], other.c[k]
        return None

    def __repr__(self):
        shown = ", ".join(str(a) for a in self.c[:12])
        more = ", ..." if self.N >= 12 else ""
        return f"TruncatedSeries([{shown}{more}], N={self.N}, domain={self.domain!r})"


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_pow(a: Sequence, e: int) -> tuple:
    out: tuple = (Fraction(1),)
    for _ in range(e):
        out = poly_mul(out, a)
    return out


class RationalFunction:
    """numerator(t) / denominator(t) with denominator(0) == 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence, den: Sequence = (1,)):
        n = [_frac(a) for a in num] or [Fraction(0)]
        d = [_frac(a) for a in den]
        if not d or d[0] == 0:
            raise SeriesError("denominator must have nonzero constant term")
        if d[0] != 1:
            n = [a / d[0] for a in n]
            d = [a / d[0] for a in d]
        while len(n) > 1 and n[-1] == 0:
            n.pop()
        while len(d) > 1 and d[-1] == 0:
            d.pop()
        self.num = tuple(n)
        self.den = tuple(d)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls((1,), (1,))

    def expand(self, N: int) -> TruncatedSeries:
        num = TruncatedSeries(self.num, N)
        den = TruncatedSeries(self.den, N)
        return num * den.invert()

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num[0] == 0:
            raise SeriesError("divisor must have nonzero constant term")
        return RationalFunction(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def __pow__(self, e: int) -> "RationalFunction":
        if e >= 0:
            return RationalFunction(poly_pow(self.num, e), poly_pow(self.den, e))
        return RationalFunction(poly_pow(self.den, -e), poly_pow(self.num, -e))

    def substitute(self, q: int, a: int, b: int) -> "RationalFunction":
        return substitute(self, q, a, b)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplication keeps this independent of common factors
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(num={[str(a) for a in self.num]}, den={[str(a) for a in self.den]})"


def _subst_poly(p: Sequence[Fraction], q: int, a: int, b: int) -> list:
    out = [Fraction(0)] * ((len(p) - 1) * b + 1)
    qa = Fraction(q) ** a
    for i, c in enumerate(p):
        out[i * b] = c * qa**i
    return out


def substitute(f: RationalFunction, q: int, a: int, b: int) -> RationalFunction:
    """Return f(q**a * t**b)."""
    if b < 1:
        raise SeriesError("b must be >= 1")
    return RationalFunction(_subst_poly(f.num, q, a, b), _subst_poly(f.den, q, a, b))


def infinite_product(
    factor: Callable[[int], Union[RationalFunction, TruncatedSeries]],
    gap: int,
    N: int,
    domain: str = Q,
) -> TruncatedSeries:
    """prod_{n>=1} factor(n) to order N, where factor(n) = 1 + O(t**(gap*n)).

    The gap contract is checked on every factor that gets used; only factors
    with gap*n <= N can contribute.
    """
    if gap < 1:
        raise SeriesError("gap must be a positive integer")
    result = TruncatedSeries.one(N, domain)
    n = 1
    while gap * n <= N:
        f = factor(n)
        s = f.expand(N) if isinstance(f, RationalFunction) else f
        if s.N < N:
            raise SeriesError(f"factor {n} known only to order {s.N} < {N}")
        if s.domain != domain:
            s = s.to_z() if domain == QZ else s
        s = s.truncate(N)
        if s[0] != 1:
            raise GapViolation(f"factor {n} has constant term {s[0]}")
        for k in range(1, min(gap * n, N + 1)):
            if s[k] != 0:
                raise GapViolation(
                    f"factor {n} has coefficient {s[k]} at t^{k}, below the declared start t^{gap * n}"
                )
        result = result * s
        n += 1
    return result


class DirichletSeries:
    """sum_{n<=bound} a_n n^{-s} with exact rational coefficients."""

    __slots__ = ("bound", "a")

    def __init__(self, coeffs: Mapping[int, object], bound: int):
        if bound < 1:
            raise SeriesError("bound must be >= 1")
        a = {}
        for n, v in coeffs.items():
            if n < 1:
                raise SeriesError("Dirichlet indices start at 1")
            if n > bound:
                raise SeriesError(f"index {n} exceeds bound {bound}")
            v = _frac(v)
            if v:
                a[n] = v
        self.bound = bound
        self.a = a

    @classmethod
    def zeta(cls, bound: int, shift: int = 0) -> "DirichletSeries":
        """zeta(s - shift): a_n = n**shift."""
        return cls({n: Fraction(n) ** shift for n in range(1, bound + 1)}, bound)

    def __getitem__(self, n: int) -> Fraction:
        if n < 1 or n > self.bound:
            raise SeriesError(f"index {n} outside 1..{self.bound}")
        return self.a.get(n, Fraction(0))

    def coefficients(self) -> list:
        return [self[n] for n in range(1, self.bound + 1)]

    def __mul__(self, other: "DirichletSeries") -> "DirichletSeries":
        N = min(self.bound, other.bound)
        out: dict = {}
        for m, x in self.a.items():
            if m > N:
                continue
            for k, y in other.a.items():
                if m * k > N:
                    continue
                out[m * k] = out.get(m * k, Fraction(0)) + x * y
        return DirichletSeries(out, N)

    def __eq__(self, other):
        if not isinstance(other, DirichletSeries):
            return NotImplemented
        N = min(self.bound, other.bound)
        return all(self[n] == other[n] for n in range(1, N + 1))

    def __repr__(self):
        return f"DirichletSeries({[str(x) for x in self.coefficients()[:12]]}, bound={self.bound})"


def dirichlet_mul(a: DirichletSeries, b: DirichletSeries) -> DirichletSeries:
    return a * b


def dirichlet_from_euler(local: Callable[[int, int], TruncatedSeries], N: int) -> DirichletSeries:
    """Assemble a_n for n <= N from local factors in u = p^{-s}.

    ``local(p, K)`` must return the p-factor as a series in u known to
    order at least K, where p**K <= N.
    """
    factors: dict = {}
    out = {1: Fraction(1)}
    for n in range(2, N + 1):
        val = Fraction(1)
        for p, k in factorint(n).items():
            if p not in factors:
                K = 0
                while p ** (K + 1) <= N:
                    K += 1
                s = local(p, K)
                if s.domain != Q:
                    raise DomainMismatch("local Euler factors must be rational series")
                if s[0] != 1:
                    raise SeriesError(f"local factor at p={p} must have constant term 1")
                factors[p] = s
            val *= factors[p][k]
        out[n] = val
    return DirichletSeries(out, N)
