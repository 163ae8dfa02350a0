"""Graded finite-dimensional algebras given by structure constants.

Every algebra is a truncation A/A_{>=w} of a complete graded algebra with
a monomial basis ("labels").  A_0 is semisimple and A_{>=1} is the
Jacobson radical J; builders assert that J is generated in degree one,
so J^k = A_{>=k} and the window A/A_{>=w} is A/J^w.

Conventions: vectors are rows, and left multiplication by basis element
e_i is ``v -> v @ C[i]``.  So ``C[i, j, k]`` is the e_k coefficient of
e_i * e_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf import GF, field as gf_field
from .linalg import Lin

__all__ = [
    "AlgebraError",
    "FiniteAlgebra",
    "QuantumPlaneRule",
    "CyclicUnitRule",
    "DeltaRule",
    "MatrixRule",
    "algebra_from_rule",
    "quantum_plane",
    "power_series_2d",
    "build_symbol",
    "build_delta_l",
    "matrix_algebra",
    "truncated_dvr",
    "product_algebra",
    "poly_quotient",
    "quotient_by_slice",
]


class AlgebraError(ValueError):
    pass


@dataclass
class Idempotent:
    vector: np.ndarray
    corner_dim: int  # dim_F e*S for the matching simple S
    simple_dim: int


@dataclass
class FiniteAlgebra:
    F: GF
    labels: list
    deg: np.ndarray
    C: np.ndarray
    unit: np.ndarray
    window: int
    name: str = ""
    slice: np.ndarray | None = None
    idempotents: list = field(default_factory=list)
    sigma: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lin = Lin(self.F)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.deg = np.asarray(self.deg, dtype=np.int64)
        self.C = np.ascontiguousarray(self.C, dtype=np.uint8)
        self.unit = np.asarray(self.unit, dtype=np.uint8)
        self._check()

    # -- shape ---------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def g(self) -> int:
        return len(self.idempotents)

    @property
    def simple_dim(self) -> int | None:
        dims = {e.simple_dim for e in self.idempotents}
        return dims.pop() if len(dims) == 1 else None

    def basis_vector(self, label) -> np.ndarray:
        v = np.zeros(self.dim, np.uint8)
        v[self.index[label]] = 1
        return v

    def vector(self, terms) -> np.ndarray:
        v = np.zeros(self.dim, np.uint8)
        for c, lab in terms:
            if lab in self.index:
                i = self.index[lab]
                v[i] = self.F.add[v[i], c % self.q if self.F.k == 1 else c]
        return v

    # -- multiplication ------------------------------------------------------
    def left_matrix(self, a) -> np.ndarray:
        """L with v @ L = a * v."""
        out = np.zeros((self.dim, self.dim), np.uint8)
        for i in np.nonzero(a)[0]:
            out = self.F.add[out, self.F.mul[a[i], self.C[i]]]
        return out

    def right_matrix(self, b) -> np.ndarray:
        """R with a @ R = a * b."""
        out = np.zeros((self.dim, self.dim), np.uint8)
        for j in np.nonzero(b)[0]:
            out = self.F.add[out, self.F.mul[b[j], self.C[:, j, :]]]
        return out

    def mul(self, a, b) -> np.ndarray:
        return self.lin.matmul(np.asarray(b, np.uint8)[None, :], self.left_matrix(a))[0]

    def generators(self) -> np.ndarray:
        """Left multiplication matrices of the basis elements of degree <= 1."""
        idx = [i for i in range(self.dim) if self.deg[i] <= 1]
        return self.C[idx]

    def radical_indices(self) -> list:
        return [i for i in range(self.dim) if self.deg[i] >= 1]

    def power_of_radical(self, k: int):
        """RREF of J^k = A_{>=k}."""
        rows = [self.basis_vector(self.labels[i]) for i in range(self.dim) if self.deg[i] >= k]
        return self.lin.span(np.array(rows, np.uint8).reshape(-1, self.dim), self.dim)

    # -- validation ----------------------------------------------------------
    def _check(self):
        n = self.dim
        C = self.C
        if C.shape != (n, n, n):
            raise AlgebraError("structure constants have the wrong shape")
        # grading: e_i e_j lives in degree deg_i + deg_j
        for i, j, k in zip(*np.nonzero(C)):
            if self.deg[k] != self.deg[i] + self.deg[j]:
                raise AlgebraError(f"product {self.labels[i]}*{self.labels[j]} is not homogeneous")
        if any(self.deg >= self.window):
            raise AlgebraError("label outside the truncation window")
        # unit
        L1 = self.left_matrix(self.unit)
        R1 = self.right_matrix(self.unit)
        eye = np.eye(n, dtype=np.uint8)
        if not (np.array_equal(L1, eye) and np.array_equal(R1, eye)):
            raise AlgebraError("declared unit is not a two-sided identity")
        self._check_assoc()
        for e in self.idempotents:
            if not np.array_equal(self.mul(e.vector, e.vector), e.vector):
                raise AlgebraError("declared idempotent is not idempotent")
        if self.slice is not None:
            self._check_slice_element()
        self._check_radical_generation()

    def _check_assoc(self):
        # (e_i e_j) e_k == e_i (e_j e_k), one left factor at a time
        n, C, lin = self.dim, self.C, self.lin
        flat_right = C.reshape(n, n * n)
        flat_left = C.reshape(n * n, n)
        for i in range(n):
            lhs = lin.matmul(C[i], flat_right).reshape(n * n, n)
            rhs = lin.matmul(flat_left, C[i])
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("structure constants are not associative")

    def _check_slice_element(self):
        self.validate_slice(self.slice)

    def validate_slice(self, z):
        """Raise unless z is a normal radical element, regular modulo the window."""
        z = np.asarray(z, np.uint8)
        if not z.any():
            raise AlgebraError("slice element is zero")
        Lz = self.left_matrix(z)
        Rz = self.right_matrix(z)
        lin = self.lin
        zA, zp = lin.span(Lz, self.dim)  # rows e_i @ Lz = z e_i
        Az, _ = lin.span(Rz, self.dim)
        if not np.array_equal(zA, Az):
            raise AlgebraError("slice element is not normal in the window")
        if any(self.deg[i] < 1 for i in np.nonzero(z)[0]):
            raise AlgebraError("slice element must lie in the radical")
        # regular modulo the window: z a = 0 forces a in A_{>=w-deg z}
        dz = int(min(self.deg[i] for i in np.nonzero(z)[0]))
        top, tp = self.power_of_radical(self.window - dz)
        for M in (Lz, Rz):
            K, _ = lin.left_kernel(M)
            if K.shape[0] and not lin.contains(top, tp, K):
                raise AlgebraError("slice element is a zero divisor in the window")

    def _check_radical_generation(self):
        lin = self.lin
        J1 = [i for i in range(self.dim) if self.deg[i] == 1]
        for k in range(1, self.window - 1):
            Jk = [i for i in range(self.dim) if self.deg[i] == k]
            rows = []
            for i in Jk:
                for j in J1:
                    rows.append(self.C[i, j])
            nxt = [i for i in range(self.dim) if self.deg[i] == k + 1]
            if not nxt:
                continue
            R, piv = lin.span(np.array(rows, np.uint8).reshape(-1, self.dim), self.dim)
            want = np.array([self.basis_vector(self.labels[i]) for i in nxt], np.uint8)
            if not lin.contains(R, piv, want):
                raise AlgebraError(f"radical is not generated in degree one (degree {k + 1})")

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, q={self.q}, dim={self.dim}, window={self.window})"


# ---------------------------------------------------------------------------
# multiplication rules on infinite monomial bases


class QuantumPlaneRule:
    """x^a y^b with y x = xi x y; x and y both of degree one."""

    def __init__(self, F: GF, xi: int):
        self.F, self.xi = F, xi

    def labels(self, maxdeg: int):
        return [(a, s - a) for s in range(maxdeg + 1) for a in range(s, -1, -1)]

    def deg(self, lab):
        return lab[0] + lab[1]

    def xexp(self, lab):
        return lab[0]

    def mul(self, u, v):
        (a, b), (c, d) = u, v
        return [(self.F.pow(self.xi, b * c), (a + c, b + d))]

    def one(self):
        return [(1, (0, 0))]

    def slice_x(self):
        return [(1, (1, 0))]

    def slice_y(self):
        return [(1, (0, 1))]

    def idempotents(self):
        return [([(1, (0, 0))], 1, 1)]


class CyclicUnitRule:
    """v^g x^a y^j (j < e) with y x = xi x y, y^e = beta a unit, v central; deg = g + a."""

    def __init__(self, F: GF, e: int, xi: int, beta: int):
        self.F, self.e, self.xi, self.beta = F, e, xi, beta

    def labels(self, maxdeg: int):
        return [(s - a, a, j) for s in range(maxdeg + 1) for a in range(s, -1, -1) for j in range(self.e)]

    def deg(self, lab):
        return lab[0] + lab[1]

    def xexp(self, lab):
        return lab[1]

    def mul(self, u, v):
        (g1, a, j), (g2, c, k) = u, v
        coef = self.F.pow(self.xi, j * c)
        jk = j + k
        if jk >= self.e:
            coef = int(self.F.mul[coef, self.beta])
            jk -= self.e
        return [(coef, (g1 + g2, a + c, jk))]

    def one(self):
        return [(1, (0, 0, 0))]

    def slice_x(self):
        return [(1, (0, 1, 0))]

    def idempotents(self):
        """Lagrange idempotents of F[y]/(y^e - beta) when it splits; else one simple."""
        F, e = self.F, self.e
        roots = [r for r in range(1, F.q) if F.pow(r, e) == self.beta]
        if len(roots) == e:
            out = []
            for lam in roots:
                # prod_{mu != lam} (y - mu) / (lam - mu)
                poly = [1]
                for mu in roots:
                    if mu == lam:
                        continue
                    d = int(F.inv[F.add[lam, F.neg[mu]]])
                    nxt = [0] * (len(poly) + 1)
                    for i, c in enumerate(poly):
                        nxt[i + 1] = int(F.add[nxt[i + 1], F.mul[c, d]])
                        nxt[i] = int(F.add[nxt[i], F.mul[F.mul[c, d], F.neg[mu]]])
                    poly = nxt
                out.append(([(c, (0, 0, j)) for j, c in enumerate(poly) if c], 1, 1))
            return out
        if e == 2 and not roots:
            return [([(1, (0, 0, 0))], 2, 2)]
        raise AlgebraError("y^e - beta must split or be an irreducible quadratic")


class DeltaRule:
    """Matrix pattern over a symbol: entry (i, k) lies in x*base when i > k."""

    def __init__(self, base, l: int):
        self.base, self.l, self.F = base, l, base.F

    def labels(self, maxdeg: int):
        out = []
        for mu in self.base.labels(maxdeg + self.l - 1):
            for i in range(self.l):
                for k in range(self.l):
                    lab = (i, k, mu)
                    if (i <= k or self.base.xexp(mu) >= 1) and self.deg(lab) <= maxdeg:
                        out.append(lab)
        return out

    def deg(self, lab):
        i, k, mu = lab
        a = self.base.xexp(mu)
        return (k - i) + self.l * a + (self.base.deg(mu) - a)

    def xexp(self, lab):
        return self.base.xexp(lab[2])

    def mul(self, u, v):
        i, k, mu = u
        k2, m, nu = v
        if k != k2:
            return []
        return [(c, (i, m, lam)) for c, lam in self.base.mul(mu, nu)]

    def one(self):
        return [(c, (i, i, mu)) for i in range(self.l) for c, mu in self.base.one()]

    def slice_x(self):
        # sum_i E_{i,i+1} + x E_{l,1}
        out = [(1, (i, i + 1, self.base.one()[0][1])) for i in range(self.l - 1)]
        out += [(c, (self.l - 1, 0, mu)) for c, mu in self.base.slice_x()]
        return out

    def idempotents(self):
        out = []
        for i in range(self.l):
            for terms, corner, sdim in self.base.idempotents():
                out.append(([(c, (i, i, mu)) for c, mu in terms], corner, sdim))
        return out


class MatrixRule:
    """M_r over a base rule; degrees are unchanged."""

    def __init__(self, base, r: int):
        self.base, self.r, self.F = base, r, base.F

    def labels(self, maxdeg: int):
        return [(i, k, mu) for mu in self.base.labels(maxdeg) for i in range(self.r) for k in range(self.r)]

    def deg(self, lab):
        return self.base.deg(lab[2])

    def xexp(self, lab):
        return self.base.xexp(lab[2])

    def mul(self, u, v):
        i, k, mu = u
        k2, m, nu = v
        if k != k2:
            return []
        return [(c, (i, m, lam)) for c, lam in self.base.mul(mu, nu)]

    def one(self):
        return [(c, (i, i, mu)) for i in range(self.r) for c, mu in self.base.one()]

    def scalar(self, terms):
        return [(c, (i, i, mu)) for i in range(self.r) for c, mu in terms]

    def idempotents(self):
        return [
            ([(c, (0, 0, mu)) for c, mu in terms], corner, sdim * self.r)
            for terms, corner, sdim in self.base.idempotents()
        ]


def algebra_from_rule(rule, window: int, name: str = "", slice_terms=None, sigma=(), meta=None) -> FiniteAlgebra:
    F = rule.F
    labels = [lab for lab in rule.labels(window - 1) if rule.deg(lab) < window]
    labels = sorted(set(labels), key=lambda lab: (rule.deg(lab), repr(lab)))
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    C = np.zeros((n, n, n), np.uint8)
    for i, u in enumerate(labels):
        for j, v in enumerate(labels):
            for c, lab in rule.mul(u, v):
                if lab in index:
                    k = index[lab]
                    C[i, j, k] = F.add[C[i, j, k], c]
    deg = [rule.deg(lab) for lab in labels]

    def vec(terms):
        v = np.zeros(n, np.uint8)
        for c, lab in terms:
            if lab in index:
                v[index[lab]] = F.add[v[index[lab]], c]
        return v

    idems = [Idempotent(vec(t), corner, sdim) for t, corner, sdim in rule.idempotents()]
    z = vec(slice_terms) if slice_terms is not None else None
    return FiniteAlgebra(F, labels, deg, C, vec(rule.one()), window, name, z, idems, tuple(sigma), meta or {})


# ---------------------------------------------------------------------------
# builders


def _primitive(F: GF, xi: int, e: int) -> bool:
    return xi != 0 and F.order(xi) == e


def quantum_plane(q: int, window: int, xi: int = 1, slice_var: str | None = "y") -> FiniteAlgebra:
    """F_q<<x, y>> / (y x - xi x y) truncated at total degree ``window``."""
    F = gf_field(q)
    rule = QuantumPlaneRule(F, xi % q if F.k == 1 else xi)
    sl = {"x": rule.slice_x(), "y": rule.slice_y(), None: None}[slice_var]
    return algebra_from_rule(rule, window, f"quantum_plane(q={q}, xi={xi})", sl)


def power_series_2d(q: int, window: int, slice_var: str | None = "y") -> FiniteAlgebra:
    return quantum_plane(q, window, 1, slice_var)


def build_symbol(
    q: int, e: int, xi: int, a_mode: str, b_mode: str, window: int, unit_value: int = 1
) -> FiniteAlgebra:
    """The symbol (a, b)_xi over F_q[[u, v]] truncated in degree ``window``.

    ``a_mode`` and ``b_mode`` say whether a, b are the parameters u, v or a
    unit (then equal to ``unit_value``).  The declared slice is the
    generator whose e-th power is a parameter.
    """
    F = gf_field(q)
    if q % e == 0 or (F.p and e % F.p == 0):
        raise AlgebraError(f"e={e} is not prime to q={q}")
    xi_e = xi % q if F.k == 1 else xi
    if not _primitive(F, xi_e, e):
        raise AlgebraError(f"xi={xi} is not a primitive {e}-th root of unity in F_{q}")
    modes = {"param_u", "param_v", "unit"}
    if a_mode not in modes or b_mode not in modes:
        raise AlgebraError(f"bad modes {a_mode!r}, {b_mode!r}")
    beta = unit_value % q if F.k == 1 else unit_value
    if {a_mode, b_mode} == {"param_u", "param_v"}:
        # x^e = u and y^e = v are free central parameters
        rule = QuantumPlaneRule(F, xi_e)
        slice_terms = rule.slice_x()
    elif a_mode != "unit" and b_mode == "unit":
        rule = CyclicUnitRule(F, e, xi_e, beta)
        slice_terms = rule.slice_x()
    elif a_mode == "unit" and b_mode != "unit":
        # swap the roles of x and y, which inverts xi
        rule = CyclicUnitRule(F, e, int(F.inv[xi_e]), beta)
        slice_terms = rule.slice_x()
    else:
        raise AlgebraError("at least one of a, b must be a parameter")
    meta = {"e": e, "xi": xi, "a_mode": a_mode, "b_mode": b_mode, "unit": unit_value}
    alg = algebra_from_rule(rule, window, f"symbol(q={q}, e={e}, {a_mode}, {b_mode})", slice_terms, meta=meta)
    alg.meta["rule"] = rule
    return alg


def build_delta_l(base: FiniteAlgebra, l: int, window: int | None = None) -> FiniteAlgebra:
    """Delta_l(x) over a symbol algebra built by :func:`build_symbol`."""
    rule = base.meta.get("rule")
    if rule is None:
        raise AlgebraError("base algebra must come from build_symbol")
    if l < 1:
        raise AlgebraError("l must be >= 1")
    drule = DeltaRule(rule, l)
    w = window or base.window
    # conjugation by the slice cycles the diagonal idempotents
    g = len(rule.idempotents())
    sigma = tuple(((i + 1) % l) * g + j + 1 for i in range(l) for j in range(g))
    alg = algebra_from_rule(drule, w, f"Delta_{l}({base.name})", drule.slice_x(), sigma=sigma, meta=dict(base.meta))
    alg.meta["rule"] = drule
    return alg


def matrix_algebra(base_rule, r: int, window: int, slice_terms=None, name: str = "") -> FiniteAlgebra:
    mrule = MatrixRule(base_rule, r)
    sl = mrule.scalar(slice_terms) if slice_terms is not None else None
    return algebra_from_rule(mrule, window, name or f"M_{r}", sl)


class _DVRRule:
    def __init__(self, F):
        self.F = F

    def labels(self, maxdeg):
        return [(a,) for a in range(maxdeg + 1)]

    def deg(self, lab):
        return lab[0]

    def xexp(self, lab):
        return lab[0]

    def mul(self, u, v):
        return [(1, (u[0] + v[0],))]

    def one(self):
        return [(1, (0,))]

    def slice_x(self):
        return [(1, (1,))]

    def idempotents(self):
        return [([(1, (0,))], 1, 1)]


def truncated_dvr(q: int, window: int) -> FiniteAlgebra:
    """F_q[[x]] / (x^window)."""
    return algebra_from_rule(_DVRRule(gf_field(q)), window, f"F_{q}[[x]]")


def dvr_rule(q: int):
    return _DVRRule(gf_field(q))


def product_algebra(A: FiniteAlgebra, B: FiniteAlgebra, name: str = "") -> FiniteAlgebra:
    if A.F.q != B.F.q:
        raise AlgebraError("factors over different fields")
    n, m = A.dim, B.dim
    C = np.zeros((n + m, n + m, n + m), np.uint8)
    C[:n, :n, :n] = A.C
    C[n:, n:, n:] = B.C
    labels = [(0, lab) for lab in A.labels] + [(1, lab) for lab in B.labels]
    deg = np.concatenate([A.deg, B.deg])
    unit = np.concatenate([A.unit, B.unit])
    z = None
    if A.slice is not None and B.slice is not None:
        z = np.concatenate([A.slice, B.slice])
    idems = [Idempotent(np.concatenate([e.vector, np.zeros(m, np.uint8)]), e.corner_dim, e.simple_dim) for e in A.idempotents]
    idems += [Idempotent(np.concatenate([np.zeros(n, np.uint8), e.vector]), e.corner_dim, e.simple_dim) for e in B.idempotents]
    return FiniteAlgebra(A.F, labels, deg, C, unit, max(A.window, B.window), name or f"{A.name} x {B.name}", z, idems)


def poly_quotient(q: int, f: Sequence[int], semisimple: bool = True, name: str = "") -> FiniteAlgebra:
    """F_q[x]/(f) for monic f (coefficients lowest first), all in degree zero.

    Only for separable split f, where the quotient is F_q^deg f.
    """
    F = gf_field(q)
    f = [c % q for c in f]
    n = len(f) - 1
    if f[-1] != 1:
        raise AlgebraError("f must be monic")
    roots = [a for a in range(q) if _peval(F, f, a) == 0]
    if not semisimple or len(roots) != n:
        raise AlgebraError("only split separable polynomials are supported")

    def reduce(poly):
        poly = list(poly)
        for d in range(len(poly) - 1, n - 1, -1):
            c = poly[d]
            if c:
                for i in range(n + 1):
                    poly[d - n + i] = int(F.add[poly[d - n + i], F.mul[F.neg[c], f[i]]])
        return poly[:n] + [0] * max(0, n - len(poly))

    C = np.zeros((n, n, n), np.uint8)
    for i in range(n):
        for j in range(n):
            p = [0] * (i + j + 1)
            p[i + j] = 1
            C[i, j] = reduce(p)
    # Lagrange idempotents at the roots
    idems = []
    for lam in roots:
        poly = [1]
        for mu in roots:
            if mu == lam:
                continue
            d = int(F.inv[F.add[lam, F.neg[mu]]])
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] = int(F.add[nxt[i + 1], F.mul[c, d]])
                nxt[i] = int(F.add[nxt[i], F.mul[F.mul[c, d], F.neg[mu]]])
            poly = nxt
        idems.append(Idempotent(np.array(reduce(poly), np.uint8), 1, 1))
    unit = np.zeros(n, np.uint8)
    unit[0] = 1
    return FiniteAlgebra(F, [(i,) for i in range(n)], np.zeros(n, np.int64), C, unit, 1, name or f"F_{q}[x]/(f)", None, idems)


def _peval(F, f, a):
    out = 0
    for c in reversed(f):
        out = int(F.add[F.mul[out, a], c])
    return out


def quotient_by_slice(A: FiniteAlgebra, z=None) -> FiniteAlgebra:
    """A / zA for z (default: the declared slice), on the surviving labels."""
    z = A.slice if z is None else np.asarray(z, np.uint8)
    if z is None:
        raise AlgebraError("algebra has no declared slice")
    A.validate_slice(z)
    lin = A.lin
    Lz = A.left_matrix(z)
    I, piv = lin.span(Lz, A.dim)
    keep = lin.complement_coords(I, piv, A.dim)
    # the surviving labels must map to themselves: zA is spanned by labels
    for row in I:
        if np.count_nonzero(row) != 1:
            raise AlgebraError("zA is not spanned by basis labels; quotient labels are ambiguous")
    n = len(keep)
    C = np.zeros((n, n, n), np.uint8)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            C[a, b] = A.C[i, j][keep]
    labels = [A.labels[i] for i in keep]
    idems = [Idempotent(e.vector[keep], e.corner_dim, e.simple_dim) for e in A.idempotents]
    return FiniteAlgebra(A.F, labels, A.deg[keep], C, A.unit[keep], A.window, f"{A.name}/(z)", None, idems, A.sigma)
