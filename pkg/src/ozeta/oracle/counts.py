"""Brute-force counts of ideals, sublattices and subschemes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, poly_quotient, quotient_by_slice
from .gf import field as gf_field
from .linalg import Lin
from .modules import Census, census, loewy_dims, submodules_bfs, submodules_raw, whole

__all__ = [
    "OracleBoundsError",
    "count_sublattices",
    "count_ideals_2d",
    "count_ideals_algebra",
    "window_supports",
    "SliceReport",
    "check_slice",
    "P2Census",
    "subscheme_census_p2",
    "segal_index_p_ideals",
]


class OracleBoundsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sublattices of O^r, O = F_q[[t]]


def count_sublattices(q: int, r: int, n_max: int) -> dict:
    """{r*n: number of full sublattices of O^r of F_q-codimension n}.

    Every Hermite normal form (rows t^{a_i} e_i + sum_{j>i} h_ij e_j with
    deg h_ij < a_j) is expanded to its F_q-span in (O/t^w)^r, w = n_max,
    which every codimension <= n_max lattice contains.  Spans are
    deduplicated, so a non-unique normal form would show up as a deficit.
    """
    if not 1 <= r <= 3 or not 0 <= n_max <= 6:
        raise OracleBoundsError("count_sublattices needs r <= 3 and n_max <= 6")
    F = gf_field(q)
    lin = Lin(F)
    w = max(n_max, 1)
    dim = r * w
    out = {}
    for n in range(n_max + 1):
        seen = set()
        for a in _compositions(n, r):
            slots = [(i, j, k) for i in range(r) for j in range(i + 1, r) for k in range(a[j])]
            for vals in itertools.product(range(q), repeat=len(slots)):
                rows = []
                h = np.zeros((r, dim), np.uint8)
                for i in range(r):
                    if a[i] < w:
                        h[i, i * w + a[i]] = 1
                for (i, j, k), c in zip(slots, vals):
                    h[i, j * w + k] = c
                for i in range(r):
                    for s in range(w):
                        rows.append(_shift(h[i], s, r, w))
                R, _ = lin.span(np.array(rows), dim)
                if R.shape[0] != dim - n:
                    raise ArithmeticError("normal form has the wrong codimension")
                seen.add(lin.key(R))
        out[r * n] = len(seen)
    return out


def _compositions(n: int, r: int):
    if r == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _compositions(n - a, r - 1):
            yield (a,) + rest


def _shift(v, s, r, w):
    """t^s * v in (O/t^w)^r."""
    out = np.zeros_like(v)
    for i in range(r):
        out[i * w + s : (i + 1) * w] = v[i * w : (i + 1) * w - s]
    return out


# ---------------------------------------------------------------------------
# ideals of F_q[[x, y]]


def count_ideals_2d(q: int, n_max: int) -> dict:
    """{n: number of ideals of F_q[[x, y]] of colength n} for n <= n_max.

    A colength-n ideal contains m^n, so it suffices to work in
    F_q[x, y]/m^w with w = n_max.  Ideals of colength n correspond to
    n-dimensional subspaces U of the dual stable under the transposed
    actions of x and y; these are grown one socle vector at a time.
    """
    if q not in (2, 3, 4) or not 0 <= n_max <= 4:
        raise OracleBoundsError("count_ideals_2d needs q in {2, 3, 4} and n_max <= 4")
    F = gf_field(q)
    lin = Lin(F)
    w = max(n_max, 1)
    mons = [(a, s - a) for s in range(w) for a in range(s, -1, -1)]
    idx = {m: i for i, m in enumerate(mons)}
    n = len(mons)
    X = np.zeros((n, n), np.uint8)
    Y = np.zeros((n, n), np.uint8)
    for (a, b), i in idx.items():
        if (a + 1, b) in idx:
            X[i, idx[(a + 1, b)]] = 1
        if (a, b + 1) in idx:
            Y[i, idx[(a, b + 1)]] = 1
    XT, YT = np.ascontiguousarray(X.T), np.ascontiguousarray(Y.T)
    level = {lin.key(np.zeros((0, n), np.uint8)): np.zeros((0, n), np.uint8)}
    out = {0: 1}
    for c in range(1, n_max + 1):
        nxt = {}
        for U in level.values():
            piv = lin.rref(U)[1] if U.shape[0] else np.zeros(0, np.int64)
            # socle of the dual quotient: vectors pushed into U by x and y
            M = np.concatenate([lin.reduce(XT, U, piv), lin.reduce(YT, U, piv)], axis=1)
            S, _ = lin.left_kernel(M)
            Sred = lin.reduce(S, U, piv) if U.shape[0] else S
            B, _ = lin.span(Sred, n)
            for coeffs in _projective_points(q, B.shape[0]):
                v = lin.matmul(coeffs[None, :], B)
                R, _ = lin.span(np.concatenate([U, v]), n)
                nxt.setdefault(lin.key(R), R)
        level = nxt
        out[c] = len(level)
    return out


def _projective_points(q: int, k: int):
    for lead in range(k):
        for tail in itertools.product(range(q), repeat=k - lead - 1):
            v = np.zeros(k, np.uint8)
            v[lead] = 1
            v[lead + 1 :] = tail
            yield v


# ---------------------------------------------------------------------------
# general window algebras


def window_supports(alg: FiniteAlgebra, n: int, headroom: int = 0) -> bool:
    """True if every colength-n left ideal of the complete algebra contains A_{>=w}.

    A/I of dimension n has composition length at most n / s (s the smallest
    simple dimension), hence Loewy length at most floor(n / s), so
    J^{floor(n/s)} lies in I.  With J^k = A_{>=k} (checked when the algebra
    is built) this contains A_{>=w} once floor(n / s) <= w.  ``headroom``
    asks for that many spare degrees.
    """
    s = min((e.simple_dim for e in alg.idempotents), default=1)
    return n // s + headroom <= alg.window


def count_ideals_algebra(alg: FiniteAlgebra, n_max: int, method: str = "bfs") -> Census:
    """Census of left ideals of colength <= n_max with composition classes."""
    if not window_supports(alg, n_max):
        raise OracleBoundsError(f"window {alg.window} too small for colength {n_max}")
    if method == "bfs":
        levels = submodules_bfs(alg, n_max)
    elif method == "raw":
        levels = submodules_raw(alg, n_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return census(alg, levels)


# ---------------------------------------------------------------------------
# slice check


@dataclass
class SliceReport:
    passed: bool
    checked: dict = field(default_factory=dict)  # colength -> number of ideals checked
    failures: list = field(default_factory=list)  # (colength, reason)

    def __bool__(self):
        return self.passed


def check_slice(alg: FiniteAlgebra, colength_bound: int, z=None, use_slice: bool = True) -> SliceReport:
    """Check that every colength <= bound left ideal of Mbar = A/zA is a copy of Mbar.

    Each ideal I must have a generator g with Mbar g = I whose right
    multiplication kernel lies in Jbar^{w-L}, L the Loewy length of Mbar/I.
    In the complete ring, a regular g with Jbar^L in Mbar g satisfies
    a g in Jbar^w only for a in Jbar^{w-L}; so this is the window shadow of
    g being regular.  With ``use_slice=False`` the algebra itself is Mbar.
    """
    if use_slice and (z is not None or alg.slice is not None):
        Mbar = quotient_by_slice(alg, z)
    else:
        Mbar = alg
    # one degree of headroom so that no enumerated ideal is zero in the window
    if not window_supports(Mbar, colength_bound, headroom=1):
        raise OracleBoundsError("window too small for the slice check")
    lin = Mbar.lin
    n, w = Mbar.dim, Mbar.window
    top = whole(Mbar)
    levels = submodules_bfs(Mbar, colength_bound)
    report = SliceReport(True)
    for c in range(1, colength_bound + 1):
        report.checked[c] = len(levels[c])
        for I in levels[c]:
            L = len(loewy_dims(Mbar, top, I))
            deep, dp = Mbar.power_of_radical(w - L)
            ok = False
            for coeffs in lin.all_vectors(I.dim)[1:]:
                g = lin.matmul(coeffs[None, :], I.R)[0]
                Rg = Mbar.right_matrix(g)
                img, _ = lin.span(Rg, n)
                if img.shape[0] != I.dim:
                    continue
                K, _ = lin.left_kernel(Rg)
                if K.shape[0] == 0 or lin.contains(deep, dp, K):
                    ok = True
                    break
            if not ok:
                report.passed = False
                report.failures.append((c, "no regular cyclic generator"))
    return report


# ---------------------------------------------------------------------------
# length-n subschemes of P^2


@dataclass(frozen=True)
class P2Census:
    q: int
    n: int
    rational_pairs: int = 0
    conjugate_pairs: int = 0
    tangent_vectors: int = 0
    total: int = 0


def _proj_points(F, dim: int = 3):
    out = []
    for lead in range(dim):
        for tail in itertools.product(range(F.q), repeat=dim - lead - 1):
            out.append((0,) * lead + (1,) + tuple(tail))
    return out


def _normalize(F, v):
    for c in v:
        if c:
            inv = int(F.inv[c])
            return tuple(int(F.mul[inv, x]) for x in v)
    raise ValueError("zero vector")


def subscheme_census_p2(q: int, n: int) -> P2Census:
    """Length-n closed subschemes of P^2 over F_q for n <= 2, by support type."""
    if q not in (2, 3):
        raise OracleBoundsError("subscheme_census_p2 needs q in {2, 3}")
    if not 0 <= n <= 2:
        raise OracleBoundsError("subscheme_census_p2 needs n <= 2")
    Fq = gf_field(q)
    pts = _proj_points(Fq)
    if n == 0:
        return P2Census(q, 0, total=1)
    if n == 1:
        return P2Census(q, 1, total=len(pts))
    pairs = len(pts) * (len(pts) - 1) // 2
    # degree-2 closed points: Frobenius orbits of size two in P^2(F_{q^2})
    Fq2 = gf_field(q * q)
    orbits = set()
    for v in _proj_points(Fq2):
        fv = _normalize(Fq2, tuple(Fq2.pow(c, q) for c in v))
        if fv != v:
            orbits.add(frozenset((v, fv)))
    # a rational point with a tangent direction: a line through it
    lines = _proj_points(Fq)
    tangent = 0
    for p in pts:
        for ln in lines:
            s = 0
            for a, b in zip(p, ln):
                s = int(Fq.add[s, Fq.mul[a, b]])
            tangent += s == 0
    total = pairs + len(orbits) + tangent
    return P2Census(q, 2, pairs, len(orbits), tangent, total)


# ---------------------------------------------------------------------------
# index-p ideals of Z[x]


def segal_index_p_ideals(p: int, method: str = "bfs") -> int:
    """Number of ideals of index p in Z[x].

    Such an ideal contains p and x^p - x, so these are the codimension-one
    ideals of F_p[x]/(x^p - x).
    """
    if p not in (2, 3, 5, 7):
        raise OracleBoundsError("segal_index_p_ideals needs p in {2, 3, 5, 7}")
    f = [0] * (p + 1)
    f[1], f[p] = -1, 1
    alg = poly_quotient(p, f, name=f"F_{p}[x]/(x^{p}-x)")
    levels = submodules_bfs(alg, 1) if method == "bfs" else submodules_raw(alg, 1)
    return len(levels[1])

