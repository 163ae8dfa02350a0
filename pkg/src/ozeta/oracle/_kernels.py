"""Finite-field linear algebra kernels.

Each kernel exists twice: a numba ``@njit`` version and a pure numpy
version.  Setting ``OZETA_DISABLE_NUMBA=1`` before import selects the
numpy versions.  Matrices are ``uint8`` arrays of field elements and the
field is passed as its (add, mul, neg, inv) tables.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

USE_NUMBA = njit is not None and os.environ.get("OZETA_DISABLE_NUMBA", "0") not in ("1", "true", "yes")


def _jit(f):
    return njit(cache=True, nogil=True)(f) if njit is not None else f


# ---------------------------------------------------------------------------
# numba versions


def _rref_impl(M, ADD, MUL, NEG, INV):
    A = M.copy()
    rows, cols = A.shape
    piv = np.full(rows, -1, np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                tmp = A[p, j]
                A[p, j] = A[r, j]
                A[r, j] = tmp
        iv = INV[A[r, c]]
        for j in range(cols):
            A[r, j] = MUL[iv, A[r, j]]
        for i in range(rows):
            if i != r and A[i, c] != 0:
                f = NEG[A[i, c]]
                for j in range(cols):
                    A[i, j] = ADD[A[i, j], MUL[f, A[r, j]]]
        piv[r] = c
        r += 1
    return A[:r].copy(), piv[:r].copy()


def _reduce_impl(V, R, piv, ADD, MUL, NEG):
    out = V.copy()
    m, n = out.shape
    for a in range(m):
        for i in range(R.shape[0]):
            c = piv[i]
            if out[a, c] != 0:
                f = NEG[out[a, c]]
                for j in range(n):
                    out[a, j] = ADD[out[a, j], MUL[f, R[i, j]]]
    return out


def _matmul_impl(A, B, ADD, MUL):
    m, k = A.shape
    n = B.shape[1]
    C = np.zeros((m, n), np.uint8)
    for i in range(m):
        for l in range(k):
            a = A[i, l]
            if a != 0:
                for j in range(n):
                    C[i, j] = ADD[C[i, j], MUL[a, B[l, j]]]
    return C


if njit is not None:
    _rref_nb = _jit(_rref_impl)
    _reduce_nb = _jit(_reduce_impl)
    _matmul_nb = _jit(_matmul_impl)

    @njit(cache=True, nogil=True)
    def _invariant_codim_nb(k, s, Ms, q, ADD, MUL, NEG, INV):
        cap = 64
        out = np.zeros((cap, s, k), np.uint8)
        count = 0
        g = Ms.shape[0]
        piv = np.zeros(s, np.int64)
        phi = np.zeros((s, k), np.uint8)
        free_r = np.zeros(s * k + 1, np.int64)
        free_c = np.zeros(s * k + 1, np.int64)
        digits = np.zeros(s * k + 1, np.int64)
        for mask in range(1 << k):
            bits = 0
            for c in range(k):
                if (mask >> c) & 1:
                    bits += 1
            if bits != s:
                continue
            t = 0
            for c in range(k):
                if (mask >> c) & 1:
                    piv[t] = c
                    t += 1
            nf = 0
            for i in range(s):
                for c in range(piv[i] + 1, k):
                    if not ((mask >> c) & 1):
                        free_r[nf] = i
                        free_c[nf] = c
                        nf += 1
            for f in range(nf):
                digits[f] = 0
            while True:
                for i in range(s):
                    for c in range(k):
                        phi[i, c] = 0
                    phi[i, piv[i]] = 1
                for f in range(nf):
                    phi[free_r[f], free_c[f]] = digits[f]
                ok = True
                for gi in range(g):
                    P = _matmul_nb(phi, Ms[gi], ADD, MUL)
                    P = _reduce_nb(P, phi, piv, ADD, MUL, NEG)
                    for i in range(s):
                        for c in range(k):
                            if P[i, c] != 0:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if ok:
                    if count == cap:
                        bigger = np.zeros((2 * cap, s, k), np.uint8)
                        bigger[:cap] = out
                        out = bigger
                        cap *= 2
                    out[count] = phi
                    count += 1
                f = 0
                while f < nf:
                    digits[f] += 1
                    if digits[f] < q:
                        break
                    digits[f] = 0
                    f += 1
                if f == nf:
                    break
        return out[:count].copy()

    @njit(cache=True, nogil=True)
    def _closure_nb(U, v, Gs, cap, ADD, MUL, NEG, INV):
        n = v.shape[0]
        d = U.shape[0]
        basis = np.zeros((d + 1, n), np.uint8)
        for i in range(d):
            basis[i] = U[i]
        basis[d] = v
        R, piv = _rref_nb(basis, ADD, MUL, NEG, INV)
        queue = np.zeros((cap + 2, n), np.uint8)
        queue[0] = v
        qh = 0
        qt = 1
        while qh < qt:
            w = queue[qh : qh + 1].copy()
            qh += 1
            for gi in range(Gs.shape[0]):
                img = _matmul_nb(w, Gs[gi], ADD, MUL)
                red = _reduce_nb(img, R, piv, ADD, MUL, NEG)
                nz = False
                for j in range(n):
                    if red[0, j] != 0:
                        nz = True
                        break
                if nz:
                    if R.shape[0] >= cap:
                        return R, piv, False
                    stacked = np.zeros((R.shape[0] + 1, n), np.uint8)
                    stacked[: R.shape[0]] = R
                    stacked[R.shape[0]] = red[0]
                    R, piv = _rref_nb(stacked, ADD, MUL, NEG, INV)
                    queue[qt] = red[0]
                    qt += 1
        return R, piv, True

    @njit(cache=True, nogil=True)
    def _closure_scan_nb(U, Gs, cap, q, ADD, MUL, NEG, INV):
        """Closures of U + <v> for every normalised v reduced against U; returns padded RREFs."""
        n = Gs.shape[1]
        R0, piv0 = _rref_nb(U, ADD, MUL, NEG, INV)
        is_piv = np.zeros(n, np.bool_)
        for i in range(piv0.shape[0]):
            is_piv[piv0[i]] = True
        freecols = np.zeros(n, np.int64)
        nf = 0
        for c in range(n):
            if not is_piv[c]:
                freecols[nf] = c
                nf += 1
        outcap = 64
        out = np.zeros((outcap, cap, n), np.uint8)
        dims = np.zeros(outcap, np.int64)
        count = 0
        digits = np.zeros(nf + 1, np.int64)
        v = np.zeros(n, np.uint8)
        # leading free coordinate is 1, later ones arbitrary
        for lead in range(nf):
            for f in range(nf):
                digits[f] = 0
            while True:
                for c in range(n):
                    v[c] = 0
                v[freecols[lead]] = 1
                for f in range(lead + 1, nf):
                    v[freecols[f]] = digits[f]
                R, piv, ok = _closure_nb(R0, v, Gs, cap, ADD, MUL, NEG, INV)
                if ok:
                    if count == outcap:
                        bigger = np.zeros((2 * outcap, cap, n), np.uint8)
                        bigger[:outcap] = out
                        out = bigger
                        bd = np.zeros(2 * outcap, np.int64)
                        bd[:outcap] = dims
                        dims = bd
                        outcap *= 2
                    out[count, : R.shape[0]] = R
                    dims[count] = R.shape[0]
                    count += 1
                f = lead + 1
                while f < nf:
                    digits[f] += 1
                    if digits[f] < q:
                        break
                    digits[f] = 0
                    f += 1
                if f >= nf:
                    break
        return out[:count].copy(), dims[:count].copy()


# ---------------------------------------------------------------------------
# numpy versions


def _rref_np(M, ADD, MUL, NEG, INV):
    A = np.array(M, dtype=np.uint8, copy=True)
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = MUL[INV[A[r, c]], A[r]]
        mask = A[:, c] != 0
        mask[r] = False
        if mask.any():
            f = NEG[A[mask, c]]
            A[mask] = ADD[A[mask], MUL[f[:, None], A[r][None, :]]]
        piv.append(c)
        r += 1
    return A[:r].copy(), np.array(piv, dtype=np.int64)


def _reduce_np(V, R, piv, ADD, MUL, NEG):
    out = np.array(V, dtype=np.uint8, copy=True)
    for i in range(R.shape[0]):
        f = NEG[out[:, piv[i]]]
        out = ADD[out, MUL[f[:, None], R[i][None, :]]]
    return out


def _matmul_np(A, B, ADD, MUL):
    C = np.zeros((A.shape[0], B.shape[1]), np.uint8)
    for l in range(A.shape[1]):
        C = ADD[C, MUL[A[:, l, None], B[None, l, :]]]
    return C


def _batch_matmul_np(P, M, ADD, MUL):
    C = np.zeros(P.shape[:-1] + (M.shape[1],), np.uint8)
    for l in range(P.shape[-1]):
        C = ADD[C, MUL[P[..., l, None], M[l]]]
    return C


def _invariant_codim_np(k, s, Ms, q, ADD, MUL, NEG, INV):
    found = []
    for pivs in itertools.combinations(range(k), s):
        pset = set(pivs)
        free = [(i, c) for i in range(s) for c in range(pivs[i] + 1, k) if c not in pset]
        nf = len(free)
        B = q**nf
        phis = np.zeros((B, s, k), np.uint8)
        for i, c in enumerate(pivs):
            phis[:, i, c] = 1
        if nf:
            idx = np.arange(B)
            for f, (i, c) in enumerate(free):
                phis[:, i, c] = (idx // q**f) % q
        ok = np.ones(B, dtype=bool)
        for M in Ms:
            P = _batch_matmul_np(phis, M, ADD, MUL)
            for i, c in enumerate(pivs):
                f = NEG[P[:, :, c]]
                P = ADD[P, MUL[f[:, :, None], phis[:, i, None, :]]]
            ok &= ~P.reshape(B, -1).any(axis=1)
        # numba order: pivot masks ascending by bitmask, digits little-endian
        found.append((sum(1 << c for c in pivs), phis[ok]))
    found.sort(key=lambda t: t[0])
    arrs = [a for _, a in found if len(a)]
    return np.concatenate(arrs) if arrs else np.zeros((0, s, k), np.uint8)


def _closure_np(U, v, Gs, cap, ADD, MUL, NEG, INV):
    R, piv = _rref_np(np.vstack([U, v[None, :]]), ADD, MUL, NEG, INV)
    queue = [v[None, :]]
    while queue:
        w = queue.pop(0)
        for G in Gs:
            red = _reduce_np(_matmul_np(w, G, ADD, MUL), R, piv, ADD, MUL, NEG)
            if red.any():
                if R.shape[0] >= cap:
                    return R, piv, False
                R, piv = _rref_np(np.vstack([R, red]), ADD, MUL, NEG, INV)
                queue.append(red)
    return R, piv, True


def _closure_scan_np(U, Gs, cap, q, ADD, MUL, NEG, INV):
    n = Gs.shape[1]
    R0, piv0 = _rref_np(U, ADD, MUL, NEG, INV)
    freecols = [c for c in range(n) if c not in set(piv0.tolist())]
    outs, dims = [], []
    for lead in range(len(freecols)):
        rest = freecols[lead + 1 :]
        for digs in itertools.product(range(q), repeat=len(rest)):
            v = np.zeros(n, np.uint8)
            v[freecols[lead]] = 1
            # little-endian odometer order, matching the numba kernel
            for c, dg in zip(rest, reversed(digs)):
                v[c] = dg
            R, _, ok = _closure_np(R0, v, Gs, cap, ADD, MUL, NEG, INV)
            if ok:
                pad = np.zeros((cap, n), np.uint8)
                pad[: R.shape[0]] = R
                outs.append(pad)
                dims.append(R.shape[0])
    if not outs:
        return np.zeros((0, cap, n), np.uint8), np.zeros(0, np.int64)
    return np.stack(outs), np.array(dims, dtype=np.int64)


# ---------------------------------------------------------------------------
# dispatch

IMPLS = {
    "numpy": {
        "rref": _rref_np,
        "reduce": _reduce_np,
        "matmul": _matmul_np,
        "invariant_codim": _invariant_codim_np,
        "closure_scan": _closure_scan_np,
    }
}
if njit is not None:
    IMPLS["numba"] = {
        "rref": _rref_nb,
        "reduce": _reduce_nb,
        "matmul": _matmul_nb,
        "invariant_codim": _invariant_codim_nb,
        "closure_scan": _closure_scan_nb,
    }

BACKEND = "numba" if USE_NUMBA else "numpy"


def kernel(name: str, backend: str | None = None):
    return IMPLS[backend or BACKEND][name]
