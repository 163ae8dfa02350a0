"""Subspace arithmetic over a table field, on top of the kernels."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .gf import GF

__all__ = ["Lin"]


class Lin:
    """Bundles a field with the selected kernel backend."""

    def __init__(self, F: GF, backend: str | None = None):
        self.F = F
        self.q = F.q
        self.backend = backend or _kernels.BACKEND
        self._rref = _kernels.kernel("rref", self.backend)
        self._reduce = _kernels.kernel("reduce", self.backend)
        self._matmul = _kernels.kernel("matmul", self.backend)
        self._invariant = _kernels.kernel("invariant_codim", self.backend)
        self._scan = _kernels.kernel("closure_scan", self.backend)

    # -- basic -------------------------------------------------------------
    def arr(self, M) -> np.ndarray:
        return np.ascontiguousarray(np.asarray(M, dtype=np.uint8))

    def rref(self, M):
        M = self.arr(M)
        if M.ndim == 1:
            M = M[None, :]
        add, mul, neg, inv = self.F.tables
        R, piv = self._rref(M, add, mul, neg, inv)
        return np.ascontiguousarray(R), np.ascontiguousarray(piv, dtype=np.int64)

    def reduce(self, V, R, piv):
        V = self.arr(V)
        if R.shape[0] == 0:
            return V.copy()
        add, mul, neg, _ = self.F.tables
        return self._reduce(V, self.arr(R), piv, add, mul, neg)

    def matmul(self, A, B):
        add, mul, _, _ = self.F.tables
        return self._matmul(self.arr(A), self.arr(B), add, mul)

    def add(self, A, B):
        return self.F.add[self.arr(A), self.arr(B)]

    def scale(self, a: int, A):
        return self.F.mul[a, self.arr(A)]

    def neg(self, A):
        return self.F.neg[self.arr(A)]

    # -- subspaces ---------------------------------------------------------
    def span(self, rows, n: int):
        rows = self.arr(rows).reshape(-1, n)
        if rows.shape[0] == 0:
            return np.zeros((0, n), np.uint8), np.zeros(0, np.int64)
        return self.rref(rows)

    def key(self, R) -> bytes:
        R = self.arr(R)
        return bytes([R.shape[0], R.shape[1] if R.ndim == 2 else 0]) + R.tobytes()

    def contains(self, R, piv, V) -> bool:
        V = self.arr(V)
        if V.ndim == 1:
            V = V[None, :]
        return not self.reduce(V, R, piv).any()

    def coords(self, R, piv, V):
        """Coordinates of vectors in rowspace(R) with respect to the RREF rows."""
        V = self.arr(V)
        if not self.contains(R, piv, V):
            raise ValueError("vector not in subspace")
        return V[:, piv]

    def left_kernel(self, M):
        """Basis (RREF) of {c : c @ M = 0}."""
        M = self.arr(M)
        m, n = M.shape
        aug = np.concatenate([M, np.eye(m, dtype=np.uint8)], axis=1)
        R, piv = self.rref(aug)
        rows = [R[i, n:] for i in range(R.shape[0]) if piv[i] >= n]
        return self.span(np.array(rows, dtype=np.uint8).reshape(-1, m), m)

    def intersect(self, A, B, n: int):
        """rowspace(A) meet rowspace(B)."""
        A = self.arr(A).reshape(-1, n)
        B = self.arr(B).reshape(-1, n)
        if A.shape[0] == 0 or B.shape[0] == 0:
            return np.zeros((0, n), np.uint8), np.zeros(0, np.int64)
        K, _ = self.left_kernel(np.concatenate([A, B], axis=0))
        if K.shape[0] == 0:
            return np.zeros((0, n), np.uint8), np.zeros(0, np.int64)
        return self.span(self.matmul(K[:, : A.shape[0]], A), n)

    def preimage(self, M, R, piv, n_in: int):
        """{v : v @ M in rowspace(R)} for an n_in x n_out matrix M."""
        images = self.reduce(M, R, piv)
        return self.left_kernel(images) if n_in else (np.zeros((0, 0), np.uint8), np.zeros(0, np.int64))

    def complement_coords(self, R, piv, n: int):
        """Columns that coordinatise the quotient F^n / rowspace(R)."""
        ps = set(int(c) for c in piv)
        return np.array([c for c in range(n) if c not in ps], dtype=np.int64)

    def quotient_coords(self, V, R, piv, n: int):
        cols = self.complement_coords(R, piv, n)
        return self.reduce(V, R, piv)[:, cols]

    def invariant_codim(self, k: int, s: int, Ms):
        add, mul, neg, inv = self.F.tables
        Ms = self.arr(Ms).reshape(-1, k, k)
        return self._invariant(k, s, Ms, self.q, add, mul, neg, inv)

    def closure_scan(self, U, Gs, cap: int):
        add, mul, neg, inv = self.F.tables
        n = Gs.shape[1]
        U = self.arr(U).reshape(-1, n)
        return self._scan(U, self.arr(Gs), cap, self.q, add, mul, neg, inv)

    def all_vectors(self, n: int):
        idx = np.arange(self.q**n)
        return np.stack([(idx // self.q**j) % self.q for j in range(n)], axis=1).astype(np.uint8)
