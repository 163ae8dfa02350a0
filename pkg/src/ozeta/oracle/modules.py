"""Enumeration of finite-codimension submodules of a window algebra.

Two independent routes:

* ``submodules_bfs`` walks down from a module W one maximal submodule at a
  time.  Maximal submodules of X contain JX, and correspond to simple
  quotients of the semisimple module X/JX, found by an exhaustive search
  over invariant subspaces of the dual of X/JX.
* ``submodules_raw`` scans invariant subspaces of the dual of A by
  repeated cyclic closure, with no use of the radical.  It only scales to
  small algebras.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra

__all__ = [
    "Submodule",
    "Census",
    "threads",
    "radical_of",
    "maximal_submodules",
    "submodules_bfs",
    "submodules_raw",
    "class_vector",
    "loewy_dims",
    "census",
    "grothendieck_class",
    "whole",
]

RAW_DIM_LIMIT = 12


def threads() -> int:
    try:
        return max(1, int(os.environ.get("OZETA_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Submodule:
    R: np.ndarray = field(compare=False, hash=False)
    piv: np.ndarray = field(compare=False, hash=False)
    key: bytes

    @property
    def dim(self) -> int:
        return self.R.shape[0]


def _sub(A: FiniteAlgebra, rows) -> Submodule:
    R, piv = A.lin.span(rows, A.dim)
    return Submodule(R, piv, A.lin.key(R))


def whole(A: FiniteAlgebra) -> Submodule:
    return _sub(A, np.eye(A.dim, dtype=np.uint8))


def radical_of(A: FiniteAlgebra, X: Submodule) -> Submodule:
    """JX, spanned by the products of radical labels with the rows of X."""
    rad = A.radical_indices()
    if not rad or X.dim == 0:
        return _sub(A, np.zeros((0, A.dim), np.uint8))
    rows = np.concatenate([A.lin.matmul(X.R, A.C[i]) for i in rad])
    return _sub(A, rows)


def maximal_submodules(A: FiniteAlgebra, X: Submodule) -> list:
    """All maximal submodules of X, each as a Submodule (sorted by key)."""
    lin = A.lin
    n = A.dim
    JX = radical_of(A, X)
    comp = lin.complement_coords(JX.R, JX.piv, n)
    red = lin.reduce(X.R, JX.R, JX.piv)[:, comp]
    B, pB = lin.span(red, len(comp))
    k = B.shape[0]
    if k == 0:
        return []
    lifts = np.zeros((k, n), np.uint8)
    lifts[:, comp] = B
    # action of the degree-zero labels on Q = X/JX in the basis B
    gens = [A.C[i] for i in range(n) if A.deg[i] == 0]
    GQ = []
    for G in gens:
        img = lin.reduce(lin.matmul(lifts, G), JX.R, JX.piv)[:, comp]
        GQ.append(img[:, pB])
    MsT = np.ascontiguousarray(np.stack([g.T for g in GQ]))
    found = {}
    for s in sorted({e.simple_dim for e in A.idempotents} or {1}):
        if s > k:
            continue
        for phi in lin.invariant_codim(k, s, MsT):
            K, _ = lin.left_kernel(np.ascontiguousarray(phi.T))
            rows = np.concatenate([JX.R, lin.matmul(K, lifts)]) if K.shape[0] else JX.R
            Y = _sub(A, rows)
            found.setdefault(Y.key, Y)
    return [found[key] for key in sorted(found)]


def submodules_bfs(A: FiniteAlgebra, max_codim: int, W: Submodule | None = None, n_threads: int | None = None) -> dict:
    """{codim in W: [Submodule]} for all submodules of W of codim <= max_codim."""
    W = W if W is not None else whole(A)
    levels = {0: {W.key: W}}
    n_threads = n_threads or threads()
    pool = ThreadPoolExecutor(n_threads) if n_threads > 1 else None
    try:
        for c in range(max_codim + 1):
            frontier = [levels[c][k] for k in sorted(levels.get(c, {}))]
            if not frontier or c == max_codim:
                continue
            if pool is None:
                results = [maximal_submodules(A, X) for X in frontier]
            else:
                results = list(pool.map(lambda X: maximal_submodules(A, X), frontier))
            # merge in frontier order so the output is independent of scheduling
            for X, subs in zip(frontier, results):
                for Y in subs:
                    d = c + X.dim - Y.dim
                    if d <= max_codim:
                        levels.setdefault(d, {}).setdefault(Y.key, Y)
    finally:
        if pool is not None:
            pool.shutdown()
    return {c: [levels.get(c, {})[k] for k in sorted(levels.get(c, {}))] for c in range(max_codim + 1)}


def submodules_raw(A: FiniteAlgebra, max_codim: int, limit: int = RAW_DIM_LIMIT) -> dict:
    """Same output as :func:`submodules_bfs` for W = A, via dual closure scans."""
    if A.dim > limit:
        raise ValueError(f"raw scan limited to dimension {limit}, got {A.dim}")
    lin = A.lin
    n = A.dim
    GsT = np.ascontiguousarray(np.stack([G.T for G in A.generators()]))
    empty = np.zeros((0, n), np.uint8)
    seen = {lin.key(empty): empty}
    todo = [empty]
    while todo:
        U = todo.pop()
        if U.shape[0] >= max_codim:
            continue
        outs, dims = lin.closure_scan(U, GsT, max_codim)
        for R, d in zip(outs, dims):
            R = np.ascontiguousarray(R[:d])
            key = lin.key(R)
            if key not in seen:
                seen[key] = R
                todo.append(R)
    levels = {c: {} for c in range(max_codim + 1)}
    for U in seen.values():
        if U.shape[0] == 0:
            Y = whole(A)
        else:
            K, _ = lin.left_kernel(np.ascontiguousarray(U.T))
            Y = _sub(A, K)
        levels[n - Y.dim][Y.key] = Y
    return {c: [levels[c][k] for k in sorted(levels[c])] for c in levels}


def _image_dim(A: FiniteAlgebra, X: Submodule, e) -> int:
    if X.dim == 0:
        return 0
    R, _ = A.lin.span(A.lin.matmul(X.R, A.left_matrix(e)), A.dim)
    return R.shape[0]


def class_vector(A: FiniteAlgebra, Y: Submodule, X: Submodule) -> tuple:
    """Composition multiplicities of Y/X (X inside Y), one entry per simple."""
    out = []
    for e in A.idempotents:
        d = _image_dim(A, Y, e.vector) - _image_dim(A, X, e.vector)
        if d % e.corner_dim:
            raise ArithmeticError("corner dimension does not divide")
        out.append(d // e.corner_dim)
    return tuple(out)


def loewy_dims(A: FiniteAlgebra, Y: Submodule, X: Submodule) -> tuple:
    """Dimensions of the radical layers of Y/X."""
    out = []
    cur = Y
    while cur.dim > X.dim:
        nxt = radical_of(A, cur)
        nxt = _sub(A, np.concatenate([nxt.R, X.R])) if X.dim else nxt
        out.append(cur.dim - nxt.dim)
        cur = nxt
    return tuple(out)


@dataclass
class Census:
    counts: list
    classes: list

    def as_dict(self):
        return {
            "counts": list(self.counts),
            "classes": [{",".join(map(str, k)): v for k, v in sorted(c.items())} for c in self.classes],
        }


def census(A: FiniteAlgebra, levels: dict) -> Census:
    """Counts and class multisets of the quotients A/Y by codimension."""
    top = whole(A)
    counts, classes = [], []
    for c in sorted(levels):
        counts.append(len(levels[c]))
        classes.append(Counter(class_vector(A, top, Y) for Y in levels[c]))
    return Census(counts, classes)


def grothendieck_class(A: FiniteAlgebra, Y: Submodule) -> tuple:
    """Composition multiplicities of A/Y."""
    return class_vector(A, whole(A), Y)
