"""Concrete z-adic Hecke operators on the left ideals of a window algebra.

For M = A with slice z, and finite-colength left ideals X, Y:

* T_minus(Y) = z^{-1}(Y ∩ zA), the set of a with z a in Y.
* T(X) lists the ideals Y <= X with Y ∩ zA = zX, grouped by the class of
  gr(X/Y)_0 = Xbar_0 / Ybar_0 as a module over Abar = A/zA.
* The graded pieces are Xbar_i = image in Abar of z^{-i}(X ∩ z^i A).

Window: every ideal X of colength <= B contains A_{>=w-1} when
floor(B/s) <= w - 1.  Then z A_{>=w-1} lies in zX, so Y ∩ zA = zX can be
tested in A/A_{>=w}, and all the preimages above contain A_{>=w}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, quotient_by_slice
from .counts import OracleBoundsError, window_supports
from .modules import Submodule, _sub, class_vector, loewy_dims, submodules_bfs, whole

__all__ = ["HeckeTower", "TowerReport", "hecke_T_minus", "hecke_apply", "verify_tower"]


class HeckeTower:
    """Ideal lattice of a window algebra up to colength ``bound`` with T and T_minus."""

    def __init__(self, alg: FiniteAlgebra, bound: int):
        if alg.slice is None:
            raise OracleBoundsError("the algebra has no declared slice")
        if not window_supports(alg, bound, headroom=1):
            raise OracleBoundsError(f"window {alg.window} too small for colength {bound}")
        self.alg, self.bound = alg, bound
        self.lin = alg.lin
        self.n = alg.dim
        self.M = whole(alg)
        self.Mz = alg.left_matrix(alg.slice)
        self.zA = _sub(alg, self.Mz)
        self.bar = quotient_by_slice(alg)
        self.keep = self.lin.complement_coords(self.zA.R, self.zA.piv, self.n)
        self.Mbar = whole(self.bar)
        self.levels = submodules_bfs(alg, bound)
        self.ideals = [Y for c in sorted(self.levels) for Y in self.levels[c]]
        self.colength = {Y.key: self.n - Y.dim for Y in self.ideals}
        self.by_key = {Y.key: Y for Y in self.ideals}
        self._pieces = {}

    # -- primitive operations ------------------------------------------------
    def T_minus(self, Y: Submodule) -> Submodule:
        K, _ = self.lin.preimage(self.Mz, Y.R, Y.piv, self.n)
        return _sub(self.alg, K)

    def T_minus_power(self, Y: Submodule, k: int) -> Submodule:
        for _ in range(k):
            Y = self.T_minus(Y)
        return Y

    def z_times(self, X: Submodule) -> Submodule:
        if X.dim == 0:
            return X
        return _sub(self.alg, self.lin.matmul(X.R, self.Mz))

    def project(self, X: Submodule) -> Submodule:
        """Image of X in Abar."""
        rows = self.lin.reduce(X.R, self.zA.R, self.zA.piv)[:, self.keep]
        return _sub(self.bar, rows)

    def piece(self, X: Submodule, i: int) -> Submodule:
        """Xbar_i, the image of z^{-i}(X ∩ z^i A) in Abar."""
        key = (X.key, i)
        if key not in self._pieces:
            Y = self.T_minus_power(X, i)
            self._pieces[key] = self.project(Y)
        return self._pieces[key]

    def piece_direct(self, X: Submodule, i: int) -> Submodule:
        """Xbar_i from the definition: intersect with z^i A, then pull back along z^i."""
        Zi = np.eye(self.n, dtype=np.uint8)
        for _ in range(i):
            Zi = self.lin.matmul(Zi, self.Mz)
        ziA = _sub(self.alg, Zi)
        meet, mp = self.lin.intersect(X.R, ziA.R, self.n)
        K, _ = self.lin.preimage(Zi, meet, mp, self.n)
        return self.project(_sub(self.alg, K))

    def pieces(self, X: Submodule) -> list:
        """Xbar_0, Xbar_1, ... up to the first piece equal to Mbar (inclusive)."""
        out = []
        i = 0
        while True:
            P = self.piece(X, i)
            out.append(P)
            if P.dim == self.bar.dim:
                return out
            i += 1
            if i > self.bound + 1:
                raise ArithmeticError("graded pieces did not reach Mbar")

    def nbar_class(self, top: Submodule, sub: Submodule) -> tuple:
        """Isomorphism invariants of top/sub over Abar: dimension, classes, Loewy layers."""
        return (top.dim - sub.dim, class_vector(self.bar, top, sub), loewy_dims(self.bar, top, sub))

    def contains(self, X: Submodule, Y: Submodule) -> bool:
        return self.lin.contains(X.R, X.piv, Y.R) if Y.dim else True

    # -- T -----------------------------------------------------------------
    def T(self, X: Submodule) -> dict:
        """{class of Nbar: [summands of T_Nbar X of colength <= bound]}."""
        zX = self.z_times(X)
        X0 = self.piece(X, 0)
        out = {}
        for Y in self.ideals:
            if not self.contains(X, Y):
                continue
            meet, _ = self.lin.intersect(Y.R, self.zA.R, self.n)
            if self.lin.key(meet) != zX.key:
                continue
            cls = self.nbar_class(X0, self.piece(Y, 0))
            out.setdefault(cls, []).append(Y)
        return out

    def lift_prediction(self, X: Submodule) -> dict:
        """{class: a_Nbar * prod_i q^{dim Xbar_i/Xbar_{i-1}}} for summands within the bound."""
        ps = self.pieces(X)
        jumps = sum(ps[i].dim - ps[i - 1].dim for i in range(1, len(ps)))
        chi = self.alg.q**jumps
        base = self.colength[X.key] + jumps
        X0 = ps[0]
        room = self.bound - base
        if room < 0:
            return {}
        subs = submodules_bfs(self.bar, room, W=X0)
        a = Counter()
        for c in subs:
            for Y0 in subs[c]:
                a[self.nbar_class(X0, Y0)] += 1
        return {cls: k * chi for cls, k in a.items()}


def hecke_T_minus(alg: FiniteAlgebra, Y: Submodule, bound: int | None = None) -> Submodule:
    tower = HeckeTower(alg, bound if bound is not None else alg.dim - Y.dim)
    return tower.T_minus(Y)


def hecke_apply(alg: FiniteAlgebra, X: Submodule, nbar_class, bound: int) -> list:
    """Summands of T_Nbar X with colength <= bound; ``nbar_class=None`` returns all classes."""
    tower = HeckeTower(alg, bound)
    table = tower.T(X)
    if nbar_class is None:
        return table
    return table.get(nbar_class, [])


@dataclass
class TowerReport:
    checks: dict = field(default_factory=dict)  # name -> [passed, instances]
    notes: list = field(default_factory=list)

    def record(self, name: str, ok: bool, note: str | None = None):
        entry = self.checks.setdefault(name, [True, 0])
        entry[0] = entry[0] and bool(ok)
        entry[1] += 1
        if not ok and note:
            self.notes.append(f"{name}: {note}")

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def __bool__(self):
        return self.passed


def verify_tower(alg: FiniteAlgebra, n: int, colength_bound: int) -> TowerReport:
    """Check the T / T_minus identities on every ideal of colength <= bound."""
    tw = HeckeTower(alg, colength_bound)
    rep = TowerReport()
    B = colength_bound

    # T_minus and the graded pieces
    for Y in tw.ideals:
        X = tw.T_minus(Y)
        rep.record("T_minus_contains", tw.contains(X, Y), f"colength {tw.colength[Y.key]}")
        rep.record("T_minus_in_lattice", X.key in tw.by_key)
        ok = all(tw.piece_direct(X, i).key == tw.piece_direct(Y, i + 1).key for i in range(B + 1))
        rep.record("graded_shift", ok)
        ok = all(tw.piece_direct(Y, i).key == tw.piece(Y, i).key for i in range(B + 2))
        rep.record("pieces_by_iteration", ok)
        total = sum(tw.bar.dim - tw.piece(Y, i).dim for i in range(B + 2))
        rep.record("graded_length", total == tw.colength[Y.key], f"{total} vs {tw.colength[Y.key]}")

    # T: every ideal is a summand exactly once, under its own T_minus
    seen = Counter()
    for X in tw.ideals:
        table = tw.T(X)
        jumps = sum(b.dim - a.dim for a, b in zip(tw.pieces(X), tw.pieces(X)[1:]))
        for cls, Ys in table.items():
            for Y in Ys:
                seen[Y.key] += 1
                rep.record("summand_returns", tw.T_minus(Y).key == X.key)
                want = tw.colength[X.key] + cls[0] + jumps
                rep.record("summand_colength", tw.colength[Y.key] == want, f"{tw.colength[Y.key]} vs {want}")
        # counting lifts
        pred = tw.lift_prediction(X)
        got = {cls: len(Ys) for cls, Ys in table.items()}
        rep.record("counting_lifts", pred == got, f"{pred} vs {got}")
        # T_minus^k X = M once the pieces have reached Mbar
        n0 = len(tw.pieces(X)) - 1
        for k in range(n0, n0 + 3):
            rep.record("T_minus_reaches_M", tw.T_minus_power(X, k).key == tw.M.key)
    rep.record("summands_partition", all(seen[Y.key] == 1 for Y in tw.ideals) and len(seen) == len(tw.ideals))

    # T^n M versus {X : T_minus^n X = M}
    layer = Counter({tw.M.key: 1})
    for _ in range(n):
        nxt = Counter()
        for key, mult in layer.items():
            for Ys in tw.T(tw.by_key[key]).values():
                for Y in Ys:
                    nxt[Y.key] += mult
        layer = nxt
    want = Counter(Y.key for Y in tw.ideals if tw.T_minus_power(Y, n).key == tw.M.key)
    rep.record("T_power_expansion", layer == want, f"{len(layer)} vs {len(want)}")
    rep.record("T_power_multiplicity_one", all(v == 1 for v in layer.values()))
    return rep
