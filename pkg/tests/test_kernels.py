import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ozeta.oracle import _kernels
from ozeta.oracle.gf import field
from ozeta.oracle.linalg import Lin

pytestmark = pytest.mark.skipif("numba" not in _kernels.IMPLS, reason="numba not installed")

FIELDS = [2, 3, 4, 5, 9]


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    q = draw(st.sampled_from(FIELDS))
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    flat = draw(st.lists(st.integers(0, q - 1), min_size=m * n, max_size=m * n))
    return q, np.array(flat, np.uint8).reshape(m, n)


def pair(q):
    F = field(q)
    return Lin(F, "numba"), Lin(F, "numpy")


@pytest.mark.parametrize("q", FIELDS + [7, 25, 49])
def test_field_axioms(q):
    F = field(q)
    a = np.arange(q)
    A, B, C = np.meshgrid(a, a, a, indexing="ij")
    assert np.array_equal(F.mul[A, F.add[B, C]], F.add[F.mul[A, B], F.mul[A, C]])
    assert np.array_equal(F.mul[F.mul[A, B], C], F.mul[A, F.mul[B, C]])
    assert np.array_equal(F.add[F.add[A, B], C], F.add[A, F.add[B, C]])
    assert all(F.mul[x, F.inv[x]] == 1 for x in range(1, q))
    assert all(F.add[x, F.neg[x]] == 0 for x in range(q))
    assert len({F.pow(x, q) for x in range(q)}) == q  # Frobenius is a bijection


@given(matrices())
def test_rref_backends_agree(qm):
    q, M = qm
    nb, npy = pair(q)
    R1, p1 = nb.rref(M)
    R2, p2 = npy.rref(M)
    assert np.array_equal(R1, R2) and np.array_equal(p1, p2)


@given(matrices())
def test_rref_is_reduced_basis_of_rowspace(qm):
    q, M = qm
    lin = Lin(field(q))
    R, piv = lin.span(M, M.shape[1])
    assert np.array_equal(R[:, piv], np.eye(len(piv), dtype=np.uint8))
    assert lin.contains(R, piv, M)
    assert all(row.any() for row in R)
    assert list(piv) == sorted(piv)


@given(matrices(), matrices())
def test_matmul_and_reduce_backends_agree(a, b):
    q, A = a
    _, B = b
    B = (B % q).astype(np.uint8)
    B = np.resize(B, (A.shape[1], B.shape[1]))
    nb, npy = pair(q)
    assert np.array_equal(nb.matmul(A, B), npy.matmul(A, B))
    R, piv = nb.span(B, B.shape[1])
    V = np.resize(A, (A.shape[0], B.shape[1]))
    assert np.array_equal(nb.reduce(V, R, piv), npy.reduce(V, R, piv))


@given(matrices(max_rows=5, max_cols=5))
def test_left_kernel_annihilates(qm):
    q, M = qm
    lin = Lin(field(q))
    K, _ = lin.left_kernel(M)
    R, _ = lin.span(M, M.shape[1])
    assert K.shape[0] == M.shape[0] - R.shape[0]
    if K.shape[0]:
        assert not lin.matmul(K, M).any()


@given(st.sampled_from([2, 3, 4]), st.integers(1, 3), st.data())
def test_invariant_subspace_search_agrees(q, k, data):
    nb, npy = pair(q)
    g = data.draw(st.integers(1, 2))
    flat = data.draw(st.lists(st.integers(0, q - 1), min_size=g * k * k, max_size=g * k * k))
    Ms = np.array(flat, np.uint8).reshape(g, k, k)
    for s in range(1, k + 1):
        a = nb.invariant_codim(k, s, Ms)
        b = npy.invariant_codim(k, s, Ms)
        assert len(a) == len(b)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_closure_scan_backends_agree():
    from ozeta.oracle import quantum_plane

    A = quantum_plane(3, 3)
    Gs = np.ascontiguousarray(np.stack([G.T for G in A.generators()]))
    U = np.zeros((0, A.dim), np.uint8)
    nb, npy = pair(3)
    o1, d1 = nb.closure_scan(U, Gs, 3)
    o2, d2 = npy.closure_scan(U, Gs, 3)
    assert list(d1) == list(d2)
    assert all(np.array_equal(np.asarray(x)[:d], np.asarray(y)[:d]) for x, y, d in zip(o1, o2, d1))


def _census_in_subprocess(env_extra):
    code = (
        "import json\n"
        "from ozeta.oracle import _kernels, build_symbol, count_ideals_algebra\n"
        "c = count_ideals_algebra(build_symbol(3, 2, -1, 'param_u', 'unit', 3, 1), 3)\n"
        "print(json.dumps({'backend': _kernels.BACKEND, 'census': c.as_dict()}, sort_keys=True))\n"
    )
    env = dict(os.environ, **env_extra)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_env_flag_selects_numpy_and_matches():
    fast = _census_in_subprocess({"OZETA_DISABLE_NUMBA": "0"})
    slow = _census_in_subprocess({"OZETA_DISABLE_NUMBA": "1"})
    assert fast["backend"] == "numba" and slow["backend"] == "numpy"
    assert fast["census"] == slow["census"]
    assert fast["census"]["counts"] == [1, 2, 9, 34]
