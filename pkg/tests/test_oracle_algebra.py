import numpy as np
import pytest

from ozeta.oracle import (
    AlgebraError,
    build_delta_l,
    build_symbol,
    matrix_algebra,
    power_series_2d,
    product_algebra,
    quantum_plane,
    quotient_by_slice,
    truncated_dvr,
    window_supports,
)
from ozeta.oracle.algebra import dvr_rule


def vec(A, *terms):
    return A.vector([(1, lab) for lab in terms])


def test_quaternion_relations():
    A = build_symbol(3, 2, -1, "param_u", "param_v", 4)
    x, y = vec(A, (1, 0)), vec(A, (0, 1))
    u, v = vec(A, (2, 0)), vec(A, (0, 2))
    assert np.array_equal(A.mul(x, x), u)
    assert np.array_equal(A.mul(y, y), v)
    assert np.array_equal(A.mul(y, x), A.lin.neg(A.mul(x, y)))
    # the parameters are central
    for w in (x, y):
        assert np.array_equal(A.mul(u, w), A.mul(w, u))
        assert np.array_equal(A.mul(v, w), A.mul(w, v))


def test_case_two_symbol_relations():
    beta = 2
    A = build_symbol(5, 2, -1, "param_u", "unit", 3, unit_value=beta)
    x, y = vec(A, (0, 1, 0)), vec(A, (0, 0, 1))
    assert np.array_equal(A.mul(y, y), A.lin.scale(beta, A.unit))
    assert np.array_equal(A.mul(y, x), A.lin.neg(A.mul(x, y)))
    assert A.g == 1 and A.idempotents[0].simple_dim == 2  # y^2 = 2 has no root mod 5


def test_delta_two_slice_squares_to_x():
    base = build_symbol(3, 2, -1, "param_u", "param_v", 5)
    D = build_delta_l(base, 2, 5)
    z = D.slice
    x_diag = D.vector([(1, (0, 0, (1, 0))), (1, (1, 1, (1, 0)))])
    assert np.array_equal(D.mul(z, z), x_diag)
    assert D.sigma == (2, 1)


def test_delta_one_quotient_is_polynomial_in_y():
    w = 4
    A = build_symbol(3, 2, -1, "param_u", "param_v", w)
    Q = quotient_by_slice(build_delta_l(A, 1, w))
    # (R/(u))[y]/(y^2 - v) = F_3[[y]]
    D = truncated_dvr(3, w)
    assert np.array_equal(Q.C, D.C)
    assert [lab[2] for lab in Q.labels] == [(0, b) for b in range(w)]


def test_case_two_quotient_is_product_of_fields_in_v():
    w = 3
    A = build_symbol(3, 2, -1, "param_u", "unit", w, unit_value=1)
    Q = quotient_by_slice(A)
    # (F_3[[v]])[y]/(y^2 - 1) has two idempotents and dimension 2w
    assert Q.dim == 2 * w and Q.g == 2


def test_symbol_argument_errors():
    with pytest.raises(AlgebraError):
        build_symbol(3, 2, 1, "param_u", "param_v", 3)  # 1 is not primitive
    with pytest.raises(AlgebraError):
        build_symbol(2, 2, 1, "param_u", "param_v", 3)  # e divides q
    with pytest.raises(AlgebraError):
        build_symbol(3, 2, -1, "param_u", "bogus", 3)
    with pytest.raises(AlgebraError):
        build_symbol(3, 2, -1, "unit", "unit", 3)


def test_slice_validation():
    A = power_series_2d(2, 4)
    y = vec(A, (0, 1))
    A.validate_slice(y)
    A.validate_slice(A.mul(y, y))
    with pytest.raises(AlgebraError):
        A.validate_slice(np.zeros(A.dim, np.uint8))
    with pytest.raises(AlgebraError):
        A.validate_slice(A.unit)
    # (x, 0) kills the second factor of a product
    P = product_algebra(truncated_dvr(2, 3), truncated_dvr(2, 3))
    with pytest.raises(AlgebraError):
        P.validate_slice(vec(P, (0, (1,))))
    # x + y is not normal when y x = -x y
    S = quantum_plane(3, 3, xi=-1)
    with pytest.raises(AlgebraError):
        S.validate_slice(vec(S, (1, 0), (0, 1)))


def test_associativity_is_checked():
    A = power_series_2d(3, 4)
    C = A.C.copy()
    i, j = A.index[(1, 0)], A.index[(0, 1)]
    C[i, j] = 0
    C[i, j, A.index[(2, 0)]] = 1
    with pytest.raises(AlgebraError):
        type(A)(A.F, A.labels, A.deg, C, A.unit, A.window)


def test_matrix_and_product_algebras():
    M = matrix_algebra(dvr_rule(2), 2, 3, [(1, (1,))])
    assert M.dim == 12 and M.simple_dim == 2
    P = product_algebra(truncated_dvr(2, 3), truncated_dvr(2, 3))
    assert P.dim == 6 and P.g == 2


def test_window_rule():
    A = build_symbol(3, 2, -1, "param_u", "unit", 2, unit_value=-1)
    # simple modules of dimension 2 halve the Loewy bound
    assert window_supports(A, 4) and not window_supports(A, 6)
    B = power_series_2d(2, 3)
    assert window_supports(B, 3) and not window_supports(B, 3, headroom=1)
