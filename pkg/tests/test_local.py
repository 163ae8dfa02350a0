import pytest
from hypothesis import given
from hypothesis import strategies as st

from ozeta.hecke import slice_from_hecke
from ozeta.local import LocalOrderShape, hey_factor, hey_zeta, local_factor, slice_zeta
from ozeta.series import infinite_product, substitute

shapes = st.builds(LocalOrderShape, st.sampled_from([2, 3, 4, 5]), st.integers(1, 3), st.integers(1, 2))


def test_dvr_has_one_ideal_per_colength():
    for q in (2, 3, 7):
        assert hey_zeta(LocalOrderShape(q), 10).coefficients() == [1] * 11


def test_hey_matrix_shape():
    s = hey_zeta(LocalOrderShape(2, 2, 1), 6)
    assert [s[2], s[4], s[6]] == [3, 7, 15]


def test_hey_two_factors():
    assert hey_zeta(LocalOrderShape(2, 1, 2), 2)[2] == 3


def test_slice_small():
    assert slice_zeta(LocalOrderShape(2), 3).coefficients() == [1, 1, 3, 7]
    assert slice_zeta(LocalOrderShape(3), 3)[3] == 13


def test_local_factor_reindexing():
    assert local_factor(1, 3, 2, 1, 8) == slice_zeta(LocalOrderShape(3, 2, 1), 8)
    s = local_factor(2, 2, 1, 1, 4)
    assert s.coefficients() == [1, 0, 1, 0, 5]
    t = local_factor(3, 2, 1, 1, 5)
    assert t.coefficients()[:4] == [1, 0, 0, 1]


def test_shape_validation():
    with pytest.raises(ValueError):
        LocalOrderShape(6)
    with pytest.raises(ValueError):
        LocalOrderShape(2, 0)


@pytest.mark.parametrize("r,m", [(1, 1), (2, 1), (1, 2), (2, 2)])
@pytest.mark.parametrize("q", [2, 3])
def test_slice_is_product_of_shifted_hey(q, r, m):
    # zeta_A(s) = prod_{n>=0} zeta_Abar((n+1)s - n), i.e. t -> q^n t^{n+1} in Hey
    N = 8
    shape = LocalOrderShape(q, r, m)
    H = hey_factor(shape)
    prod = infinite_product(lambda n: substitute(H, q, n - 1, n), r, N)
    assert prod == slice_zeta(shape, N)


@given(shapes)
def test_coefficients_are_counts(shape):
    for s in (hey_zeta(shape, 9), slice_zeta(shape, 9)):
        assert s.is_integral() and min(s.coefficients()) >= 0


@given(shapes)
def test_support_divisible_by_r(shape):
    for s in (hey_zeta(shape, 9), slice_zeta(shape, 9)):
        assert all(c == 0 for k, c in enumerate(s.coefficients()) if k % shape.r)


@given(shapes)
def test_symbolic_route_agrees(shape):
    assert slice_from_hecke(shape.q, shape.r, shape.m, 6) == slice_zeta(shape, 6)
