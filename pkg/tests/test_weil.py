from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import divisors

from ozeta.series import RationalFunction
from ozeta.weil import (
    CATALOG_NAMES,
    LDataError,
    catalog,
    closed_point_census,
    complement,
    disjoint_union,
    from_factors,
    point_counts,
    serre_from_counts,
    serre_series,
    serre_zeta,
    weil_poincare,
)

GENUINE = ["point", "affine_line", "punctured_affine_line", "P1", "P2", "A2", "P1xP1", "three_lines", "conic_line", "nodal_cubic"]


def entries(q):
    out = [catalog(n, q) for n in GENUINE]
    out.append(catalog("elliptic", q, trace=1))
    out.append(catalog("genus_g_curve", q, numerator=(1, 0, 0, 0, q * q)))
    return out


def points_off_axes(p):
    """Points of P^2(F_p) with xyz != 0, p prime, by normalising representatives."""
    seen = set()
    for v in product(range(p), repeat=3):
        if all(v):
            inv = pow(v[0], -1, p)
            seen.add(tuple(x * inv % p for x in v))
    return len(seen)


def test_p2_counts():
    assert point_counts(catalog("P2", 2), 3).counts == (7, 21, 73)


def test_three_lines_counts():
    L = catalog("three_lines", 2)
    assert point_counts(L, 4).counts == tuple(3 * 2**k for k in range(1, 5))
    assert serre_zeta(L) == RationalFunction((1,), (1, -2)) ** 3


def test_elliptic_count():
    for a in (-2, 0, 1, 3):
        assert point_counts(catalog("elliptic", 5, trace=a), 1)[1] == 5 + 1 - a


def test_serre_zetas():
    q = 3
    assert serre_zeta(catalog("point", q)) == RationalFunction((1,), (1, -1))
    assert serre_zeta(catalog("P1", q)) == RationalFunction((1,), (1, -1 - q, q))
    assert serre_zeta(catalog("nodal_cubic", q)) == RationalFunction((1,), (1, -q))


def test_closed_point_censuses():
    assert closed_point_census(catalog("P2", 2), 3).degrees == (7, 7, 22)
    assert closed_point_census(catalog("point", 2), 3).degrees == (1, 0, 0)
    assert closed_point_census(catalog("affine_line", 2), 3).degrees == (2, 1, 2)


def test_necklace_formula():
    q = 3
    census = closed_point_census(catalog("affine_line", q), 8).degrees
    for k in range(1, 9):
        assert census[k - 1] == (q**k - sum(d * census[d - 1] for d in divisors(k) if d < k)) // k


def test_weil_poincare():
    assert weil_poincare(catalog("three_lines", 5)).coeffs == (0, 0, 3, 0, 0)
    assert weil_poincare(catalog("P1", 5)).coeffs == (1, 0, 1, 0, 0)
    assert weil_poincare(catalog("elliptic", 5, trace=2)).coeffs == (1, 2, 1, 0, 0)
    assert weil_poincare(catalog("P2", 5)).euler_characteristic() == 3


def test_disjoint_union_counts():
    q = 4
    L = disjoint_union(catalog("P1", q), catalog("point", q))
    assert point_counts(L, 3).counts == tuple(q**k + 2 for k in range(1, 4))


def test_complement_of_three_lines():
    q = 3
    U = complement(catalog("P2", q), catalog("three_lines", q))
    assert point_counts(U, 4).counts == tuple(q ** (2 * k) - 2 * q**k + 1 for k in range(1, 5))
    assert point_counts(U, 1)[1] == points_off_axes(q)
    assert not U.virtual


def test_complement_can_be_virtual():
    U = complement(catalog("point", 2), catalog("P1", 2))
    assert U.virtual
    with pytest.raises(LDataError):
        closed_point_census(U, 3)


def test_three_lines_decomposition():
    q = 7
    parts = disjoint_union(catalog("P1", q), catalog("affine_line", q), catalog("punctured_affine_line", q))
    assert serre_zeta(parts) == serre_zeta(catalog("three_lines", q))


def test_catalog_errors():
    with pytest.raises(LDataError):
        catalog("torus", 2)
    with pytest.raises(LDataError):
        catalog("elliptic", 2, trace=5)
    with pytest.raises(LDataError):
        catalog("genus_g_curve", 2, numerator=(1, 0, 3))
    with pytest.raises(LDataError):
        from_factors(2, [(2, (2, -2))])
    assert "complement" in CATALOG_NAMES


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_serre_zeta_is_exp_of_counts(q):
    for L in entries(q):
        assert serre_series(L, 8) == serre_from_counts(L, 8), L.name


@pytest.mark.parametrize("q", [2, 3, 5])
def test_census_reproduces_counts(q):
    for L in entries(q):
        census = closed_point_census(L, 8).degrees
        counts = point_counts(L, 8).counts
        for k in range(1, 9):
            assert sum(d * census[d - 1] for d in divisors(k)) == counts[k - 1]
        assert min(census) >= 0


@given(st.sampled_from(GENUINE), st.sampled_from(GENUINE), st.sampled_from([2, 3, 5]))
def test_poincare_is_additive(a, b, q):
    X, Y = catalog(a, q), catalog(b, q)
    assert weil_poincare(disjoint_union(X, Y)) == weil_poincare(X) + weil_poincare(Y)
    assert serre_zeta(disjoint_union(X, Y)) == serre_zeta(X) * serre_zeta(Y)


def test_same_l_polynomial_same_zeta():
    E = catalog("elliptic", 7, trace=-3)
    cover = from_factors(7, [(f.weight, f.poly, f.mult) for f in E.factors])
    assert serre_zeta(cover) == serre_zeta(E)
