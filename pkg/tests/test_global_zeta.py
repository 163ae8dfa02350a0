from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ozeta.global_zeta import (
    PRESETS,
    OrderError,
    OrderSpec,
    RamificationStratum,
    azumaya_zeta,
    brauer_severi_zeta,
    euler_closed_form,
    euler_product_zeta,
    euler_specialize,
    matrix_algebra_spec,
    nc_plane_preset,
    order_zeta,
    order_zeta_from_counts,
    poincare_at_q,
    poincare_exp_form,
    poincare_product_form,
    poincare_ratio_closed_form,
    poincare_zeta,
    segal_dirichlet,
    segal_local_factor,
    sklyanin_ratio,
    strata_zeta,
)
from ozeta.series import RationalFunction, ZPoly, infinite_product, substitute
from ozeta.weil import catalog, closed_point_census, serre_zeta, weil_poincare


def P2(q):
    return catalog("P2", q)


def test_azumaya_p2_d1():
    assert azumaya_zeta(P2(2), 1, 2).coefficients() == [1, 7, 49]


def test_azumaya_d1_is_shifted_serre_product():
    q = 3
    Z = serre_zeta(P2(q))
    want = infinite_product(lambda n: substitute(Z, q, n - 1, n), 1, 6)
    assert azumaya_zeta(P2(q), 1, 6) == want


def test_azumaya_d2_euler_product():
    spec = matrix_algebra_spec(P2(3), 2)
    assert azumaya_zeta(P2(3), 2, 8) == euler_product_zeta(spec, 8)
    assert azumaya_zeta(P2(3), 2, 8)[4] != 0


@pytest.mark.parametrize("d,q", [(1, 2), (2, 3), (3, 2), (3, 4)])
def test_brauer_severi_matches_azumaya(d, q):
    for X in (P2(q), catalog("P1xP1", q)):
        assert brauer_severi_zeta(X, d, 9) == azumaya_zeta(X, d, 9)


def test_totally_ramified_stratum():
    q = 5
    Z = serre_zeta(catalog("P1", q))
    want = infinite_product(lambda n: substitute(Z, q, n - 1, n), 1, 6)
    assert strata_zeta(RamificationStratum(catalog("P1", q), 3), 3, 6) == want


def test_three_lines_cover_t2_coefficient():
    q, d = 3, 2
    # (1 - 3t)^{-3} contributes C(4,2) 3^2 at t^2 and (1 - 9t^2)^{-3} contributes 3 * 9
    want = comb(4, 2) * q**2 + 3 * q**2
    spec = nc_plane_preset("three_lines", d, 2, q)
    got = 1
    for s in spec.strata:
        got = strata_zeta(s, d, 2) * got
    assert got[2] == want == 81


def test_elliptic_cover_with_r_one():
    E = catalog("elliptic", 4, trace=1)
    assert strata_zeta(RamificationStratum(E, 3), 3, 8) == azumaya_zeta(E, 1, 8)


def test_order_without_strata():
    X = catalog("P1xP1", 3)
    assert order_zeta(OrderSpec(3, 2, X), 8) == azumaya_zeta(X, 2, 8)


def test_three_lines_full_series():
    spec = nc_plane_preset("three_lines", 2, 2, 3)
    expected = [1, 9, 97, 738, 6019, 41076, 290869]
    assert order_zeta(spec, 6).coefficients() == expected
    assert order_zeta_from_counts(spec, 6).coefficients() == expected
    assert euler_product_zeta(spec, 6).coefficients() == expected


def test_euler_product_p2():
    spec = matrix_algebra_spec(P2(2), 1)
    assert closed_point_census(P2(2), 3).degrees == (7, 7, 22)
    assert euler_product_zeta(spec, 6) == azumaya_zeta(P2(2), 1, 6)


def test_point_stratum_local_factor():
    from ozeta.local import LocalOrderShape, slice_zeta

    spec = OrderSpec(2, 1, catalog("point", 2))
    assert euler_product_zeta(spec, 6) == slice_zeta(LocalOrderShape(2), 6)


def test_segal():
    D = segal_dirichlet(12)
    assert D[1] == 1
    assert [D[p] for p in (2, 3, 5, 7)] == [2, 3, 5, 7]
    # (1 - 2u)^{-1} (1 - 4u^2)^{-1} ... has u^2 coefficient 4 + 4
    assert D[4] == segal_local_factor(2, 2)[2] == 8
    assert D[6] == D[2] * D[3]


def test_poincare_p2():
    p = poincare_zeta(matrix_algebra_spec(P2(2), 1), 3)
    assert p[1] == ZPoly((1, 0, 1, 0, 1))
    assert p[2] == ZPoly((1, 0, 2, 0, 3, 0, 2, 0, 1))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_poincare_recovers_point_counts(q):
    spec = matrix_algebra_spec(P2(q), 1)
    assert poincare_at_q(poincare_zeta(spec, 3), q) == order_zeta(spec, 3)


def test_euler_specialisations():
    e1 = euler_specialize(poincare_zeta(matrix_algebra_spec(P2(2), 1), 6))
    assert e1.coefficients()[:4] == [1, 3, 9, 22]
    assert e1 == euler_closed_form(3, 1, 6)
    e2 = euler_specialize(poincare_zeta(matrix_algebra_spec(P2(3), 2), 6))
    assert e2 == euler_closed_form(3, 2, 6)
    assert e2[2] == 6 and e2[1] == e2[3] == 0
    e3 = euler_specialize(poincare_zeta(nc_plane_preset("three_lines", 2, 2, 3), 6))
    assert e3 == euler_closed_form(3, 1, 6)


@pytest.mark.parametrize("betti,r", [((1, 0, 1, 0, 1), 1), ((1, 0, 1, 0, 1), 2), ((0, 0, 3, 0, 0), 1), ((1, 2, 1, 0, 0), 3)])
def test_poincare_forms_agree(betti, r):
    assert poincare_exp_form(betti, r, 6) == poincare_product_form(betti, r, 6)


@pytest.mark.parametrize("kind,h", [("three_lines", 3), ("conic_line", 2), ("nodal_cubic", 1)])
def test_singular_presets(kind, h):
    spec = nc_plane_preset(kind, 2, 2, 3)
    assert spec.flags["h"] == h
    assert weil_poincare(spec.ramification_base).coeffs[2] == h


def test_three_lines_serre():
    q = 5
    spec = nc_plane_preset("three_lines", 2, 2, q)
    assert serre_zeta(spec.ramification_base) == RationalFunction((1,), (1, -q)) ** 3


def test_sklyanin_preset():
    spec = nc_plane_preset("sklyanin", 3, 3, 4, trace=1)
    assert weil_poincare(spec.ramification_base).coeffs == (1, 2, 1, 0, 0)
    assert len(spec.strata) == 1


@pytest.mark.parametrize(
    "kind,d,e,q", [(k, 2, 2, 3) for k in PRESETS] + [("sklyanin", 3, 3, 2), ("three_lines", 4, 2, 5)]
)
def test_preset_ratio(kind, d, e, q):
    spec = nc_plane_preset(kind, d, e, q, trace=1)
    ratio = order_zeta(spec, 6) / azumaya_zeta(P2(q), d, 6)
    assert ratio == sklyanin_ratio(spec.ramification_base, d, e, 6)
    assert order_zeta(spec, 6).is_integral() and min(order_zeta(spec, 6).coefficients()) >= 0


def test_sklyanin_poincare():
    spec = nc_plane_preset("sklyanin", 2, 2, 3, trace=2)
    mat = matrix_algebra_spec(P2(3), 2)
    P, M = poincare_zeta(spec, 6), poincare_zeta(mat, 6)
    assert euler_specialize(P) == euler_specialize(M)
    assert P / M == poincare_ratio_closed_form(spec.ramification_base, 2, 2, 6)
    assert P != M


def test_order_spec_validation():
    X = P2(3)
    with pytest.raises(OrderError):
        OrderSpec(2, 2, P2(2))
    with pytest.raises(OrderError):
        OrderSpec(3, 2, X, (RamificationStratum(catalog("P1", 3), 3),))
    with pytest.raises(OrderError):
        RamificationStratum(catalog("P1", 3), 1)
    with pytest.raises(OrderError):
        nc_plane_preset("three_lines", 3, 2, 2)
    mixed = OrderSpec(5, 4, P2(5), (RamificationStratum(catalog("P1", 5), 2), RamificationStratum(catalog("P1", 5), 4)))
    assert mixed.flags["uniform_ramification_index"] is False


@given(st.sampled_from(PRESETS), st.sampled_from([(2, 2, 3), (2, 2, 5), (3, 3, 2), (3, 3, 4)]), st.integers(-1, 1))
def test_order_coefficients_count_ideals(kind, deq, trace):
    d, e, q = deq
    spec = nc_plane_preset(kind, d, e, q, trace=trace)
    s = order_zeta(spec, 6)
    assert s.is_integral() and min(s.coefficients()) >= 0
    assert s == order_zeta_from_counts(spec, 6)
