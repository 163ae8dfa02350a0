from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ozeta.hecke import (
    ONE,
    ChiSpec,
    LMonomial,
    LSeries,
    degree_T,
    hey_multivariate,
    multi_param_zeta,
    partial_product,
    rho,
    rho_prime,
    slice_from_hecke,
    xi,
    xi_power_closed_form,
    xi_series,
)
from ozeta.local import LocalOrderShape, slice_zeta

t1 = LMonomial.gen(0, 1)


def xi_power(m, chi, n):
    s = LSeries({m: 1}, 64)
    for _ in range(n):
        s = xi_series(s, chi)
    ((mono, c),) = s.terms.items()
    return c, mono


def test_xi_first_power():
    q = 5
    assert xi(t1, ChiSpec.matrix(q, 1)) == (q, t1 * LMonomial.gen(1, 1))


def test_xi_of_empty_monomial():
    assert xi(ONE, ChiSpec.matrix(3, 2)) == (1, ONE)


def test_xi_squared():
    q = 3
    chi = ChiSpec(1, (q * q,))
    assert xi_power(t1, chi, 2) == (q**4, t1 * LMonomial.gen(1, 1) * LMonomial.gen(2, 1))


@pytest.mark.parametrize("q,r", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_xi_power_closed_form(q, r):
    chi = ChiSpec.matrix(q, r, 2, (2, 1))
    for j in (1, 2):
        for n in range(6):
            assert xi_power(LMonomial.gen(0, j), chi, n) == xi_power_closed_form(j, n, chi)


def test_closed_form_needs_constant_character():
    with pytest.raises(ValueError):
        xi_power_closed_form(1, 2, ChiSpec(2, (2, 3)))


def test_rho():
    assert rho(LSeries({LMonomial.gen(2, 1): 1}, 4), ChiSpec.matrix(2, 1)) == {(1,): 1}
    assert rho(LSeries({LMonomial.gen(1, 1): 1}, 4), ChiSpec.matrix(2, 1, 2, (2, 1))) == {(0, 1): 1}


@pytest.mark.parametrize("q,r,n", [(2, 1, 3), (3, 2, 4), (2, 2, 5)])
def test_rho_prime_of_xi_power(q, r, n):
    chi = ChiSpec.matrix(q, r)
    s = LSeries({t1: 1}, 10)
    for _ in range(n):
        s = xi_series(s, chi)
    got = rho_prime(rho(s, chi), r, 10)
    want = [0] * (r * 10 + 1)
    want[r * (n + 1)] = q ** (r * n)
    assert got.coefficients() == want


def test_chi_spec_validation():
    with pytest.raises(ValueError):
        ChiSpec(2, (2, 2), (1, 1))
    with pytest.raises(ValueError):
        ChiSpec(1, (0,))


def geometric(g, D):
    coeffs = {}

    def rec(prefix, left):
        if len(prefix) == g:
            coeffs[tuple(prefix)] = 1
            return
        for a in range(left + 1):
            rec(prefix + [a], left - a)

    rec([], D)
    return LSeries.from_multivariate(coeffs, D)


def test_partial_product_empty():
    assert partial_product(geometric(1, 5), ChiSpec.matrix(2, 1), 0) == LSeries.one(5)


def test_partial_product_limit_is_slice():
    q, D = 3, 7
    chi = ChiSpec.matrix(q, 1)
    got = rho_prime(rho(partial_product(geometric(1, D), chi, D + 1), chi), 1, D)
    assert got == slice_zeta(LocalOrderShape(q), D)


def test_hey_residue_reproduces_matrix_slice():
    q = 2
    got = rho_prime(multi_param_zeta(ChiSpec.matrix(q, 2), hey_multivariate(q, 2, 1, 4), 4), 2, 4)
    assert got == slice_zeta(LocalOrderShape(q, 2, 1), 8)


def test_two_simples_swapped_are_symmetric():
    D = 6
    chi = ChiSpec.matrix(2, 1, 2, (2, 1))
    Z = multi_param_zeta(chi, geometric(2, D), D)
    assert all(Z.get((b, a), 0) == c for (a, b), c in Z.items())
    assert Z[(1, 1)] > 0


@pytest.mark.parametrize("r,m", [(1, 1), (2, 1), (1, 2), (2, 2)])
@pytest.mark.parametrize("q", [2, 3])
def test_symbolic_product_matches_slice_zeta(q, r, m):
    assert slice_from_hecke(q, r, m, 8) == slice_zeta(LocalOrderShape(q, r, m), 8)


def test_degree_of_T():
    chi = ChiSpec.matrix(2, 1)
    s = geometric(1, 4)
    assert degree_T(1, ONE, s, chi) == xi_series(s, chi)
    nu = LMonomial.gen(0, 1, 2)
    d = degree_T(3, nu, s, chi)
    assert d[nu] == 3 and d[ONE] == 0


monomials = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(1, 2)), st.integers(1, 2), max_size=3
).map(LMonomial)
lseries = st.dictionaries(monomials, st.integers(-3, 3), max_size=4).map(lambda d: LSeries(d, 5))
chis = st.tuples(st.integers(1, 4), st.integers(1, 4), st.sampled_from([(1, 2), (2, 1)])).map(
    lambda t: ChiSpec(2, t[:2], t[2])
)


@given(lseries, lseries, chis)
def test_xi_is_multiplicative(a, b, chi):
    assert xi_series(a * b, chi) == xi_series(a, chi) * xi_series(b, chi)
    assert xi_series(a + b, chi) == xi_series(a, chi) + xi_series(b, chi)


@given(chis, st.integers(0, 5))
def test_partial_products_stabilise(chi, n):
    D = 6
    Z = geometric(2, D)
    diff = partial_product(Z, chi, n + 1, D) - partial_product(Z, chi, n, D)
    assert all(m.degree > n for m, c in diff.terms.items() if c)


def test_from_multivariate():
    s = LSeries.from_multivariate({(0, 0): 1, (1, 2): Fraction(1, 2)}, 3)
    assert s[LMonomial({(0, 1): 1, (0, 2): 2})] == Fraction(1, 2)
