import time

import pytest

from ssgenus2.gf3_arith import embedding, frobenius, make_field, rel_trace
from ssgenus2.polynomials import UniPoly
from ssgenus2.psl2_lemmas import (PSL2Element, RationalFn, _lemma_value, _substitution_identity, bis_polynomial,
                                  build_F, check_invariance, check_non_mobius_fails, check_separability,
                                  fiber_polynomial, generators, hat_rabbit_even, hat_rabbit_even_bis,
                                  hat_rabbit_odd, orbit_check, psl2_elements, psl2_order, psl2_order_census,
                                  rho_orders, twisted_conjugacy_check)

F3, F9 = make_field(1), make_field(2)


@pytest.mark.parametrize("r,deg,num,den", [(3, 12, 12, 9), (9, 360, 360, 324)])
def test_degree(r, deg, num, den):
    F = build_F(r)
    assert F.degree == deg == psl2_order(r)
    assert (F.num.degree, F.den.degree) == (num, den)


@pytest.mark.parametrize("r", [3, 9])
def test_invariance_and_negative_control(r):
    assert check_invariance(r)
    assert check_non_mobius_fails(r)


def test_invariance_under_every_group_element_r3():
    F = build_F(3)
    for g in psl2_elements(3):
        assert _substitution_identity(F, *(F3(v) for v in g.entries))


def test_perturbed_function_is_not_invariant():
    F = build_F(3)
    bad = RationalFn(F.num + UniPoly.x(F3), F.den)
    assert not all(_substitution_identity(bad, *g) for g in generators(3))


def test_pointwise_invariance_over_extension():
    F = build_F(3)
    emb = embedding(F3, make_field(6))
    den = F.den.map_coeffs(emb)
    for z in list(emb.target.elements())[100:140]:
        if not den(z) or not den(z + 1) or not den(-1 / z):
            continue
        assert F(z + 1) == F(z)
        assert F(-1 / z) == F(z)


@pytest.mark.parametrize("r", [3, 9])
def test_separability(r):
    for e in F9.nonzero():
        assert check_separability(r, e)
    assert not check_separability(r, F9.zero)
    assert fiber_polynomial(r, F9.one).degree == psl2_order(r)


def test_order_census():
    assert psl2_order_census(3) == {1: 1, 2: 3, 3: 8}
    assert psl2_order_census(9) == {1: 1, 2: 45, 3: 80, 4: 90, 5: 144}
    assert len(psl2_elements(9)) == 360


def test_group_axioms_r3():
    G = psl2_elements(3)
    e = next(g for g in G if g.is_identity())
    for g in G:
        assert g * g.inverse() == e
        for h in G:
            assert g * h in G


def test_rho_and_twisted_conjugacy():
    assert rho_orders() == [3, 3, 3, 3]
    chk = twisted_conjugacy_check()
    assert chk and chk.qualifying == 240


def test_orbit_check():
    big = make_field(6)
    for z in list(big.elements())[200:205]:
        if z ** 9 != z:
            assert orbit_check(3, z)
    with pytest.raises(ValueError):
        orbit_check(3, big.one)


@pytest.mark.parametrize("r,q,qual", [(3, 9, 8), (3, 27, 26), (9, 81, 400)])
def test_hat_rabbit_even(r, q, qual):
    chk = hat_rabbit_even(r, q)
    assert chk and chk.qualifying == qual


@pytest.mark.parametrize("r,q", [(3, 9), (3, 27)])
def test_hat_rabbit_even_scalar_route(r, q):
    """Same lemma with scalar arithmetic and the library trace."""
    d = {9: 2, 27: 3}[q]
    big = make_field(2 * d)
    sub = make_field(1 if r == 3 else 2)
    qualifying = 0
    for c in big.nonzero():
        if frobenius(c, d) == c:
            continue
        v = _lemma_value(c, r)
        if frobenius(v, d) != v:
            continue
        qualifying += 1
        assert not rel_trace(c, sub)
    assert qualifying == hat_rabbit_even(r, q).qualifying


@pytest.mark.parametrize("r,Q,n", [(3, 9, 2), (3, 27, 8), (9, 81, 8)])
def test_hat_rabbit_even_bis(r, Q, n):
    chk = hat_rabbit_even_bis(r, Q)
    assert chk and chk.checked == n


def test_bis_negative_control():
    chk = hat_rabbit_even_bis(3, 9, negative_control=True)
    assert chk and chk.checked == 6
    assert bis_polynomial(3, F9.one).degree == 4  # (z^2 + 1)^2 - e z^3


def test_hat_rabbit_odd():
    chk = hat_rabbit_odd(27)
    assert chk and chk.qualifying == 54
    assert chk.details == {"+": 18, "-": 36}
    small = hat_rabbit_odd(3)
    assert small and small.qualifying == 6
    with pytest.raises(ValueError):
        hat_rabbit_odd(9)


def test_validation():
    with pytest.raises(ValueError):
        build_F(27)
    with pytest.raises(ValueError):
        hat_rabbit_even(3, 81)
    with pytest.raises(ValueError):
        PSL2Element.make(F3, 1, 1, 1, 1)


def test_suite_runtime():
    start = time.perf_counter()
    for r in (3, 9):
        assert check_invariance(r)
        for e in F9.nonzero():
            assert check_separability(r, e)
        assert 6 not in psl2_order_census(r)
    for r, q in ((3, 9), (3, 27), (9, 81)):
        assert hat_rabbit_even(r, q)
    for r, Q in ((3, 9), (3, 27)):
        assert hat_rabbit_even_bis(r, Q)
    assert hat_rabbit_odd(27)
    assert time.perf_counter() - start < 60
