import itertools

import pytest

from ssgenus2.covers import build_cover
from ssgenus2.genus2 import invariant_I
from ssgenus2.gf3_arith import make_field
from ssgenus2.moduli import (TwoTorsionModel, eq_invariant, fiber, fiber_count, fiber_polynomial,
                             find_split_fiber, kappa_of_cubic, moduli_map, subgroup_census)

F3, F9, F27, F81 = (make_field(d) for d in (1, 2, 3, 4))


@pytest.mark.parametrize("field", [F9, F27, F81])
def test_invariant_identity(field):
    for c in field.nonzero():
        assert invariant_I(build_cover(field.one, c).curve) == eq_invariant(c)


def test_moduli_map_through_cover_coordinate():
    for b, c in itertools.product(F27.nonzero(), repeat=2):
        T = build_cover(b, c)
        t = c * c / b ** 3
        assert invariant_I(T.curve) == moduli_map(t)
    assert all(moduli_map(c * c) == eq_invariant(c) for c in F27.nonzero())


def test_moduli_map_even_and_zero_locus():
    for t in F81.nonzero():
        assert moduli_map(t) == moduli_map(-t)
        if t ** 4 == -F81.one:
            assert not moduli_map(t)
    for c in F81.nonzero():
        if c ** 8 == -F81.one:
            assert not eq_invariant(c)
    with pytest.raises(ValueError):
        moduli_map(F9.zero)


def test_fiber_polynomial_degree_20_for_all_nonzero():
    for field in (F3, F9, F27, F81):
        for value in field.nonzero():
            P = fiber_polynomial(value)
            assert P.degree == 20 and P.coeff(0)


def test_fiber_points_map_back():
    value = F9.one
    big = make_field(6)
    assert fiber_count(value, big) <= 20
    rep = find_split_fiber()
    assert rep.distinct_roots == 20
    big = make_field(rep.splitting_degree)
    from ssgenus2.gf3_arith import embedding

    emb = embedding(rep.invariant.field, big)
    for t in rep.roots:
        assert moduli_map(t) == emb(rep.invariant)


def test_zero_invariant_fiber():
    rep = fiber(F9.zero)
    # (1 + t^4)^5 = 0 has four distinct roots, each of multiplicity 5
    assert rep.distinct_roots == 4


def test_subgroup_census():
    assert subgroup_census() == (35, 15, 20)


def test_two_torsion_model_structure():
    M = TwoTorsionModel()
    assert len(M.elements) == 16
    nz = list(M.nonzero())
    for a, b in itertools.product(M.elements, repeat=2):
        assert M.add(a, b) in M.elements
        assert M.pairing(a, b) == M.pairing(b, a)
        assert M.add(a, a) == M.zero
    for a in M.elements:
        assert M.pairing(a, a) == 0
    for a in nz:
        assert any(M.pairing(a, b) for b in nz)
    for a, b, c in itertools.product(nz[:6], repeat=3):
        assert M.pairing(M.add(a, b), c) == (M.pairing(a, c) + M.pairing(b, c)) % 2


def test_kappa_is_a_bijection_onto_non_isotropic():
    M = TwoTorsionModel()
    non_iso = {g for g in M.subgroups_of_order_4() if not M.is_isotropic(g)}
    images = {}
    for triple in itertools.combinations(range(1, 7), 3):
        g = kappa_of_cubic(triple, M)
        assert len(g) == 4
        images.setdefault(g, []).append(triple)
    assert set(images) == non_iso and len(images) == 20
    assert all(len(v) == 1 for v in images.values())


def test_kappa_rejects_bad_input():
    with pytest.raises(ValueError):
        kappa_of_cubic((1, 1, 2))
    with pytest.raises(ValueError):
        kappa_of_cubic((1, 2, 7))
