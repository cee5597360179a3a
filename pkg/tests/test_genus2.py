import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ssgenus2.census import lemma_ssas_list
from ssgenus2.genus2 import (CurveError, Genus2Curve, IgusaVector, ReducedSSForm, WeilQuartic,
                             count_points, curve_from_invariant, geometric_aut_order, igusa_invariants,
                             igusa_reduced, invariant_I, is_supersingular_weil, point_counts,
                             reduce_to_standard_form, sextic_model, weil_from_counts, weil_quartic,
                             yui_is_supersingular)
from ssgenus2.gf3_arith import Felt, embedding, make_field
from ssgenus2.polynomials import UniPoly, is_separable

F3, F9, F27 = make_field(1), make_field(2), make_field(3)


def naive_count(curve, big):
    """Affine points by a square table plus points at infinity, all scalar arithmetic."""
    emb = embedding(curve.field, big)
    d = emb(curve.twist)
    coeffs = [emb(c) for c in curve.sextic.coeffs]
    squares = {x * x for x in big.elements()}
    total = 0
    for x in big.elements():
        v = big.zero
        for c in reversed(coeffs):
            v = v * x + c
        rhs = v / d
        if not rhs:
            total += 1
        elif rhs in squares:
            total += 2
    if curve.sextic.degree == 5:
        return total + 1
    lead = coeffs[-1] / d
    return total + (2 if lead in squares else 0)


def curve(field, codes, twist=1):
    return Genus2Curve(Felt(field, twist), UniPoly.from_encodings(field, codes))


X5_MINUS_X = curve(F3, (0, 2, 0, 0, 0, 1))
X5_PLUS_1 = curve(F3, (1, 0, 0, 0, 0, 1))


def test_spot_counts_and_weil():
    assert point_counts(X5_MINUS_X) == (4, 6)
    assert weil_quartic(X5_MINUS_X) == WeilQuartic(0, -2, 3)
    assert point_counts(X5_PLUS_1) == (4, 10)
    assert weil_quartic(X5_PLUS_1) == WeilQuartic(0, 0, 3)


def test_weil_from_counts_examples():
    assert weil_from_counts(4, 6, 3) == WeilQuartic(0, -2, 3)
    assert weil_from_counts(4, 16, 3) == WeilQuartic(0, 3, 3)
    assert weil_from_counts(28, 730, 27) == WeilQuartic(0, 0, 27)
    with pytest.raises(CurveError):
        weil_from_counts(4, 7, 3)


def test_supersingular_weil_membership():
    assert is_supersingular_weil(WeilQuartic(0, 0, 3))
    assert not is_supersingular_weil(WeilQuartic(0, -2, 3))
    assert is_supersingular_weil(WeilQuartic(0, 6, 3))


@pytest.mark.parametrize("field", [F3, F9])
def test_counts_match_naive_oracle(field):
    big = make_field(2 * field.degree)
    for c3, c1, c0 in itertools.islice(itertools.product(range(field.q), range(1, field.q), range(field.q)), 0, None, 7):
        for twist in (1, field.nonsquare.value):
            C = curve(field, (c0, c1, 0, c3, 0, 0, 1), twist)
            assert count_points(C) == naive_count(C, field)
            assert count_points(C, embedding(field, big)) == naive_count(C, big)


def test_counts_quintic_model_naive():
    for codes in [(1, 0, 0, 0, 0, 1), (0, 2, 0, 0, 0, 1), (2, 1, 0, 1, 0, 1)]:
        C = curve(F9, codes)
        if is_separable(C.sextic):
            assert count_points(C) == naive_count(C, F9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(1, 8), st.integers(0, 8))
def test_twist_negates_trace(c3, c1, c0):
    C = curve(F9, (c0, c1, 0, c3, 0, 0, 1))
    T = C.quadratic_twist()
    n1, n2 = point_counts(C)
    m1, m2 = point_counts(T)
    assert m1 == 2 * (F9.q + 1) - n1 and m2 == n2
    w, wt = weil_quartic(C), weil_quartic(T)
    assert (wt.s1, wt.s2) == (-w.s1, w.s2)
    assert w.within_weil_bounds()


def test_yui_agrees_with_weil_over_f3():
    """Every separable sextic or quintic over F_3: Yui's criterion iff a supersingular Weil quartic."""
    for codes in itertools.product(range(3), repeat=6):
        for lead in (0, 1):
            full = list(codes) + [lead]
            f = UniPoly(F3, full)
            if f.degree not in (5, 6) or not is_separable(f):
                continue
            C = Genus2Curve(F3.one, f)
            assert yui_is_supersingular(C) == (weil_quartic(C) in lemma_ssas_list(3))


def test_yui_on_reduced_forms_over_f9():
    for c3, c1, c0 in itertools.product(range(9), range(1, 9), range(0, 9, 4)):
        for twist in (1, F9.nonsquare.value):
            C = curve(F9, (c0, c1, 0, c3, 0, 0, 1), twist)
            assert yui_is_supersingular(C)
            assert weil_quartic(C) in lemma_ssas_list(9)


def test_x5_minus_x_is_not_supersingular():
    assert not yui_is_supersingular(X5_MINUS_X)
    assert yui_is_supersingular(X5_PLUS_1)


def test_sextic_model_preserves_counts():
    M = sextic_model(X5_PLUS_1)
    assert M.sextic.degree == 6 and point_counts(M) == point_counts(X5_PLUS_1)
    for c in (1, 2, 5):
        C = Genus2Curve(F9.one, UniPoly(F9, [0, -Felt(F9, c), 0, -1, 0, 0, 1]))
        M = sextic_model(C)
        assert M.sextic.degree == 6 and is_separable(M.sextic)
        assert point_counts(M) == point_counts(C)


def test_igusa_reduced_shape():
    A, B = Felt(F9, 5), Felt(F9, 7)
    iv = igusa_reduced(ReducedSSForm(A, B, A * A, F9.one))
    assert iv.equivalent(IgusaVector(F9.zero, F9.zero, A, F9.zero, B))
    zero = igusa_reduced(ReducedSSForm(F9.zero, B, F9.zero, F9.one))
    assert not zero.J6 and zero.J10 == -(B ** 6)
    lam = Felt(F9, 4)
    scaled = IgusaVector(F9.zero, F9.zero, lam ** 6 * A, F9.zero, lam ** 10 * B)
    assert scaled.equivalent(IgusaVector(F9.zero, F9.zero, A, F9.zero, B))


def test_igusa_relation_j8():
    for codes in [(1, 1, 0, 1, 0, 0, 1), (2, 1, 0, 2, 0, 0, 1), (1, 2, 1, 0, 1, 0, 1)]:
        f = UniPoly(F3, codes)
        if not is_separable(f):
            continue
        iv = igusa_invariants(Genus2Curve(F3.one, f))
        assert iv.J8 == iv.J2 * iv.J6 - iv.J4 ** 2
        assert iv.J10


def test_general_igusa_spot_values():
    F = F3
    got = igusa_invariants(X5_MINUS_X)
    want = IgusaVector(F(1), F(0), -F(1), -F(1), -F(1))
    assert got.equivalent(want)
    got = igusa_invariants(X5_PLUS_1)
    assert got.equivalent(IgusaVector(F(0), F(0), F(0), F(0), F(1)))


def test_general_igusa_agrees_with_reduced_formula():
    for c3, c1, c0 in itertools.product(range(3), range(1, 3), range(3)):
        C = curve(F3, (c0, c1, 0, c3, 0, 0, 1))
        assert igusa_invariants(C).equivalent(igusa_reduced(reduce_to_standard_form(C)))


def test_invariant_of_standard_curves():
    for c in F9.nonzero():
        C = Genus2Curve(F9.one, UniPoly(F9, [c ** 4, c ** 3, 0, c ** 2, 0, 0, 1]))
        assert invariant_I(C) == c
    assert invariant_I(X5_PLUS_1) == F3.zero


def test_invariant_is_twist_invariant():
    for c3, c1, c0 in itertools.product(range(9), range(1, 9), range(9)):
        C = curve(F9, (c0, c1, 0, c3, 0, 0, 1))
        assert invariant_I(C) == invariant_I(C.quadratic_twist())


def test_curve_from_invariant_round_trip():
    for value in F27.elements():
        C = curve_from_invariant(value)
        assert invariant_I(C) == value
    assert curve_from_invariant(F3.one).sextic == UniPoly(F3, [1, 1, 0, 1, 0, 0, 1])
    assert curve_from_invariant(F3.zero).sextic == UniPoly(F3, [1, 0, 0, 0, 0, 1])


def test_geometric_aut_order():
    assert geometric_aut_order(X5_PLUS_1) == 10
    C = curve_from_invariant(F3.one)
    assert geometric_aut_order(C) == 2 == geometric_aut_order(C.quadratic_twist())


def test_reduce_to_standard_form():
    form = ReducedSSForm(Felt(F9, 2), Felt(F9, 3), Felt(F9, 4), F9.one)
    back = reduce_to_standard_form(form.curve())
    assert (back.c3, back.c1, back.c0) == (form.c3, form.c1, form.c0)
    from ssgenus2.covers import build_cover

    C = build_cover(F9.one, F9.one).curve
    R = reduce_to_standard_form(C)
    assert R.c1 and point_counts(R.curve()) == point_counts(C)


def test_reduce_supersingular_sextics_with_x5_term():
    """Supersingular sextics x^6 + a5 x^5 + ... over F_9 reduce with the counts intact."""
    seen = 0
    for a5, a3, a0 in itertools.product((1, 5), range(0, 9, 2), range(1, 9, 3)):
        f = UniPoly(F9, [a0, 0, 0, a3, 0, a5, 1])
        if not is_separable(f):
            continue
        C = Genus2Curve(F9.one, f)
        if not yui_is_supersingular(C):
            continue
        R = reduce_to_standard_form(C)
        assert R.c1
        assert point_counts(R.curve()) == point_counts(C)
        seen += 1
    assert seen > 0


def test_rejects_bad_models():
    with pytest.raises(CurveError):
        Genus2Curve(F3.one, UniPoly(F3, [1, 0, 0, 1, 0, 0, 1]))
    with pytest.raises(CurveError):
        Genus2Curve(F3.one, UniPoly(F3, [1, 1, 1]))
    with pytest.raises(CurveError):
        Genus2Curve(F3.zero, UniPoly(F3, [1, 1, 0, 0, 0, 0, 1]))
    with pytest.raises(CurveError):
        reduce_to_standard_form(X5_MINUS_X)


def test_base_change_quartic():
    w = WeilQuartic(3, 6, 3)
    assert w.base_change().point_counts()[0] == w.point_counts()[1]
    C = curve(F3, (1, 1, 0, 1, 0, 0, 1))
    w = weil_quartic(C)
    assert weil_quartic(C.base_change(embedding(F3, F9))) == w.base_change()
