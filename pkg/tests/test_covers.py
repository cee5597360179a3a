import itertools

import pytest

from ssgenus2.covers import (CurveInfinity, branch_discriminant, build_cover, cover_cubics, curve_points,
                             fiber_census, fibers_over_zero, phi_eval, phi_prime_eval, ramification_points,
                             reduce_cubic_split_to_cover, rescale_cover, splitting_check, table3_classify,
                             verify_cubic_split)
from ssgenus2.elliptic import ell_count, ell_trace, weil_product
from ssgenus2.genus2 import CurveError, Genus2Curve, WeilQuartic, invariant_I, point_counts, weil_quartic
from ssgenus2.gf3_arith import Felt, abs_trace, chi4, make_field
from ssgenus2.polynomials import UniPoly, cubic_factor_pairs, mobius_homogenize

F3, F9, F27, F81 = (make_field(d) for d in (1, 2, 3, 4))


def all_covers(field):
    for b, c in itertools.product(field.nonzero(), repeat=2):
        try:
            yield build_cover(b, c)
        except CurveError:
            continue


def test_cover_sextic_formula():
    b, c = F3.one, F3.one
    T = build_cover(b, c)
    v = UniPoly.x(F3)
    g1 = v ** 3 - v ** 2 * b - v * b * b + UniPoly(F3, [b ** 3 - c * c])
    g2 = v ** 3 + v ** 2 * b - v * b * b + UniPoly(F3, [-b ** 3 - c * c])
    assert T.curve.sextic == (g1 * g2).scale(c)
    assert cover_cubics(b, c) == (g1, g2)


def test_cotarget_is_target_of_negated_b():
    for T in all_covers(F9):
        assert T.cotarget == build_cover(-T.b, T.c).target


def test_rescale():
    T = build_cover(F9.one, F9.one)
    assert rescale_cover(T, F9.one).curve == T.curve
    assert rescale_cover(T, -F9.one).curve == T.curve
    for r in F9.nonzero():
        R = rescale_cover(T, r)
        assert R.moduli_coordinate == T.moduli_coordinate
        assert point_counts(R.curve) == point_counts(T.curve)


@pytest.mark.parametrize("field", [F9, F27])
def test_splitting_exhaustive(field):
    n = 0
    for T in all_covers(field):
        assert splitting_check(T)
        n += 1
    assert n == (field.q - 1) ** 2


def test_trace_zero_c_gives_square_of_x2_plus_q():
    c0 = next(c for c in F27.nonzero() if abs_trace(c) == 0)
    T = build_cover(F27.one, c0)
    assert weil_quartic(T.curve) == WeilQuartic(0, 54, 27)


def test_phi_lands_on_targets():
    T = build_cover(F27.one, F27.one)
    for P in curve_points(T):
        image = phi_eval(T, P)
        assert T.target.is_on(image)
        assert T.cotarget.is_on(phi_prime_eval(T, P))


def test_fiber_census_over_extension():
    T = build_cover(F27.one, F27.one)
    big = make_field(6)
    census = fiber_census(T, big)
    assert max(census.values()) <= 3
    # every rational point of E has a 3-point geometric fiber unless ramified
    assert sum(census.values()) == len(curve_points(T, big))


def test_fiber_total_equals_three_over_points_with_full_fibers():
    T = build_cover(F9.one, F9.one)
    big = make_field(6)
    census = fiber_census(T, big)
    assert sum(1 for v in census.values() if v == 3) > 0
    assert all(v in (1, 2, 3) for v in census.values())


def test_infinite_points_map_to_x_zero():
    T = build_cover(F9.one, F9.one)
    s = F9.one
    assert phi_eval(T, CurveInfinity(s)) == (F9.zero, -s)


def test_ramification_only_over_zero():
    for field in (F3, F9):
        for T in all_covers(field):
            ram = ramification_points(T)
            assert sorted(ram.values()) == [2, 2]
            assert all(not P[0] for P in ram)
            assert fibers_over_zero(T)


def test_branch_discriminant_roots_are_torsion_or_zero():
    T = build_cover(F9.one, Felt(F9, 5))
    D = branch_discriminant(T)
    tors = UniPoly(F9, [T.c, -T.b, 0, 1])
    rest = D
    while not rest.coeff(0):
        rest = UniPoly(F9, rest.coeffs[1:])
    while rest.degree > 0:
        rest, rem = rest.divmod(tors)
        assert rem.is_zero()


def test_table3_against_counts_f9():
    for T in all_covers(F9):
        s, t = table3_classify(T.b, T.c)
        assert sorted((s, t)) == sorted((ell_trace(T.target), ell_trace(T.cotarget)))


def test_table3_against_counts_f81_sample():
    for T in itertools.islice(all_covers(F81), 0, None, 97):
        s, t = table3_classify(T.b, T.c)
        assert sorted((s, t)) == sorted((ell_trace(T.target), ell_trace(T.cotarget)))


def test_table3_rows():
    for b in F9.nonzero():
        if chi4(b) in (1j, -1j):
            assert table3_classify(b, F9.one) == (0, 0)


def test_table3_zero_trace_row():
    # c / sqrt(b)^3 with zero trace to F_9: over F_9 itself that means c = 0, so use F_81
    for c in F81.nonzero():
        from ssgenus2.gf3_arith import rel_trace

        if not rel_trace(c, F9):
            assert table3_classify(F81.one, c) == (18, 18)
            assert weil_quartic(build_cover(F81.one, c).curve) == WeilQuartic(*weil_product(18, 18, 81), 81)
            break


def _moved_cover(u, c, mat, twist):
    """C_{u,c} moved by a Mobius transformation and a twist, with its cubic factors."""
    g1, g2 = cover_cubics(u, c)
    a, b, cc, d = mat
    h1, h2 = mobius_homogenize(g1, a, b, cc, d, 3), mobius_homogenize(g2, a, b, cc, d, 3)
    f = (h1 * h2).scale(c)
    return Genus2Curve(twist, f), h1.monic(), h2.monic()


def test_cubic_split_on_cover():
    T = build_cover(F9.one, F9.one)
    g1, g2 = cover_cubics(F9.one, F9.one)
    res = reduce_cubic_split_to_cover(T.curve, g1, g2)
    assert not res.twist_flag
    assert invariant_I(build_cover(res.u, res.c).curve) == invariant_I(T.curve)
    assert res.t == res.w + res.u ** 3 * (res.v ** 2 - res.v)
    assert verify_cubic_split(T.curve, res)


def test_cubic_split_moved_and_twisted():
    one, zero = F9.one, F9.zero
    for u, c in [(one, one), (Felt(F9, 5), Felt(F9, 2)), (Felt(F9, 3), Felt(F9, 7))]:
        try:
            build_cover(u, c)
        except CurveError:
            continue
        for mat in [(one, Felt(F9, 4), zero, one), (zero, one, one, Felt(F9, 2))]:
            for twist in (one, F9.nonsquare):
                C, h1, h2 = _moved_cover(u, c, mat, twist)
                if C.sextic.degree != 6:
                    continue
                lc = C.sextic.lc
                assert (h1 * h2).scale(lc) == C.sextic
                res = reduce_cubic_split_to_cover(C, h1, h2)
                assert verify_cubic_split(C, res)
                assert invariant_I(build_cover(res.u, res.c).curve) == invariant_I(C)


def test_cubic_split_on_census_curves():
    """Reduced forms over F_9 with a rational cubic pair pass the N2 check."""
    checked = 0
    for c3, c1, c0 in itertools.product(range(0, 9, 2), range(1, 9, 2), range(0, 9, 3)):
        f = UniPoly.from_encodings(F9, (c0, c1, 0, c3, 0, 0, 1))
        C = Genus2Curve(F9.one, f)
        for lc, g1, g2 in cubic_factor_pairs(f, F9):
            try:
                res = reduce_cubic_split_to_cover(C, g1, g2)
            except CurveError:
                continue
            assert verify_cubic_split(C, res)
            checked += 1
    assert checked > 0


def test_counts_of_elliptic_targets_consistent():
    T = build_cover(F9.one, F9.one)
    n1, _ = point_counts(T.curve)
    q = 9
    t1, t2 = ell_trace(T.target), ell_trace(T.cotarget)
    assert n1 == q + 1 - (t1 + t2)
    assert ell_count(T.target) == q + 1 - t1
