"""Verification suites: each returns {suite, checks: [{name, pass, counterexample}], pass}."""

from __future__ import annotations

import itertools
from typing import Callable

from .census import (base_change_consistent, class_census, construct_curve_with_weil,
                     lemma_ssas_list, theorem1_list, weil_census)
from .covers import build_cover, ramification_points, splitting_check
from .elliptic import (PredictionMismatch, all_curves, aut_order_rational, classify_twist,
                       ell_weil, verify_endo_relations)
from .genus2 import CurveError, invariant_I
from .gf3_arith import make_field
from .moduli import (TwoTorsionModel, eq_invariant, fiber_polynomial, find_split_fiber,
                     kappa_of_cubic, subgroup_census)
from .psl2_lemmas import (HAT_EVEN_CASES, build_F, check_invariance, check_non_mobius_fails,
                          check_separability, hat_rabbit_even, hat_rabbit_even_bis, hat_rabbit_odd,
                          psl2_order, psl2_order_census, rho_orders, twisted_conjugacy_check)

SUITES = ("tables", "covers", "moduli", "psl2", "census")


def _check(name: str, passed: bool, counterexample=None) -> dict:
    return {"name": name, "pass": bool(passed), "counterexample": None if passed else counterexample}


def _first_failure(items, test: Callable) -> str | None:
    for item in items:
        try:
            if not test(item):
                return str(item)
        except (PredictionMismatch, AssertionError) as exc:
            text = str(exc)
            return text if str(item) in text else f"{item}: {text}"
    return None


# -- suites --------------------------------------------------------------------------------

def suite_tables() -> list[dict]:
    checks = []
    for d in (1, 2, 3, 4):
        F = make_field(d)

        def conforms(E):
            ell_weil(E)
            return aut_order_rational(E) == classify_twist(E).predicted_aut

        bad = _first_failure(all_curves(F), conforms)
        checks.append(_check(f"twist_table_q{F.q}", bad is None, bad))
    for d in (2, 4):
        F = make_field(d)
        checks.append(_check(f"endomorphism_relations_q{F.q}", verify_endo_relations(F), F.name))
    return checks


def _covers_of(F):
    for b in F.nonzero():
        for c in F.nonzero():
            try:
                yield build_cover(b, c)
            except CurveError:
                continue


def suite_covers() -> list[dict]:
    checks = []
    for d in (2, 3):
        F = make_field(d)
        bad = _first_failure(_covers_of(F), splitting_check)
        checks.append(_check(f"jacobian_splitting_q{F.q}", bad is None, bad))

    def ramified_only_over_zero(T):
        ram = ramification_points(T)
        return sorted(ram.values()) == [2, 2] and all(P is not None and not P[0] for P in ram)

    for d in (1, 2):
        F = make_field(d)
        bad = _first_failure(_covers_of(F), ramified_only_over_zero)
        checks.append(_check(f"ramification_q{F.q}", bad is None, bad))
    return checks


def suite_moduli() -> list[dict]:
    checks = []
    for d in (2, 3, 4):
        F = make_field(d)
        bad = _first_failure(F.nonzero(), lambda c: invariant_I(build_cover(F.one, c).curve) == eq_invariant(c))
        checks.append(_check(f"invariant_identity_q{F.q}", bad is None, bad))
    F9 = make_field(2)
    bad = _first_failure(F9.nonzero(), lambda v: fiber_polynomial(v).degree == 20)
    checks.append(_check("fiber_degree_20_q9", bad is None, bad))
    report = find_split_fiber()
    checks.append(_check("fiber_20_distinct_roots", report.distinct_roots == 20, str(report.invariant)))
    checks.append(_check("subgroup_census", subgroup_census() == (35, 15, 20), str(subgroup_census())))
    model = TwoTorsionModel()
    # 20 three-subsets, 20 non-isotropic subgroups: equal image sets of size 20 means a bijection
    images = {kappa_of_cubic(t, model) for t in itertools.combinations(range(1, 7), 3)}
    non_iso = {g for g in model.subgroups_of_order_4() if not model.is_isotropic(g)}
    checks.append(_check("kappa_bijection", images == non_iso and len(images) == 20,
                         f"{len(images)} images"))
    return checks


def suite_psl2() -> list[dict]:
    checks = []
    for r in (3, 9):
        checks.append(_check(f"F_degree_r{r}", build_F(r).degree == psl2_order(r), build_F(r).degree))
        checks.append(_check(f"F_invariance_r{r}", check_invariance(r), r))
        census = psl2_order_census(r)
        checks.append(_check(f"no_order_6_r{r}", 6 not in census and sum(census.values()) == psl2_order(r),
                             census))
    checks.append(_check("non_mobius_control", check_non_mobius_fails(3)))
    F9 = make_field(2)
    bad = _first_failure(F9.nonzero(), lambda e: check_separability(3, e))
    checks.append(_check("separability_r3_F9", bad is None, bad))
    bad = _first_failure(F9.nonzero(), lambda e: check_separability(9, e))
    checks.append(_check("separability_r9_F9", bad is None, bad))
    for r, q in HAT_EVEN_CASES:
        res = hat_rabbit_even(r, q)
        checks.append(_check(res.name, res.passed and res.qualifying > 0, res.counterexample))
        res = hat_rabbit_even_bis(r, q)
        checks.append(_check(res.name, res.passed and res.qualifying > 0, res.counterexample))
    res = hat_rabbit_even_bis(3, 9, negative_control=True)
    checks.append(_check(res.name, res.passed, res.counterexample))
    for q in (3, 27):
        res = hat_rabbit_odd(q)
        checks.append(_check(res.name, res.passed and res.qualifying > 0, res.counterexample))
    checks.append(_check("rho_order_3", rho_orders() == [3, 3, 3, 3], rho_orders()))
    res = twisted_conjugacy_check()
    checks.append(_check(res.name, res.passed, res.counterexample))
    return checks


def suite_census(include_81: bool = False) -> list[dict]:
    checks = []
    for q in (3, 9, 27):
        report = weil_census(q)
        checks.append(_check(f"census_equals_theorem_q{q}", report.passed,
                             sorted((w.s1, w.s2) for w in report.observed ^ report.expected)))
        excluded = lemma_ssas_list(q) - theorem1_list(q)
        hit = excluded & report.observed
        checks.append(_check(f"exclusions_absent_q{q}", not hit and bool(excluded),
                             sorted((w.s1, w.s2) for w in hit)))
        bad = _first_failure(sorted(theorem1_list(q), key=lambda w: (w.s1, w.s2)),
                             lambda w: construct_curve_with_weil(q, w) is not None)
        checks.append(_check(f"constructions_q{q}", bad is None, bad))
        if q <= 9:
            bad = _first_failure(report.witnesses.values(), base_change_consistent)
            checks.append(_check(f"base_change_q{q}", bad is None, bad))
        twisted = {(-w.s1, w.s2) for w in report.observed}
        checks.append(_check(f"twist_closure_q{q}", twisted == {(w.s1, w.s2) for w in report.observed}))
    for q in (9, 27):
        same = class_census(q).observed == weil_census(q).observed
        checks.append(_check(f"class_census_matches_q{q}", same))
    if include_81:
        report = class_census(81)
        checks.append(_check("class_census_q81", report.passed,
                             sorted((w.s1, w.s2) for w in report.observed ^ report.expected)))
    return checks


_RUNNERS = {
    "tables": suite_tables,
    "covers": suite_covers,
    "moduli": suite_moduli,
    "psl2": suite_psl2,
    "census": suite_census,
}


def run_suite(name: str, include_81: bool = False) -> dict:
    if name == "all":
        parts = [run_suite(s, include_81) for s in SUITES]
        checks = [dict(c, name=f"{p['suite']}.{c['name']}") for p in parts for c in p["checks"]]
        return {"suite": "all", "checks": checks, "pass": all(c["pass"] for c in checks)}
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    checks = _RUNNERS[name](include_81) if name == "census" else _RUNNERS[name]()
    return {"suite": name, "checks": checks, "pass": all(c["pass"] for c in checks)}
