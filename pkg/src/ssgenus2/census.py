"""Census of Weil polynomials of supersingular genus-2 curves over F_q.

Every supersingular curve can be written d*y^2 = x^6 + c3 x^3 + c1 x + c0
with c1 != 0, so sweeping (d mod squares, c3, c1, c0) and counting points
over F_q and F_{q^2} yields every Weil polynomial that occurs.  The point
counting is vectorized: for fixed (c3, c1) the values of x^6 + c3 x^3 + c1 x
are computed once and every c0 is handled by a single broadcast add.

The census is compared with the list of polynomials the classification
theorem predicts, and each predicted polynomial also gets an explicit,
count-verified witness curve built by the recipe for its family.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .covers import build_cover, table3_classify
from .elliptic import WeilQuadratic, weil_product
from .genus2 import (CurveError, Genus2Curve, WeilQuartic, count_points, curve_from_invariant,
                     log3, weil_from_counts, weil_quartic)
from .gf3_arith import Felt, Field, abs_trace, embedding, make_field
from .polynomials import UniPoly, is_irreducible


class CensusError(AssertionError):
    """The census produced a polynomial outside the abelian-surface list."""


# -- predicted lists ----------------------------------------------------------------------

def _wq(pairs, q: int) -> frozenset:
    return frozenset(WeilQuartic(s1, s2, q) for s1, s2 in pairs)


@lru_cache(maxsize=None)
def theorem1_list(q: int) -> frozenset:
    """Weil quartics of supersingular genus-2 curves over F_q, as (s1, s2, q)."""
    d = log3(q)
    if d % 2:
        r = 3 ** ((d + 1) // 2)  # sqrt(3q)
        pairs = [(r, 2 * q), (-r, 2 * q), (0, 0), (0, q)]
        if q > 3:
            pairs += [(0, 2 * q), (0, -2 * q)]
        return _wq(pairs, q)
    s = 3 ** (d // 2)  # sqrt(q)
    pairs = []
    for e in (s, -s):
        pairs.append(weil_product(2 * e, -e, q))
        pairs.append(weil_product(e, e, q))
        if q > 9:
            pairs.append(weil_product(2 * e, 2 * e, q))
        pairs.append((e, q))
    pairs.append(weil_product(0, 0, q))
    pairs.append((0, 0))
    return _wq(pairs, q)


@lru_cache(maxsize=None)
def lemma_ssas_list(q: int) -> frozenset:
    """Weil quartics of all supersingular abelian surfaces over F_q."""
    d = log3(q)
    if d % 2:
        r = 3 ** ((d + 1) // 2)
        traces = (0, r, -r)
        extra = [(0, 0), (0, q), (0, -2 * q)]
    else:
        s = 3 ** (d // 2)
        traces = (0, s, -s, 2 * s, -2 * s)
        extra = [(0, 0), (0, -q), (s, q), (-s, q)]
    pairs = {weil_product(a, b, q) for a in traces for b in traces}
    return _wq(list(pairs) + extra, q)


def res_scalars_weil(w: WeilQuadratic) -> WeilQuartic:
    """x^2 - t x + q^2 over F_{q^2} becomes x^4 - t x^2 + q^2 over F_q."""
    q = math.isqrt(w.q)
    if q * q != w.q:
        raise ValueError(f"{w.q} is not the square of a field size")
    log3(q)
    return WeilQuartic(0, -w.t, q)


# -- the census ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    q: int
    observed: frozenset
    expected: frozenset
    witnesses: dict = dc_field(default_factory=dict)
    curves_scanned: int = 0
    method: str = "reduced-forms"

    @property
    def passed(self) -> bool:
        return self.observed == self.expected

    def to_json(self) -> dict:
        def key(w):
            return (w.s1, w.s2)

        return {
            "q": self.q,
            "observed": [w.to_json() for w in sorted(self.observed, key=key)],
            "expected": [w.to_json() for w in sorted(self.expected, key=key)],
            "pass": self.passed,
            "witnesses": {f"{w.s1},{w.s2}": self.witnesses[w].to_json()
                          for w in sorted(self.witnesses, key=key)},
            "curves_scanned": self.curves_scanned,
            "method": self.method,
        }

    def to_csv(self) -> str:
        rows = ["s1,s2,q,in_observed,in_expected,witness_twist,witness_f"]
        for w in sorted(self.observed | self.expected, key=lambda w: (w.s1, w.s2)):
            wit = self.witnesses.get(w)
            rows.append(",".join([
                str(w.s1), str(w.s2), str(w.q),
                str(int(w in self.observed)), str(int(w in self.expected)),
                str(wit.twist) if wit else "", f'"{wit.sextic}"' if wit else "",
            ]))
        return "\n".join(rows) + "\n"


def _reduced_curve(field: Field, d: int, c3: int, c1: int, c0: int) -> Genus2Curve:
    f = UniPoly.from_encodings(field, (c0, c1, 0, c3, 0, 0, 1))
    return Genus2Curve(Felt(field, d), f)


def _census_chunk(degree: int, c3_values: list[int]) -> tuple[dict, int]:
    """Weil quartics for all forms with c3 in ``c3_values``; maps quartic -> first form."""
    F = make_field(degree)
    q = F.q
    big = make_field(2 * degree)
    Q = big.q
    emb = embedding(F, big)
    n = F.nonsquare.value
    xs = np.arange(q, dtype=np.int64)
    x3, x6 = F.vpow(xs, 3), F.vpow(xs, 6)
    Xs = np.arange(Q, dtype=np.int64)
    X3, X6 = big.vpow(Xs, 3), big.vpow(Xs, 6)
    c0s = np.arange(q, dtype=np.int64)
    c0s_big = emb.table[c0s]
    found: dict = {}
    scanned = 0
    for c3 in c3_values:
        base = F.vadd(x6, F.vmul(x3, c3))
        base_big = big.vadd(X6, big.vmul(X3, emb.code(c3)))
        for c1 in range(1, q):
            u = F.vadd(base, F.vmul(xs, c1))
            s1 = F.vchi2(F.vadd(u[None, :], c0s[:, None])).sum(axis=1, dtype=np.int64)
            U = big.vadd(base_big, big.vmul(Xs, emb.code(c1)))
            s2 = big.vchi2(big.vadd(U[None, :], c0s_big[:, None])).sum(axis=1, dtype=np.int64)
            n2s = Q + 2 + s2
            for sign, d in ((1, 1), (-1, n)):
                n1s = q + 1 + sign * (s1 + 1)
                for c0 in range(q):
                    w = weil_from_counts(int(n1s[c0]), int(n2s[c0]), q)
                    key = (0 if d == 1 else 1, c3, c1, c0)
                    if w not in found or key < found[w]:
                        found[w] = key
                scanned += q
    return found, scanned


def weil_census(q: int, parallel: bool = False, jobs: int = 1, allow_large: bool = False) -> CensusReport:
    """Exhaustive census over all reduced forms d*y^2 = x^6 + c3 x^3 + c1 x + c0."""
    degree = log3(q)
    if q > 27 and not allow_large:
        raise ValueError("the exhaustive census is limited to q <= 27; use the class-based census")
    F = make_field(degree)
    c3_all = list(range(q))
    jobs = max(1, jobs if parallel else 1)
    found: dict = {}
    scanned = 0
    if jobs == 1:
        parts = [_census_chunk(degree, c3_all)]
    else:
        chunks = [c3_all[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_census_chunk, [degree] * jobs, chunks))
    for part, count in parts:
        scanned += count
        for w, key in part.items():
            if w not in found or key < found[w]:
                found[w] = key
    observed = frozenset(found)
    allowed = lemma_ssas_list(q)
    if not observed <= allowed:
        raise CensusError(f"census produced non-supersingular quartics: {sorted(observed - allowed)}")
    n = F.nonsquare.value
    witnesses = {w: _reduced_curve(F, 1 if key[0] == 0 else n, key[1], key[2], key[3])
                 for w, key in found.items()}
    return CensusReport(q, observed, theorem1_list(q), witnesses, scanned)


def class_census(q: int) -> CensusReport:
    """Census over one curve per geometric class and its twists.

    I != 0: the standard curve with invariant I and its quadratic twist.
    I = 0: every d*y^2 = x^5 + e with d in {1, nonsquare} and e != 0.
    """
    F = make_field(log3(q))
    curves = []
    for value in F.nonzero():
        C = curve_from_invariant(value)
        curves += [C, C.quadratic_twist()]
    quintic_tail = [UniPoly(F, [e, 0, 0, 0, 0, 1]) for e in F.nonzero()]
    for d in (F.one, F.nonsquare):
        curves += [Genus2Curve(d, f) for f in quintic_tail]
    found: dict = {}
    for C in curves:
        w = weil_quartic(C)
        found.setdefault(w, C)
    observed = frozenset(found)
    allowed = lemma_ssas_list(q)
    if not observed <= allowed:
        raise CensusError(f"census produced non-supersingular quartics: {sorted(observed - allowed)}")
    return CensusReport(q, observed, theorem1_list(q), found, len(curves), method="classes")


# -- explicit witnesses -----------------------------------------------------------------------

class ConstructionError(AssertionError):
    """A recipe produced a curve whose counted Weil quartic is not the target."""


def _verified(C: Genus2Curve, target: WeilQuartic) -> Genus2Curve:
    got = weil_quartic(C)
    if got != target:
        raise ConstructionError(f"recipe curve {C!r} has {got}, expected {target}")
    return C


def _first(field: Field, predicate) -> Felt:
    for x in field.nonzero():
        if predicate(x):
            return x
    raise LookupError("no field element satisfies the recipe condition")


def _odd_construction(F: Field, target: WeilQuartic) -> Genus2Curve:
    q, d = F.q, F.degree
    unit = (-3) ** ((d + 1) // 2)
    one = F.one
    if target.s1 != 0:
        want = 1 if target.s1 == unit else 2
        c = _first(F, lambda x: abs_trace(x) == want)
        return build_cover(one, c).curve
    if target.s2 == 2 * q:
        c = _first(F, lambda x: abs_trace(x) == 0)
        return build_cover(one, c).curve
    if target.s2 == 0:
        return Genus2Curve(one, UniPoly(F, [1, 0, 0, 0, 0, 1]))
    if target.s2 == q:
        a = _first(F, lambda x: abs_trace(x) != 0)
    else:
        a = _first(F, lambda x: abs_trace(x) == 0)
    return Genus2Curve(one, UniPoly(F, [a ** 4 + 1, a * a, 0, a * a, 0, 0, 1]))


def _even_construction(F: Field, target: WeilQuartic) -> Genus2Curve:
    q = F.q
    s = 3 ** (F.degree // 2)
    one = F.one
    if (target.s1, target.s2) == (0, 0):
        a = F.nonsquare
        return Genus2Curve(one, UniPoly(F, [a ** 3 + 1, a, 0, 1, 0, 0, 1]))
    if target.s2 == q and abs(target.s1) == s:
        c = _first(F, lambda x: is_irreducible(UniPoly(F, [-x, 0, -1, 0, 0, 1])))
        C = Genus2Curve(one, UniPoly(F, [0, -c, 0, -1, 0, 0, 1]))
        return C if weil_quartic(C) == target else C.quadratic_twist()
    for b in F.nonzero():
        for c in F.nonzero():
            st = table3_classify(b, c)
            if weil_product(st[0], st[1], q) == (target.s1, target.s2):
                try:
                    return build_cover(b, c).curve
                except CurveError:
                    continue
    raise LookupError(f"no cover C_(b,c) over {F.name} with {target}")


def construct_curve_with_weil(q: int, target: WeilQuartic) -> Genus2Curve:
    """An explicit curve over F_q with Weil quartic ``target``, verified by counting."""
    if target.q != q:
        raise ValueError("target quartic is over a different field")
    if target not in theorem1_list(q):
        raise ValueError(f"{target} is not the Weil polynomial of a supersingular genus-2 curve over F_{q}")
    F = make_field(log3(q))
    C = _odd_construction(F, target) if F.degree % 2 else _even_construction(F, target)
    return _verified(C, target)


def base_change_consistent(C: Genus2Curve) -> bool:
    """Recount over F_{q^2} and F_{q^4} and compare with the squared-eigenvalue quartic."""
    base = C.field
    w = weil_quartic(C)
    n2 = count_points(C, embedding(base, make_field(2 * base.degree)))
    n4 = count_points(C, embedding(base, make_field(4 * base.degree)))
    return weil_from_counts(n2, n4, base.q ** 2) == w.base_change()
