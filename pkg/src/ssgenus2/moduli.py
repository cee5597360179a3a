"""Moduli of the covers C_{b,c} and a combinatorial model of 2-torsion.

A cover is determined up to isomorphism by t = c^2 / b^3, the curve by its
invariant I = J6^5 / J10^3, and forgetting the cover is the rational map
t -> -(1 + t^4)^5 / t^18 of degree 20.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .gf3_arith import Felt, Field, embedding, make_field
from .polynomials import UniPoly, factor_degrees, radical, roots

MAX_DEGREE = 12


def moduli_map(t: Felt) -> Felt:
    if not t:
        raise ValueError("the moduli map is undefined at t = 0")
    return -((1 + t ** 4) ** 5) / t ** 18


def eq_invariant(c: Felt) -> Felt:
    """I of C_{1,c} in closed form: -(1 + c^8)^5 / c^36."""
    if not c:
        raise ValueError("c must be nonzero")
    return -((1 + c ** 8) ** 5) / c ** 36


def fiber_polynomial(value: Felt) -> UniPoly:
    """-(1 + t^4)^5 - I t^18, whose nonzero roots are the t over I."""
    field = value.field
    quartic = UniPoly(field, [1, 0, 0, 0, 1])
    return -(quartic ** 5) - UniPoly.monomial(field, 18, value)


def fiber_count(value: Felt, big: Field) -> int:
    """Distinct nonzero roots of the fiber polynomial in ``big``."""
    P = fiber_polynomial(value).map_coeffs(embedding(value.field, big))
    return sum(1 for r in roots(P) if r)


@dataclass(frozen=True)
class FiberReport:
    invariant: Felt
    distinct_roots: int
    splitting_degree: int
    roots: tuple

    def to_json(self) -> dict:
        return {"I": str(self.invariant), "distinct_roots": self.distinct_roots,
                "splitting_degree": self.splitting_degree,
                "roots": [str(r) for r in self.roots]}


def fiber_splitting_degree(value: Felt) -> int:
    """Absolute degree of the field generated by the fiber over ``value``."""
    rad = radical(fiber_polynomial(value))
    rel = 1
    for k in factor_degrees(rad):
        rel = rel * k // _gcd(rel, k)
    return rel * value.field.degree


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def fiber(value: Felt) -> FiberReport:
    """All t over I, computed in the splitting field of the fiber polynomial."""
    deg = fiber_splitting_degree(value)
    if deg > MAX_DEGREE:
        raise ValueError(f"fiber needs GF(3^{deg}), beyond the supported GF(3^{MAX_DEGREE})")
    big = make_field(deg)
    P = fiber_polynomial(value).map_coeffs(embedding(value.field, big))
    rts = tuple(r for r in roots(P) if r)
    return FiberReport(value, len(rts), deg, rts)


def find_split_fiber(fields=(2, 3, 4)) -> FiberReport:
    """First nonzero I (smallest field, then smallest encoding) whose fiber fits in GF(3^12)."""
    for d in fields:
        F = make_field(d)
        for value in F.nonzero():
            if fiber_splitting_degree(value) <= MAX_DEGREE:
                return fiber(value)
    raise LookupError("no invariant with a small enough fiber field")


# -- combinatorial 2-torsion -------------------------------------------------------------

LABELS = (1, 2, 3, 4, 5, 6)


def _canon(subset) -> frozenset:
    s = frozenset(subset)
    if len(s) % 2:
        raise ValueError("two-torsion classes are even subsets")
    return frozenset(LABELS) - s if 6 in s else s


class TwoTorsionModel:
    """Even subsets of the six Weierstrass labels modulo complement.

    The group law is symmetric difference and the pairing is the parity of
    the intersection.
    """

    def __init__(self):
        evens = []
        for k in (0, 2, 4):
            for combo in itertools.combinations(LABELS[:5], k):
                evens.append(frozenset(combo))
        self.elements = tuple(sorted(evens, key=lambda s: (len(s), sorted(s))))
        self.zero = frozenset()

    def add(self, a: frozenset, b: frozenset) -> frozenset:
        return _canon(a ^ b)

    def pairing(self, a: frozenset, b: frozenset) -> int:
        return len(a & b) % 2

    def element(self, subset) -> frozenset:
        return _canon(subset)

    def nonzero(self) -> Iterator[frozenset]:
        return (e for e in self.elements if e)

    def subgroups_of_order_4(self) -> list[frozenset]:
        seen = set()
        out = []
        nz = list(self.nonzero())
        for a, b in itertools.combinations(nz, 2):
            group = frozenset((self.zero, a, b, self.add(a, b)))
            if group not in seen:
                seen.add(group)
                out.append(group)
        return out

    def is_isotropic(self, group: frozenset) -> bool:
        return all(self.pairing(a, b) == 0 for a in group for b in group)


def subgroup_census(model: TwoTorsionModel | None = None) -> tuple[int, int, int]:
    model = model or TwoTorsionModel()
    groups = model.subgroups_of_order_4()
    iso = sum(1 for g in groups if model.is_isotropic(g))
    return len(groups), iso, len(groups) - iso


def kappa_of_cubic(labels, model: TwoTorsionModel | None = None) -> frozenset:
    """The subgroup spanned by differences of the Weierstrass points in a 3-subset."""
    labels = tuple(labels)
    if len(set(labels)) != 3 or not set(labels) <= set(LABELS):
        raise ValueError("need three distinct labels from 1..6")
    model = model or TwoTorsionModel()
    i, j, k = labels
    return frozenset((model.zero, model.element({i, j}), model.element({i, k}), model.element({j, k})))
