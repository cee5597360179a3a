"""Genus-2 curves d*y^2 = f(x) over GF(3^d).

Point counting, Weil quartics, the Hasse-Witt style supersingularity test
on the coefficients, the reduction of a supersingular sextic to the shape
d*y^2 = x^6 + c3*x^3 + c1*x + c0, Igusa invariants and the scalar
invariant J6^5/J10^3 that classifies supersingular curves geometrically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf3_arith import Embedding, Felt, Field, FieldError, chi2, embedding, make_field
from .polynomials import UniPoly, is_separable


class CurveError(ValueError):
    """Raised for invalid models or inputs outside an operation's domain."""


def log3(q: int) -> int:
    d, n = 0, q
    while n > 1 and n % 3 == 0:
        n //= 3
        d += 1
    if n != 1 or d == 0:
        raise CurveError(f"{q} is not a positive power of 3")
    return d


# -- Weil quartics --------------------------------------------------------------

@dataclass(frozen=True, order=True)
class WeilQuartic:
    """x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2."""

    s1: int
    s2: int
    q: int

    def __post_init__(self):
        log3(self.q)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        """Constant-first integer coefficients."""
        return (self.q * self.q, -self.q * self.s1, self.s2, -self.s1, 1)

    def within_weil_bounds(self) -> bool:
        return self.s1 * self.s1 <= 16 * self.q and abs(self.s2) <= 6 * self.q

    def base_change(self) -> "WeilQuartic":
        """The Weil quartic of the same curve over the quadratic extension."""
        s1, s2, q = self.s1, self.s2, self.q
        return WeilQuartic(s1 * s1 - 2 * s2, s2 * s2 - 2 * q * s1 * s1 + 2 * q * q, q * q)

    def point_counts(self) -> tuple[int, int]:
        """(N1, N2) predicted by the quartic."""
        q, s1, s2 = self.q, self.s1, self.s2
        p2 = s1 * s1 - 2 * s2
        return q + 1 - s1, q * q + 1 - p2

    def to_json(self) -> dict:
        return {"s1": self.s1, "s2": self.s2, "q": self.q}

    def __str__(self) -> str:
        q = self.q
        terms = ["x^4"]
        for coef, mono in ((-self.s1, "x^3"), (self.s2, "x^2"), (-q * self.s1, "x")):
            if coef:
                terms.append(f"{'+' if coef > 0 else '-'} {abs(coef)}{mono}")
        terms.append(f"+ {q * q}")
        return " ".join(terms)


def weil_from_counts(n1: int, n2: int, q: int) -> WeilQuartic:
    s1 = q + 1 - n1
    twice = s1 * s1 + n2 - q * q - 1
    if twice % 2:
        raise CurveError(f"counts N1={n1}, N2={n2} over q={q} give a non-integral s2")
    return WeilQuartic(s1, twice // 2, q)


def is_supersingular_weil(w: WeilQuartic) -> bool:
    from .census import lemma_ssas_list

    return w in lemma_ssas_list(w.q)


# -- curves -----------------------------------------------------------------------

class Genus2Curve:
    """twist * y^2 = sextic(x), with sextic separable of degree 5 or 6."""

    __slots__ = ("twist", "sextic")

    def __init__(self, twist: Felt, sextic: UniPoly):
        if twist.field is not sextic.field:
            raise FieldError("twist and polynomial live in different fields")
        if not twist:
            raise CurveError("twist scalar must be nonzero")
        if sextic.degree not in (5, 6):
            raise CurveError(f"need degree 5 or 6, got {sextic.degree}")
        if not is_separable(sextic):
            raise CurveError("polynomial is not separable; the model is singular")
        self.twist = twist
        self.sextic = sextic

    @property
    def field(self) -> Field:
        return self.sextic.field

    @property
    def q(self) -> int:
        return self.field.q

    def quadratic_twist(self) -> "Genus2Curve":
        return Genus2Curve(self.twist * self.field.nonsquare, self.sextic)

    def base_change(self, emb: Embedding) -> "Genus2Curve":
        return Genus2Curve(emb(self.twist), self.sextic.map_coeffs(emb))

    def to_json(self) -> dict:
        return {"q": self.q, "twist": str(self.twist), "f": str(self.sextic)}

    def __eq__(self, other):
        if not isinstance(other, Genus2Curve):
            return NotImplemented
        return self.twist == other.twist and self.sextic == other.sextic

    def __hash__(self):
        return hash((self.twist, self.sextic))

    def __repr__(self) -> str:
        return f"Genus2Curve(q={self.q}, {self.twist}*y^2 = {self.sextic.pretty()})"


def count_points(curve: Genus2Curve, ext: Embedding | None = None) -> int:
    """Number of points of the smooth model over the target of ``ext``."""
    if ext is None:
        ext = embedding(curve.field, curve.field)
    if ext.source is not curve.field:
        raise FieldError("embedding source is not the curve's field")
    big = ext.target
    f = curve.sextic.map_coeffs(ext)
    d = ext(curve.twist)
    vals = big.vmul(f.evaluate_all(), d.value)
    affine = big.q + int(big.vchi2(vals).sum(dtype=np.int64))
    if f.degree == 5:
        return affine + 1
    return affine + 1 + chi2(d * f.lc)


def point_counts(curve: Genus2Curve) -> tuple[int, int]:
    """(N1, N2): counts over the base field and its quadratic extension."""
    base = curve.field
    return (count_points(curve),
            count_points(curve, embedding(base, make_field(2 * base.degree))))


def weil_quartic(curve: Genus2Curve) -> WeilQuartic:
    n1, n2 = point_counts(curve)
    return weil_from_counts(n1, n2, curve.q)


def _monic_sextic(curve: Genus2Curve) -> UniPoly:
    if curve.sextic.degree != 6:
        raise CurveError("the coefficient criterion needs a degree-6 model")
    return curve.sextic.monic()


def hasse_witt_matrix(curve: Genus2Curve) -> tuple[tuple[Felt, Felt], tuple[Felt, Felt]]:
    f = _monic_sextic(curve)
    return ((f.coeff(2), f.coeff(1)), (f.coeff(5), f.coeff(4)))


def yui_is_supersingular(curve: Genus2Curve) -> bool:
    """M M^(3) = 0 for M = [[c2, c1], [c5, c4]] of the monic sextic (quintics are moved first)."""
    (a, b), (c, d) = hasse_witt_matrix(_geometric_sextic(curve))
    a3, b3, c3, d3 = a ** 3, b ** 3, c ** 3, d ** 3
    prod = (a * a3 + b * c3, a * b3 + b * d3, c * a3 + d * c3, c * b3 + d * d3)
    return not any(prod)


def is_superspecial(curve: Genus2Curve) -> bool:
    (a, b), (c, d) = hasse_witt_matrix(_geometric_sextic(curve))
    return not (a or b or c or d)


def _geometric_sextic(curve: Genus2Curve) -> Genus2Curve:
    """A degree-6 model, after a quadratic base change if no rational x0 works."""
    try:
        return sextic_model(curve)
    except CurveError:
        big = make_field(2 * curve.field.degree)
        return sextic_model(curve.base_change(embedding(curve.field, big)))


def sextic_model(curve: Genus2Curve) -> Genus2Curve:
    """Move a degree-5 model to degree 6 via x -> x0 + 1/x, y -> y/x^3."""
    if curve.sextic.degree == 6:
        return curve
    field = curve.field
    f = curve.sextic
    vals = f.evaluate_all()
    good = [x for x in range(field.q) if vals[x] and chi2(curve.twist * Felt(field, int(vals[x]))) == 1]
    fallback = [x for x in range(field.q) if vals[x]]
    pick = good or fallback
    if not pick:
        raise CurveError(f"no rational x0 with f(x0) != 0 over {field.name}; extend the field first")
    x0 = Felt(field, pick[0])
    # x^6 f(x0 + 1/x) = sum a_k x^(6-k) (x0 x + 1)^k
    out = UniPoly(field)
    lin = UniPoly(field, [1, x0])
    power = UniPoly(field, [1])
    for k in range(6):
        ak = f.coeff(k)
        if ak:
            out = out + power.shift(6 - k).scale(ak)
        power = power * lin
    return Genus2Curve(curve.twist, out)


# -- reduced supersingular form ---------------------------------------------------------

@dataclass(frozen=True)
class ReducedSSForm:
    """twist * y^2 = x^6 + c3 x^3 + c1 x + c0 with c1 != 0."""

    c3: Felt
    c1: Felt
    c0: Felt
    twist: Felt

    def __post_init__(self):
        if not self.c1:
            raise CurveError("reduced form needs c1 != 0")
        if not self.twist:
            raise CurveError("twist scalar must be nonzero")

    @property
    def field(self) -> Field:
        return self.c1.field

    def sextic(self) -> UniPoly:
        return UniPoly(self.field, [self.c0, self.c1, 0, self.c3, 0, 0, 1])

    def curve(self) -> Genus2Curve:
        return Genus2Curve(self.twist, self.sextic())


@dataclass(frozen=True)
class IgusaVector:
    J2: Felt
    J4: Felt
    J6: Felt
    J8: Felt
    J10: Felt

    def entries(self) -> tuple[Felt, ...]:
        return (self.J2, self.J4, self.J6, self.J8, self.J10)

    def equivalent(self, other: "IgusaVector") -> bool:
        """Weighted-projective equality (weights 1..5) over the algebraic closure."""
        mine, theirs = self.entries(), other.entries()
        if [bool(v) for v in mine] != [bool(v) for v in theirs]:
            return False
        ratios = [(k + 1, theirs[k] / mine[k]) for k in range(5) if mine[k]]
        for (k, rk), (l, rl) in itertools.combinations(ratios, 2):
            if rk ** l != rl ** k:
                return False
        return True

    def __str__(self) -> str:
        return "[" + ":".join(str(v) for v in self.entries()) + "]"


def igusa_reduced(form: ReducedSSForm) -> IgusaVector:
    c3, c1, c0 = form.c3, form.c1, form.c0
    zero = form.field.zero
    return IgusaVector(zero, zero, c3 ** 6 - c3 * c1 ** 3 - c0 ** 3, zero, -(c1 ** 6))


def reduce_to_standard_form(curve: Genus2Curve) -> ReducedSSForm:
    """Bring a supersingular curve to twist * y^2 = x^6 + c3 x^3 + c1 x + c0."""
    curve = sextic_model(curve)
    if not yui_is_supersingular(curve):
        raise CurveError("curve is not supersingular")
    field = curve.field
    lc = curve.sextic.lc
    twist = curve.twist / lc
    g = curve.sextic.monic()
    c5, c4 = g.coeff(5), g.coeff(4)
    if c5:
        shift = c4 / c5
        g = g.compose(UniPoly(field, [shift, 1]))
        # now c4 = 0 and supersingularity forces c2 = c1 = 0; flip x -> 1/x
        assert not g.coeff(4) and not g.coeff(2) and not g.coeff(1)
        c0 = g.coeff(0)
        if not c0:
            raise CurveError("inseparable sextic")  # pragma: no cover
        twist = twist / c0
        g = UniPoly(field, reversed(g.coeffs)).monic()
    if g.coeff(5) or g.coeff(4) or g.coeff(2):
        raise CurveError("reduction failed; curve is not supersingular")  # pragma: no cover
    return ReducedSSForm(g.coeff(3), g.coeff(1), g.coeff(0), twist)


def invariant_I(curve: Genus2Curve | ReducedSSForm) -> Felt:
    """J6^5 / J10^3 of a supersingular curve."""
    form = curve if isinstance(curve, ReducedSSForm) else reduce_to_standard_form(curve)
    iv = igusa_reduced(form)
    return iv.J6 ** 5 / iv.J10 ** 3


def curve_from_invariant(value: Felt) -> Genus2Curve:
    """The standard supersingular curve whose invariant is ``value``."""
    field = value.field
    if value:
        c = value
        return Genus2Curve(field.one, UniPoly(field, [c ** 4, c ** 3, 0, c ** 2, 0, 0, 1]))
    return Genus2Curve(field.one, UniPoly(field, [1, 0, 0, 0, 0, 1]))


def geometric_aut_order(curve: Genus2Curve) -> int:
    return 2 if invariant_I(curve) else 10


# -- Igusa invariants of arbitrary curves over F_3 ---------------------------------------------

def _pairings(items: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in _pairings(remaining):
            out.append([(first, partner)] + tail)
    return out


def _clebsch_from_roots(lead, rts):
    """Igusa-Clebsch I2, I4, I6, I10 of lead * prod (x - r) (mpmath numbers)."""
    idx = tuple(range(6))

    def sq(i, j):
        d = rts[i] - rts[j]
        return d * d

    i2 = sum(sq(a, b) * sq(c, d) * sq(e, f) for (a, b), (c, d), (e, f) in _pairings(idx))
    i4 = 0
    i6 = 0
    for tri in itertools.combinations(idx, 3):
        if 0 not in tri:
            continue
        other = tuple(k for k in idx if k not in tri)
        a, b, c = tri
        d, e, f = other
        base = sq(a, b) * sq(b, c) * sq(c, a) * sq(d, e) * sq(e, f) * sq(f, d)
        i4 += base
        for perm in itertools.permutations(other):
            i6 += base * sq(a, perm[0]) * sq(b, perm[1]) * sq(c, perm[2])
    i10 = 1
    for a, b in itertools.combinations(idx, 2):
        i10 *= sq(a, b)
    return lead ** 2 * i2, lead ** 4 * i4, lead ** 6 * i6, lead ** 10 * i10


def _nearest_fraction(z, bound: int = 1 << 20) -> Fraction:
    import mpmath

    if abs(mpmath.im(z)) > mpmath.mpf(10) ** -20 * max(1, abs(z)):
        raise CurveError("Igusa-Clebsch invariant is not real; precision too low")
    r = Fraction(int(mpmath.nint(mpmath.re(z))))
    if abs(mpmath.re(z) - int(r)) > mpmath.mpf(10) ** -15:
        raise CurveError("Igusa-Clebsch invariant is not an integer; precision too low")
    return r


def igusa_invariants(curve: Genus2Curve) -> IgusaVector:
    """Igusa invariants [J2:J4:J6:J8:J10] of a curve over the prime field F_3.

    The coefficients are lifted to integers, the Igusa-Clebsch invariants of
    the lift are computed from its complex roots and rounded, converted to
    Igusa's J invariants (which have only powers of 2 in their denominators)
    and reduced mod 3.
    """
    import mpmath

    field = curve.field
    if field.degree != 1:
        raise CurveError("general Igusa invariants are only available over F_3")
    coeffs = [int(c.value) for c in curve.sextic.coeffs]
    coeffs = [c - 3 if c == 2 else c for c in coeffs]
    coeffs += [0] * (7 - len(coeffs))
    if coeffs[6] == 0:
        # x -> a + 1/x over the integers keeps the binary form class
        poly = coeffs[:6]
        for a in range(1, 10):
            if sum(c * a ** k for k, c in enumerate(poly)) != 0:
                break
        new = [0] * 7
        for k, c in enumerate(poly):
            # x^(6-k) (a x + 1)^k
            for j in range(k + 1):
                new[6 - k + j] += c * math.comb(k, j) * a ** j
        coeffs = new
    with mpmath.workdps(80):
        rts = mpmath.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=400)
        i2, i4, i6, i10 = (_nearest_fraction(v) for v in _clebsch_from_roots(mpmath.mpf(coeffs[6]), rts))
    j2 = i2 / 8
    j4 = (4 * j2 * j2 - i4) / 96
    j6 = (8 * j2 ** 3 - 160 * j2 * j4 - i6) / 576
    j8 = (j2 * j6 - j4 * j4) / 4
    j10 = i10 / 4096
    out = []
    for val in (j2, j4, j6, j8, j10):
        den = val.denominator
        while den % 2 == 0:
            den //= 2
        if den != 1:
            raise CurveError("Igusa invariant has a denominator prime to 2")
        out.append(Felt(field, (val.numerator * pow(val.denominator, -1, 3)) % 3))
    # the twist scales the form, which leaves the weighted class alone
    return IgusaVector(*out)
