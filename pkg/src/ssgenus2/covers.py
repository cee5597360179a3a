"""The triple covers C_{b,c} -> E_{b,c} and their bookkeeping.

C_{b,c} is w^2 = c * g1(v) * g2(v) with

    g1 = v^3 - b v^2 - b^2 v + b^3 - c^2
    g2 = v^3 + b v^2 - b^2 v - b^3 - c^2

and E_{b,c} is y^2 = x^3 - b x + c.  The degree-3 map is

    x = -b c (v - b) / g1(v),   z = -w / g1(v),   y = (z^3 + b x z) / c.

Swapping b for -b swaps g1 and g2, so the same curve also covers E_{-b,c}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elliptic import EllipticCurve, EllPoint, ell_weil, weil_product
from .gf3_arith import Felt, Field, FieldError, chi2, chi4, embedding, make_field, rel_trace, sqrt
from .genus2 import (CurveError, Genus2Curve, point_counts,
                     reduce_to_standard_form, weil_quartic)
from .polynomials import (UniPoly, discriminant, interpolate, is_separable, root_multiplicities, roots,
                          splitting_degree)


@dataclass(frozen=True)
class CurveInfinity:
    """A point at infinity of a degree-6 model, labelled by lim w/v^3 = s (s^2 = lc)."""

    s: Felt


def cover_cubics(b: Felt, c: Felt) -> tuple[UniPoly, UniPoly]:
    field = b.field
    g1 = UniPoly(field, [b ** 3 - c * c, -b * b, -b, 1])
    g2 = UniPoly(field, [-b ** 3 - c * c, -b * b, b, 1])
    return g1, g2


@dataclass(frozen=True)
class CoverTriple:
    b: Felt
    c: Felt
    curve: Genus2Curve
    target: EllipticCurve
    cotarget: EllipticCurve

    @property
    def field(self) -> Field:
        return self.b.field

    @property
    def moduli_coordinate(self) -> Felt:
        return self.c * self.c / self.b ** 3

    def to_json(self) -> dict:
        return {"b": str(self.b), "c": str(self.c), "q": self.field.q,
                "curve": self.curve.to_json(), "target": self.target.to_json(),
                "cotarget": self.cotarget.to_json()}


def build_cover(b: Felt, c: Felt) -> CoverTriple:
    if b.field is not c.field:
        raise FieldError("b and c from different fields")
    if not b or not c:
        raise CurveError("the cover family needs b != 0 and c != 0")
    g1, g2 = cover_cubics(b, c)
    sextic = (g1 * g2).scale(c)
    if not is_separable(sextic):
        raise CurveError(f"C_(b,c) is singular for b={b}, c={c}")
    curve = Genus2Curve(b.field.one, sextic)
    return CoverTriple(b, c, curve, EllipticCurve(b, c), EllipticCurve(-b, c))


def rescale_cover(T: CoverTriple, r: Felt) -> CoverTriple:
    if not r:
        raise ValueError("rescaling factor must be nonzero")
    return build_cover(T.b * r ** 4, T.c * r ** 6)


def _phi(b: Felt, c: Felt, point) -> EllPoint:
    if isinstance(point, CurveInfinity):
        if point.s * point.s != c:
            raise ValueError("not a point at infinity of C_(b,c)")
        return (c.field.zero, -point.s)
    v, w = point
    g1, g2 = cover_cubics(b, c)
    den = g1(v)
    if w * w != c * den * g2(v):
        raise ValueError("point is not on C_(b,c)")
    if not den:
        return None
    x = -b * c * (v - b) / den
    z = -w / den
    y = (z ** 3 + b * x * z) / c
    if y * y != x ** 3 - b * x + c:
        raise AssertionError("image is off the elliptic curve")  # pragma: no cover
    return (x, y)


def phi_eval(T: CoverTriple, point) -> EllPoint:
    """Image on E_{b,c}; zeros of g1 go to infinity, the infinite point s goes to (0, -s).

    ``point`` is a pair (v, w) or a :class:`CurveInfinity`, in the base field
    or in any extension (b and c are carried along).
    """
    b, c = _lift_params(T, point)
    return _phi(b, c, point)


def phi_prime_eval(T: CoverTriple, point) -> EllPoint:
    """The companion map to E_{-b,c}."""
    b, c = _lift_params(T, point)
    return _phi(-b, c, point)


def _lift_params(T: CoverTriple, point) -> tuple[Felt, Felt]:
    f = point.s.field if isinstance(point, CurveInfinity) else point[0].field
    if f is T.field:
        return T.b, T.c
    emb = embedding(T.field, f)
    return emb(T.b), emb(T.c)


def curve_points(T: CoverTriple, big: Field | None = None) -> list:
    """All points of C_{b,c} over ``big`` (default: the base field)."""
    big = big or T.field
    emb = embedding(T.field, big)
    f = T.curve.sextic.map_coeffs(emb)
    vals = f.evaluate_all()
    pts: list = []
    for v in range(big.q):
        r = sqrt(Felt(big, int(vals[v])))
        if r is None:
            continue
        V = Felt(big, v)
        pts.append((V, r))
        if r:
            pts.append((V, -r))
    s = sqrt(emb(T.c))
    if s is not None:
        pts.extend([CurveInfinity(s), CurveInfinity(-s)])
    return pts


def fiber_census(T: CoverTriple, big: Field) -> dict:
    """How many rational points of C over ``big`` land on each point of E."""
    out: dict = {}
    for P in curve_points(T, big):
        image = phi_eval(T, P)
        out[image] = out.get(image, 0) + 1
    return out


def branch_discriminant(T: CoverTriple) -> UniPoly:
    """disc_v(x0 g1(v) + b c (v - b)) as a polynomial in x0.

    The points of C with x = x0 have v among the roots of that cubic.
    """
    base = T.field
    big = base if base.q >= 9 else make_field(2 * base.degree)
    emb = embedding(base, big)
    b, c = emb(T.b), emb(T.c)
    g1, _ = cover_cubics(b, c)
    lin = UniPoly(big, [-b * b * c, b * c])
    xs, ys = [], []
    for code in range(1, 6):
        x0 = Felt(big, code)
        xs.append(x0)
        ys.append(discriminant(g1.scale(x0) + lin))
    D = interpolate(xs, ys)
    if big is base:
        return D
    return UniPoly(base, [emb.pullback(co) for co in D.coeffs])


def _fiber_size(b: Felt, c: Felt, x0: Felt, y0: Felt) -> int:
    """Number of geometric points of C_{b,c} over (x0, y0), x0 != 0.

    The v-cubic must split over x0's field.  For a given v the two points
    (v, +-w) go to (x0, +-y) with y^2 = z^2 (z^2 + b x0)^2 / c^2 and
    z^2 = w^2 / g1(v)^2, so no square roots are needed.
    """
    field = x0.field
    g1, g2 = cover_cubics(b, c)
    cubic = g1.scale(x0) + UniPoly(field, [-b * b * c, b * c])
    mult = root_multiplicities(cubic)
    if sum(mult.values()) != 3:
        raise FieldError("the v-cubic does not split over the given field")
    size = 0
    for v in mult:
        den = g1(v)
        w2 = c * den * g2(v)
        if not w2:
            size += 1 if not y0 else 0
            continue
        z2 = w2 / (den * den)
        y2 = z2 * (z2 + b * x0) ** 2 / (c * c)
        if y0:
            size += 1 if y2 == y0 * y0 else 0
        else:
            size += 2 if not y2 else 0
    return size


def ramification_points(T: CoverTriple) -> dict:
    """Points of E_{b,c} over which C has fewer than three geometric points.

    Away from x = 0 the v-cubic can only degenerate where the branch
    discriminant vanishes; its nonzero roots are checked to be 2-torsion
    x-values, and the fibers over those points are computed explicitly.
    """
    base = T.field
    D = branch_discriminant(T)
    tors = UniPoly(base, [T.c, -T.b, 0, 1])
    rest = D
    while rest.degree > 0 and not rest.coeff(0):
        rest = UniPoly(base, rest.coeffs[1:])
    while rest.degree > 0:
        quo, rem = rest.divmod(tors)
        if rem:
            raise AssertionError(f"unexpected branch values: {rest}")
        rest = quo
    out: dict = {}
    big = make_field(splitting_degree(tors) * base.degree)
    emb = embedding(base, big)
    b, c = emb(T.b), emb(T.c)
    for x0 in roots(tors.map_coeffs(emb)):
        size = _fiber_size(b, c, x0, big.zero)
        if size < 3:
            out[(x0, big.zero)] = size
    for image, size in fibers_over_zero(T).items():
        if size < 3:
            out[image] = size
    return out


def fibers_over_zero(T: CoverTriple) -> dict:
    """Geometric fiber sizes over the two points (0, +-sqrt(c)) of E_{b,c}."""
    base = T.field
    big = make_field(2 * base.degree)
    emb = embedding(base, big)
    b, c = emb(T.b), emb(T.c)
    g1, g2 = cover_cubics(b, c)
    sc = sqrt(c)
    w0 = sqrt(c * g1(b) * g2(b))
    candidates = [(b, w0), (b, -w0), CurveInfinity(sc), CurveInfinity(-sc)]
    out: dict = {}
    for P in candidates:
        image = _phi(b, c, P)
        out[image] = out.get(image, 0) + 1
    return out


def splitting_check(T: CoverTriple) -> bool:
    w = weil_quartic(T.curve)
    t1 = ell_weil(T.target).t
    t2 = ell_weil(T.cotarget).t
    return (w.s1, w.s2) == weil_product(t1, t2, T.field.q)


def _f9_trace_class(value: Felt) -> str:
    f9 = make_field(2)
    t = rel_trace(value, f9)
    if not t:
        return "zero"
    i = f9.i
    if t in (f9.one, -f9.one, i, -i):
        return "axis"
    return "diagonal"


def table3_classify(b: Felt, c: Felt) -> tuple[int, int]:
    """(s, t) for C_{b,c} over an even-degree field, read from characters and traces."""
    field = b.field
    d = field.degree
    if d % 2:
        raise FieldError("the split table applies to even-degree fields")
    if not b or not c:
        raise ValueError("b and c must be nonzero")
    unit = (-3) ** (d // 2)
    ch = chi4(b)
    if ch in (1j, -1j):
        return (0, 0)
    root = sqrt(b)
    assert root is not None
    cls = _f9_trace_class(c / root ** 3)
    sign = 1 if ch == 1 else -1
    rows = {"zero": (2 * unit, 2 * unit), "diagonal": (-unit, -unit), "axis": (2 * unit, -unit)}
    s, t = rows[cls]
    return (sign * s, sign * t)


# -- from a pair of cubic factors to a member of the family -------------------------------

@dataclass(frozen=True)
class CubicSplitResult:
    u: Felt
    c: Felt
    twist_flag: bool
    v: Felt
    w: Felt
    t: Felt

    def to_json(self) -> dict:
        return {"u": str(self.u), "c": str(self.c), "twist_flag": self.twist_flag,
                "v": str(self.v), "w": str(self.w), "t": str(self.t)}


def _homogenize(p: UniPoly, mat, n: int) -> UniPoly:
    from .polynomials import mobius_homogenize

    (a, b), (c, d) = mat
    return mobius_homogenize(p, a, b, c, d, n)


def _matmul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def reduce_cubic_split_to_cover(C: Genus2Curve, g1: UniPoly, g2: UniPoly) -> CubicSplitResult:
    """Find (u, c) such that C is C_{u,c} or its quadratic twist.

    g1 and g2 are monic cubics with C's sextic = lc * g1 * g2.  The curve is
    moved to x^6 + A x^3 + B x + A^2 with -B a square, the cubic factors are
    carried along, and u, v, w, t are read off the transported cubics.
    """
    field = C.field
    if g1.degree != 3 or g2.degree != 3:
        raise CurveError("factors must be cubics")
    f = C.sextic
    if f.degree != 6:
        raise CurveError("need a degree-6 model")
    if (g1 * g2).scale(f.lc) != f:
        raise CurveError("factors do not multiply to the sextic")
    one, zero = field.one, field.zero
    mat = ((one, zero), (zero, one))  # x_old = (a x + b) / (c x + d)
    form = reduce_to_standard_form(C)
    monic = f.monic()
    if monic.coeff(5):
        shift = monic.coeff(4) / monic.coeff(5)
        mat = _matmul(mat, ((one, shift), (zero, one)))
        mat = _matmul(mat, ((zero, one), (one, zero)))
    c3, c1, c0 = form.c3, form.c1, form.c0
    a = (c3 * c3 - c0) / c1
    mat = _matmul(mat, ((one, a), (zero, one)))
    mat = _matmul(mat, ((-c1, zero), (zero, one)))
    F = _homogenize(f, mat, 6)
    twist = C.twist / F.lc
    F = F.monic()
    A, B = F.coeff(3), F.coeff(1)
    if F.coeff(5) or F.coeff(4) or F.coeff(2) or F.coeff(0) != A * A:
        raise AssertionError("normalization did not reach x^6 + A x^3 + B x + A^2")  # pragma: no cover
    if sqrt(-B) is None:
        raise AssertionError("-B is not a square after rescaling")  # pragma: no cover
    h1 = _homogenize(g1, mat, 3).monic()
    h2 = _homogenize(g2, mat, 3).monic()
    if h1 * h2 != F:
        raise AssertionError("transported cubics do not multiply to the normalized sextic")  # pragma: no cover
    u = h1.coeff(2)
    if not u:
        raise CurveError("u = 0 contradicts the cubic-split normal form")
    v = h1.coeff(1) / (u * u)
    w = h1.coeff(0)
    t = h2.coeff(0)
    if h2.coeff(2) != -u or h2.coeff(1) != u * u * (1 - v):
        raise AssertionError("second cubic does not have the expected shape")  # pragma: no cover
    if t != w + u ** 3 * (v * v - v):
        raise AssertionError("constant terms violate t = w + u^3 (v^2 - v)")  # pragma: no cover
    if v == -one:
        raise CurveError("v = -1 contradicts the cubic-split normal form")
    c = sqrt(-B / (u * u))
    shift = UniPoly(field, [u * (v + 1), 1])
    k1, k2 = h1.compose(shift), h2.compose(shift)
    expect2, expect1 = cover_cubics(u, c)
    if k1 != expect1 or k2 != expect2:
        raise AssertionError("shifted cubics are not those of C_(u,c)")  # pragma: no cover
    # twist * y^2 = k1 k2 versus w^2 = c k1 k2
    return CubicSplitResult(u, c, chi2(twist * c) == -1, v, w, t)


def verify_cubic_split(C: Genus2Curve, result: CubicSplitResult) -> bool:
    """C and C_{u,c} agree over F_{q^2}, and over F_q up to the reported twist."""
    T = build_cover(result.u, result.c)
    n1, n2 = point_counts(C)
    m1, m2 = point_counts(T.curve)
    q = C.q
    if n2 != m2:
        return False
    return n1 == (2 * (q + 1) - m1 if result.twist_flag else m1)
