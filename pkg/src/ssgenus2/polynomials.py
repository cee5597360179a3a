"""Dense univariate polynomials over the fields of :mod:`ssgenus2.gf3_arith`.

Coefficients are held as digit encodings, constant term first, with no
trailing zeros (the zero polynomial has no coefficients).  Besides ring
arithmetic the module offers the handful of algorithms the rest of the
package leans on: gcd, resultants and discriminants, root finding by
exhaustive evaluation, distinct-degree and equal-degree factorization,
and the search for factorizations of a sextic into two cubics.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Sequence

import numpy as np

from .gf3_arith import Embedding, Felt, Field, FieldError, make_field

_CONVOLVE_THRESHOLD = 400
_EXHAUSTIVE_ROOTS = 3 ** 7


class UniPoly:
    __slots__ = ("field", "_c")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        self.field = field
        vals = []
        for c in coeffs:
            if isinstance(c, Felt):
                if c.field is not field:
                    raise FieldError(f"coefficient from {c.field.name}, expected {field.name}")
                vals.append(c.value)
            else:
                vals.append(int(c) % 3)
        while vals and vals[-1] == 0:
            vals.pop()
        self._c = tuple(vals)

    @classmethod
    def from_encodings(cls, field: Field, codes: Iterable[int]) -> "UniPoly":
        p = cls.__new__(cls)
        p.field = field
        vals = [int(v) for v in codes]
        while vals and vals[-1] == 0:
            vals.pop()
        p._c = tuple(vals)
        return p

    @classmethod
    def parse(cls, field: Field, text: str) -> "UniPoly":
        """Read the comma-separated, constant-first text form."""
        text = text.strip()
        if not text:
            return cls(field)
        return cls(field, [field.parse(part) for part in text.split(",")])

    @classmethod
    def monomial(cls, field: Field, n: int, coeff=1) -> "UniPoly":
        return cls(field, [0] * n + [coeff])

    @classmethod
    def x(cls, field: Field) -> "UniPoly":
        return cls.from_encodings(field, (0, 1))

    @classmethod
    def constant(cls, field: Field, c) -> "UniPoly":
        return cls(field, [c])

    # -- basic accessors ---------------------------------------------------

    @property
    def coeffs(self) -> tuple[Felt, ...]:
        return tuple(Felt(self.field, v) for v in self._c)

    @property
    def encodings(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    def coeff(self, k: int) -> Felt:
        return Felt(self.field, self._c[k] if 0 <= k < len(self._c) else 0)

    @property
    def lc(self) -> Felt:
        if not self._c:
            return Felt(self.field, 0)
        return Felt(self.field, self._c[-1])

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.field is other.field and self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self._c))

    def __len__(self) -> int:
        return len(self._c)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly(q={self.field.q}, '{self}')"

    def pretty(self, var: str = "x") -> str:
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            v = self._c[k]
            if v == 0:
                continue
            c = str(Felt(self.field, v))
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(c)
            elif v == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field is not self.field:
                raise FieldError(f"mixed polynomial fields {self.field.name} and {other.field.name}")
            return other
        if isinstance(other, (Felt, int)):
            return UniPoly(self.field, [other])
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        f = self.field
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = f.add(out[k], v)
        return UniPoly.from_encodings(f, out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        neg = self.field.neg
        return UniPoly.from_encodings(self.field, [neg(v) for v in self._c])

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "UniPoly":
        f = self.field
        cv = c.value if isinstance(c, Felt) else int(c) % 3
        if cv == 0:
            return UniPoly(f)
        return UniPoly.from_encodings(f, [f.mul(v, cv) for v in self._c])

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (Felt, int)):
            return self.scale(other)
        other = self._coerce(other)
        a, b = self._c, other._c
        if not a or not b:
            return UniPoly(self.field)
        f = self.field
        if len(a) * len(b) > _CONVOLVE_THRESHOLD:
            return UniPoly.from_encodings(f, f.convolve(a, b).tolist())
        out = [0] * (len(a) + len(b) - 1)
        lg, ex, add = f._log_l, f._exp_l, f.add
        for i, ai in enumerate(a):
            if not ai:
                continue
            la = lg[ai]
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], ex[la + lg[bj]])
        return UniPoly.from_encodings(f, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, n: int) -> "UniPoly":
        """Multiply by x^n."""
        if not self._c:
            return self
        return UniPoly.from_encodings(self.field, (0,) * n + self._c)

    def mul_linear(self, alpha, beta) -> "UniPoly":
        """Multiply by alpha*x + beta in linear time."""
        f = self.field
        av = alpha.value if isinstance(alpha, Felt) else int(alpha) % 3
        bv = beta.value if isinstance(beta, Felt) else int(beta) % 3
        c = np.asarray(self._c, dtype=np.int64)
        if c.size == 0:
            return self
        lo = np.concatenate([f.vmul(c, bv), [0]])
        hi = np.concatenate([[0], f.vmul(c, av)])
        return UniPoly.from_encodings(f, f.vadd(lo, hi).tolist())

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        db = len(other._c) - 1
        if len(self._c) - 1 < db:
            return UniPoly(f), self
        inv_lc = f.inv(other._c[-1])
        if db >= 16:
            return self._divmod_vector(other, inv_lc)
        rem = list(self._c)
        quot = [0] * (len(rem) - db)
        b = other._c
        mul, sub = f.mul, f.sub
        for k in range(len(rem) - 1, db - 1, -1):
            coef = rem[k]
            if coef == 0:
                continue
            coef = mul(coef, inv_lc)
            quot[k - db] = coef
            base = k - db
            for j, bj in enumerate(b):
                if bj:
                    rem[base + j] = sub(rem[base + j], mul(coef, bj))
        return UniPoly.from_encodings(f, quot), UniPoly.from_encodings(f, rem[:db])

    def _divmod_vector(self, other: "UniPoly", inv_lc: int):
        f = self.field
        db = len(other._c) - 1
        rem = np.asarray(self._c, dtype=np.int64)
        b = np.asarray(other._c, dtype=np.int64)
        quot = np.zeros(len(rem) - db, dtype=np.int64)
        for k in range(len(rem) - 1, db - 1, -1):
            coef = int(rem[k])
            if coef == 0:
                continue
            coef = f.mul(coef, inv_lc)
            quot[k - db] = coef
            seg = slice(k - db, k + 1)
            rem[seg] = f.vsub(rem[seg], f.vmul(b, coef))
        return (UniPoly.from_encodings(f, quot.tolist()),
                UniPoly.from_encodings(f, rem[:db].tolist()))

    def __floordiv__(self, other) -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if not self._c:
            return self
        return self.scale(Felt(self.field, self.field.inv(self._c[-1])))

    def derivative(self) -> "UniPoly":
        f = self.field
        out = []
        for k in range(1, len(self._c)):
            out.append(f.mul(self._c[k], k % 3))
        return UniPoly.from_encodings(f, out)

    def __call__(self, x: Felt) -> Felt:
        if x.field is not self.field:
            raise FieldError(f"evaluation point from {x.field.name}, expected {self.field.name}")
        f = self.field
        acc = 0
        for v in reversed(self._c):
            acc = f.add(f.mul(acc, x.value), v)
        return Felt(f, acc)

    def evaluate_all(self, points=None) -> np.ndarray:
        """Values at an array of encodings (default: every field element)."""
        f = self.field
        xs = np.arange(f.q, dtype=np.int64) if points is None else np.asarray(points, dtype=np.int64)
        acc = np.zeros(xs.shape, dtype=np.int64)
        for v in reversed(self._c):
            acc = f.vmul(acc, xs)
            if v:
                acc = f.vadd(acc, v)
        return acc

    def compose(self, g: "UniPoly") -> "UniPoly":
        """self(g(x))."""
        g = self._coerce(g)
        result = UniPoly(self.field)
        if g.degree == 1:
            a, b = g.coeff(1), g.coeff(0)
            for v in reversed(self._c):
                result = result.mul_linear(a, b) + Felt(self.field, v)
            return result
        for v in reversed(self._c):
            result = result * g + Felt(self.field, v)
        return result

    def map_coeffs(self, emb: Embedding) -> "UniPoly":
        """Push the coefficients into a larger field."""
        if emb.source is not self.field:
            raise FieldError("embedding source does not match polynomial field")
        return UniPoly.from_encodings(emb.target, [emb.code(v) for v in self._c])

    def frobenius_coeffs(self, k: int = 1) -> "UniPoly":
        """Raise every coefficient to the 3^k power."""
        f = self.field
        return UniPoly.from_encodings(f, f.vfrob(np.asarray(self._c, dtype=np.int64), k).tolist()
                                      if self._c else [])


# -- algorithms ----------------------------------------------------------------

def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    return (a * b).exact_div(gcd(a, b)).monic()


def powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly(base.field, [1]) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def resultant(f: UniPoly, g: UniPoly) -> Felt:
    field = f.field
    if not f or not g:
        return field.zero
    acc = field.one
    a, b = f, g
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return acc * b.lc ** m
        r = a % b
        if not r:
            return field.zero
        sign = -1 if (m * n) % 2 else 1
        acc = acc * b.lc ** (m - r.degree) * sign
        a, b = b, r


def discriminant(f: UniPoly) -> Felt:
    """(-1)^(n(n-1)/2) lc^(n-2-k) res(f, f') with k = deg f'.

    The extra power of the leading coefficient makes the answer agree with
    the Sylvester-matrix definition when the derivative drops degree, which
    happens constantly in characteristic 3.
    """
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree at least 2")
    df = f.derivative()
    if not df:
        return f.field.zero
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return f.lc ** (n - 2 - df.degree) * resultant(f, df) * sign


def is_separable(f: UniPoly) -> bool:
    if not f:
        raise ValueError("separability of the zero polynomial")
    return gcd(f, f.derivative()).degree == 0


def _pth_root(f: UniPoly) -> UniPoly:
    """g with g^3 = f, for f whose exponents are all multiples of 3."""
    field = f.field
    codes = f.encodings[::3]
    inv_frob = np.asarray(codes, dtype=np.int64)
    inv_frob = field.vfrob(inv_frob, field.degree - 1)
    return UniPoly.from_encodings(field, inv_frob.tolist())


def radical(f: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of f."""
    if not f:
        raise ValueError("radical of the zero polynomial")
    f = f.monic()
    if f.degree <= 0:
        return f
    df = f.derivative()
    if not df:
        return radical(_pth_root(f))
    g = gcd(f, df)
    part = f.exact_div(g).monic()
    if g.degree == 0:
        return part
    return lcm(part, radical(g))


def roots(f: UniPoly) -> list[Felt]:
    """Distinct roots in the coefficient field, sorted by encoding.

    Small fields are scanned exhaustively; in large ones the product of the
    linear factors, gcd(f, x^q - x), is split by equal-degree factorization.
    """
    if not f:
        raise ValueError("roots of the zero polynomial")
    field = f.field
    if field.q <= _EXHAUSTIVE_ROOTS or f.degree <= 0:
        vals = f.evaluate_all()
        return [Felt(field, int(v)) for v in np.flatnonzero(vals == 0)]
    rad = radical(f)
    x = UniPoly.x(field)
    lin = gcd(powmod(x, field.q, rad) - x, rad)
    if lin.degree <= 0:
        return []
    found = [-p.coeff(0) for p in _equal_degree_split(lin, 1, random.Random(0x5eed))]
    return sorted(found, key=lambda r: r.value)


def root_multiplicities(f: UniPoly) -> dict[Felt, int]:
    out = {}
    for r in roots(f):
        lin = UniPoly(f.field, [-r, 1])
        m, g = 0, f
        while True:
            q, rem = g.divmod(lin)
            if rem:
                break
            m += 1
            g = q
        out[r] = m
    return out


def distinct_degree_factorization(f: UniPoly) -> list[tuple[int, UniPoly]]:
    """Pairs (k, product of the degree-k irreducible factors) for squarefree f."""
    if not is_separable(f):
        raise ValueError("distinct-degree factorization needs a separable polynomial")
    field = f.field
    f = f.monic()
    x = UniPoly.x(field)
    out = []
    h = x % f if f.degree > 0 else x
    k = 0
    while f.degree >= 2 * (k + 1):
        k += 1
        h = powmod(h, field.q, f)
        g = gcd(h - x, f)
        if g.degree > 0:
            out.append((k, g))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def factor_degrees(f: UniPoly) -> list[int]:
    """Degrees of the irreducible factors of a separable polynomial, sorted."""
    degs = []
    for k, g in distinct_degree_factorization(f):
        degs.extend([k] * (g.degree // k))
    return sorted(degs)


def _equal_degree_split(f: UniPoly, k: int, rng: random.Random) -> list[UniPoly]:
    if f.degree == k:
        return [f]
    field = f.field
    e = (field.q ** k - 1) // 2
    while True:
        a = UniPoly.from_encodings(field, [rng.randrange(field.q) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = gcd(powmod(a, e, f) - 1, f)
        if 0 < g.degree < f.degree:
            return (_equal_degree_split(g, k, rng)
                    + _equal_degree_split(f.exact_div(g).monic(), k, rng))


def factor(f: UniPoly) -> list[UniPoly]:
    """Monic irreducible factors of a separable polynomial, sorted by (degree, encoding)."""
    rng = random.Random(0x5eed)
    out = []
    for k, g in distinct_degree_factorization(f):
        out.extend(_equal_degree_split(g, k, rng))
    return sorted(out, key=lambda p: (p.degree, p.encodings[::-1]))


def is_irreducible(f: UniPoly) -> bool:
    """No factor of degree <= deg f / 2, tested via gcd with x^(q^k) - x."""
    if not f:
        raise ValueError("irreducibility of the zero polynomial")
    n = f.degree
    if n <= 0:
        return False
    field = f.field
    f = f.monic()
    x = UniPoly.x(field)
    h = x % f
    for _ in range(n // 2):
        h = powmod(h, field.q, f)
        if gcd(h - x, f).degree > 0:
            return False
    return True


def pellet_parity(f: UniPoly) -> bool:
    """True when f has an even number of irreducible factors of even degree."""
    if not is_separable(f):
        raise ValueError("parity of even-degree factors needs a separable polynomial")
    return sum(1 for k in factor_degrees(f) if k % 2 == 0) % 2 == 0


def splitting_degree(f: UniPoly) -> int:
    """Degree over the coefficient field of the field generated by all roots."""
    rad = radical(f)
    if rad.degree <= 0:
        return 1
    return math.lcm(*factor_degrees(rad))


def cubic_factor_pairs(f: UniPoly, k: Field, emb: Embedding | None = None
                       ) -> list[tuple[Felt, UniPoly, UniPoly]]:
    """All ways of writing f = lc * g1 * g2 with g1, g2 monic cubics over k.

    Pairs are ordered, so every unordered split shows up twice; the list is
    sorted by the encodings of g1.
    """
    if f.degree != 6:
        raise ValueError("cubic factor pairs need a sextic")
    if not is_separable(f):
        raise ValueError("cubic factor pairs need a separable sextic")
    if emb is None:
        from .gf3_arith import embedding
        emb = embedding(f.field, k)
    if emb.source is not f.field or emb.target is not k:
        raise FieldError("embedding does not match the fields")
    F = f.map_coeffs(emb)
    lc = F.lc
    facs = factor(F)
    out = []
    seen = set()
    for size in range(1, len(facs) + 1):
        for combo in itertools.combinations(range(len(facs)), size):
            if sum(facs[i].degree for i in combo) != 3:
                continue
            g1 = UniPoly(k, [1])
            for i in combo:
                g1 = g1 * facs[i]
            if g1.encodings in seen:
                continue
            seen.add(g1.encodings)
            g2 = F.monic().exact_div(g1)
            out.append((lc, g1, g2))
    out.sort(key=lambda t: t[1].encodings[::-1])
    return out


def mobius_homogenize(p: UniPoly, a, b, c, d, n: int) -> UniPoly:
    """sum_k p_k (a z + b)^k (c z + d)^(n - k), i.e. (c z + d)^n p((a z + b)/(c z + d))."""
    if p.degree > n:
        raise ValueError("homogenizing degree smaller than polynomial degree")
    field = p.field
    # T_m = sum_{k<=m} p_k A^k B^(m-k), built by T_m = T_{m-1} B + p_m A^m
    a_pow = UniPoly(field, [1])
    acc = UniPoly(field)
    for m in range(n + 1):
        acc = acc.mul_linear(c, d)
        pm = p.coeff(m)
        if pm:
            acc = acc + a_pow.scale(pm)
        if m < n:
            a_pow = a_pow.mul_linear(a, b)
    return acc


def poly_over(field: Field, coeffs: Sequence) -> UniPoly:
    return UniPoly(field, coeffs)


def prime_field() -> Field:
    return make_field(1)


def interpolate(xs: Sequence[Felt], ys: Sequence[Felt]) -> UniPoly:
    """Lagrange interpolation through distinct points."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need matching, nonempty point lists")
    field = xs[0].field
    out = UniPoly(field)
    for j, (xj, yj) in enumerate(zip(xs, ys)):
        basis = UniPoly(field, [1])
        denom = field.one
        for k, xk in enumerate(xs):
            if k != j:
                basis = basis.mul_linear(field.one, -xk)
                denom = denom * (xj - xk)
        out = out + basis.scale(yj / denom)
    return out
