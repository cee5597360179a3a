"""Arithmetic in the finite fields GF(3^d), 1 <= d <= 12.

Elements are stored as their *digit encoding*: the integer
``sum(a_k * 3**k)`` where ``a_0 + a_1 x + ... + a_{d-1} x^{d-1}`` is the
element in the power basis modulo the field's defining polynomial.  The
text form of an element is the digit string constant-first, so ``"01"`` is
the generator ``x`` of GF(9).

Every field of a given degree is built the same way on every run: the
modulus is the monic irreducible of that degree whose coefficients, read
constant-first as a base-3 integer, are smallest.  Multiplication goes
through discrete-log tables of a primitive element and addition through
Zech logarithms; the same tables back the vectorized (numpy) kernels used
by the point counters.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

import numpy as np

MAX_DEGREE = 12


class FieldError(ValueError):
    """Raised for unsupported fields or operands from different fields."""


# -- bootstrap helpers on F_3[x], lists constant-first --------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _p3_mod(a: Sequence[int], m: Sequence[int]) -> list[int]:
    a = _trim([x % 3 for x in a])
    dm = len(m) - 1
    inv_lc = m[-1] % 3  # 1 and 2 are their own inverses mod 3
    while len(a) - 1 >= dm:
        coef = (a[-1] * inv_lc) % 3
        shift = len(a) - 1 - dm
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - coef * mk) % 3
        _trim(a)
    return a


def _p3_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _p3_mod(out, m)


def _p3_is_irreducible(m: Sequence[int]) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d <= 1:
        return d == 1
    for k in range(1, d // 2 + 1):
        for v in range(3 ** k):
            div = [(v // 3 ** j) % 3 for j in range(k)] + [1]
            if not _p3_mod(m, div):
                return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """GF(3^d) with a fixed modulus (see module docstring).

    ``degree``, ``modulus`` (coefficients constant-first, monic) and ``q``
    are the public description; the remaining attributes are lookup
    tables.  Use :func:`make_field` rather than constructing directly.
    """

    def __init__(self, degree: int, modulus: Sequence[int]):
        if not 1 <= degree <= MAX_DEGREE:
            raise FieldError(f"degree {degree} outside 1..{MAX_DEGREE}")
        modulus = tuple(int(c) % 3 for c in modulus)
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of the field degree")
        if not _p3_is_irreducible(modulus):
            raise FieldError(f"modulus {modulus} is reducible over F_3")
        self.degree = degree
        self.modulus = modulus
        self.q = 3 ** degree
        self._build_tables()

    # -- table construction ------------------------------------------------

    def _digits_of(self, v: int) -> list[int]:
        return [(v // 3 ** k) % 3 for k in range(self.degree)]

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _p3_mulmod(self._digits_of(a), self._digits_of(b), self.modulus)
        return sum(c * 3 ** k for k, c in enumerate(prod))

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        d, q = self.degree, self.q
        n = q - 1
        self.pow3 = 3 ** np.arange(d, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = ((codes[:, None] // self.pow3[None, :]) % 3).astype(np.int8)

        primes = _prime_factors(n)
        for g in range(1, q):
            if all(self._slow_pow(g, n // p) != 1 for p in primes):
                break
        self.primitive = g

        # columns of the matrix of multiplication by g
        mat = np.zeros((d, d), dtype=np.int64)
        for k in range(d):
            mat[:, k] = self._digits_of(self._slow_mul(g, 3 ** k))
        vecs = np.zeros((n, d), dtype=np.int64)
        vecs[0, 0] = 1
        filled, step = 1, mat.copy()
        while filled < n:
            m = min(filled, n - filled)
            vecs[filled:filled + m] = (vecs[:m] @ step.T) % 3
            step = (step @ step) % 3
            filled += m
        exp = vecs @ self.pow3
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n)
        if (log[1:] < 0).any():
            raise FieldError("generator search failed")  # pragma: no cover
        self.exp = np.concatenate([exp, exp])
        self.log = log
        one = np.zeros(d, dtype=np.int64)
        one[0] = 1
        self.zech = (((vecs + one) % 3) @ self.pow3)
        self.neg_table = ((3 - self.digits.astype(np.int64)) % 3) @ self.pow3
        chi = np.zeros(q, dtype=np.int8)
        chi[1:] = np.where(log[1:] % 2 == 0, 1, -1)
        self.chi2_table = chi
        # F_3-linear Frobenius x -> x^3, as an encoding table
        self.frob_table = self.exp[(log * 3) % n] if q > 3 else codes.copy()
        self.frob_table[0] = 0
        # x^m mod modulus for m < 2d-1, used by polynomial convolution
        red = np.zeros((2 * d - 1, d), dtype=np.int64)
        for m in range(2 * d - 1):
            red[m] = self._digits_of(self._slow_pow(3 if d > 1 else 0, m))
        self._reduce_powers = red
        self._add_table = None
        if q <= 729:
            self._add_table = self._vadd_digits(codes[:, None], codes[None, :])
        # scalar fast paths work on python lists
        self._exp_l = self.exp.tolist()
        self._log_l = log.tolist()
        self._zech_l = self.zech.tolist()
        self._neg_l = self.neg_table.tolist()

    # -- scalar operations on encodings -------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        lg = self._log_l
        la = lg[a]
        k = lg[b] - la
        if k < 0:
            k += self.q - 1
        s = self._zech_l[k]
        if s == 0:
            return 0
        return self._exp_l[la + lg[s]]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_l[b])

    def neg(self, a: int) -> int:
        return self._neg_l[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_l[self._log_l[a] + self._log_l[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self._exp_l[(-self._log_l[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0 if e else 1
        return self._exp_l[(self._log_l[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Encoding of the integer n viewed in the prime field."""
        return n % 3

    # -- vectorized operations on arrays of encodings ------------------------

    def _vadd_digits(self, a, b):
        s = self.digits[a].astype(np.int64) + self.digits[b]
        return (s % 3) @ self.pow3

    def vadd(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._vadd_digits(a, b)

    def vneg(self, a):
        return self.neg_table[np.asarray(a)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e: int):
        a = np.asarray(a)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(out)
        return np.where(a == 0, 0, out)

    def vinv(self, a):
        a = np.asarray(a)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def vchi2(self, a):
        return self.chi2_table[np.asarray(a)]

    def vfrob(self, a, k: int = 1):
        a = np.asarray(a)
        for _ in range(k % self.degree):
            a = self.frob_table[a]
        return a

    def convolve(self, a, b):
        """Product of two polynomials given as encoding arrays (constant-first)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        d = self.degree
        da = self.digits[a].astype(np.int64)
        db = self.digits[b].astype(np.int64)
        acc = np.zeros((len(a) + len(b) - 1, d), dtype=np.int64)
        for s in range(d):
            if not da[:, s].any():
                continue
            for t in range(d):
                if not db[:, t].any():
                    continue
                conv = np.convolve(da[:, s], db[:, t]) % 3
                acc += conv[:, None] * self._reduce_powers[s + t][None, :]
        return (acc % 3) @ self.pow3

    # -- element helpers -----------------------------------------------------

    @property
    def name(self) -> str:
        return f"GF({self.q})"

    def __repr__(self) -> str:
        return f"Field(q={self.q}, modulus={self.modulus})"

    def __reduce__(self):
        return (make_field, (self.degree,))

    def __call__(self, n: int) -> "Felt":
        """The prime-field integer n as an element of this field."""
        return Felt(self, n % 3)

    def element(self, code: int) -> "Felt":
        if not 0 <= code < self.q:
            raise FieldError(f"encoding {code} out of range for {self.name}")
        return Felt(self, int(code))

    def from_digits(self, digits: Sequence[int]) -> "Felt":
        if len(digits) != self.degree or any(c not in (0, 1, 2) for c in digits):
            raise FieldError(f"need {self.degree} digits in 0..2, got {digits!r}")
        return Felt(self, sum(int(c) * 3 ** k for k, c in enumerate(digits)))

    def parse(self, text: str) -> "Felt":
        text = text.strip()
        if len(text) != self.degree or set(text) - set("012"):
            raise FieldError(f"{text!r} is not a {self.degree}-digit base-3 encoding")
        return self.from_digits([int(ch) for ch in text])

    @property
    def zero(self) -> "Felt":
        return Felt(self, 0)

    @property
    def one(self) -> "Felt":
        return Felt(self, 1)

    @property
    def gen(self) -> "Felt":
        """The class of x (zero in the prime field, whose modulus is x)."""
        return Felt(self, 3 if self.degree > 1 else 0)

    def elements(self) -> Iterator["Felt"]:
        for v in range(self.q):
            yield Felt(self, v)

    def nonzero(self) -> Iterator["Felt"]:
        for v in range(1, self.q):
            yield Felt(self, v)

    @functools.cached_property
    def nonsquare(self) -> "Felt":
        """The nonsquare with the smallest encoding."""
        return Felt(self, int(np.flatnonzero(self.chi2_table == -1)[0]))

    @functools.cached_property
    def i(self) -> "Felt":
        """The fixed square root of -1: the F_9 choice, carried in by embedding."""
        if self.degree % 2:
            raise FieldError(f"{self.name} has no square root of -1")
        f9 = make_field(2)
        i9 = sqrt(-f9.one)
        return embedding(f9, self)(i9)


class Felt:
    """An element of a :class:`Field`; immutable and hashable."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits[self.value])

    def _other(self, other) -> int | None:
        if isinstance(other, Felt):
            if other.field is not self.field:
                raise FieldError(f"mixed operands from {self.field.name} and {other.field.name}")
            return other.value
        if isinstance(other, int):
            return other % 3
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Felt(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Felt(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Felt(self.field, self.field.sub(o, self.value))

    def __neg__(self):
        return Felt(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Felt(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Felt(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Felt(self.field, self.field.div(o, self.value))

    def __pow__(self, e: int):
        return Felt(self.field, self.field.pow(self.value, int(e)))

    def inverse(self) -> "Felt":
        return Felt(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Felt):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % 3
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __bool__(self):
        return self.value != 0

    def __lt__(self, other: "Felt") -> bool:
        return self.value < other.value

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Felt('{self}', q={self.field.q})"


@functools.cache
def make_field(d: int) -> Field:
    """The canonical GF(3^d)."""
    if not 1 <= d <= MAX_DEGREE:
        raise FieldError(f"degree {d} outside 1..{MAX_DEGREE}")
    for v in range(3 ** d):
        cand = [(v // 3 ** k) % 3 for k in range(d)] + [1]
        if _p3_is_irreducible(cand):
            return Field(d, cand)
    raise FieldError(f"no irreducible of degree {d}")  # pragma: no cover


def field_of_order(q: int) -> Field:
    d, n = 0, q
    while n > 1 and n % 3 == 0:
        n //= 3
        d += 1
    if n != 1 or d == 0:
        raise FieldError(f"{q} is not a positive power of 3")
    return make_field(d)


class Embedding:
    """The ring map source -> target sending source's x to ``image_of_generator``."""

    def __init__(self, source: Field, target: Field, image_of_generator: Felt):
        if target.degree % source.degree:
            raise FieldError(f"{source.name} does not embed in {target.name}")
        if image_of_generator.field is not target:
            raise FieldError("generator image must lie in the target")
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        powers = [1]
        for _ in range(1, source.degree):
            powers.append(target.mul(powers[-1], image_of_generator.value))
        pow_digits = target.digits[np.array(powers, dtype=np.int64)].astype(np.int64)
        table = (source.digits.astype(np.int64) @ pow_digits) % 3 @ target.pow3
        self.table = table
        self._table_l = table.tolist()
        self._inverse = {v: k for k, v in enumerate(self._table_l)}
        if len(self._inverse) != source.q:
            raise FieldError("generator image does not define an injective map")
        value = evaluate_encoded(target, [self._table_l[c] for c in source.modulus[:-1]] + [1],
                                 image_of_generator.value)
        if value != 0:
            raise FieldError("generator image is not a root of the source modulus")

    def __call__(self, x: Felt) -> Felt:
        if x.field is not self.source:
            raise FieldError(f"expected an element of {self.source.name}")
        return Felt(self.target, self._table_l[x.value])

    def code(self, value: int) -> int:
        return self._table_l[value]

    def contains(self, y: Felt) -> bool:
        return y.value in self._inverse

    def pullback(self, y: Felt) -> Felt:
        if y.field is not self.target:
            raise FieldError(f"expected an element of {self.target.name}")
        try:
            return Felt(self.source, self._inverse[y.value])
        except KeyError:
            raise FieldError(f"{y!r} is not in the image of {self.source.name}") from None

    def __repr__(self) -> str:
        return f"Embedding({self.source.name} -> {self.target.name}, x -> {self.image_of_generator})"


def evaluate_encoded(field: Field, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


@functools.cache
def _embedding(ds: int, dt: int) -> Embedding:
    source, target = make_field(ds), make_field(dt)
    if ds == dt:
        return Embedding(source, target, target.gen)
    if dt % ds:
        raise FieldError(f"{source.name} does not embed in {target.name}")
    xs = np.arange(target.q, dtype=np.int64)
    acc = np.zeros(target.q, dtype=np.int64)
    for c in reversed(source.modulus):
        acc = target.vadd(target.vmul(acc, xs), np.full(target.q, c))
    root = int(np.flatnonzero(acc == 0)[0])
    return Embedding(source, target, Felt(target, root))


def embedding(source: Field, target: Field) -> Embedding:
    """The canonical embedding: x goes to the smallest-encoding root of the modulus."""
    return _embedding(source.degree, target.degree)


# -- operations ---------------------------------------------------------------

def frobenius(x: Felt, k: int = 1) -> Felt:
    """x^(3^k)."""
    f = x.field
    v = x.value
    for _ in range(k % f.degree):
        v = int(f.frob_table[v])
    return Felt(f, v)


def abs_trace(x: Felt) -> int:
    """Absolute trace to F_3, returned as 0, 1 or 2."""
    f = x.field
    acc, v = 0, x.value
    for _ in range(f.degree):
        acc = f.add(acc, v)
        v = int(f.frob_table[v])
    return acc


def rel_trace(x: Felt, sub: Field, emb: Embedding | None = None) -> Felt:
    """Trace from x's field down to ``sub``, pulled back through ``emb``."""
    big = x.field
    if big.degree % sub.degree:
        raise FieldError(f"{sub.name} is not a subfield of {big.name}")
    if emb is None:
        emb = embedding(sub, big)
    if emb.source is not sub or emb.target is not big:
        raise FieldError("embedding does not match the fields")
    acc, v = 0, x.value
    for _ in range(big.degree // sub.degree):
        acc = big.add(acc, v)
        v = big.pow(v, sub.q)
    return emb.pullback(Felt(big, acc))


def chi2(x: Felt) -> int:
    """Quadratic character x^((q-1)/2) as +1 or -1."""
    if not x:
        raise ValueError("quadratic character of zero")
    return int(x.field.chi2_table[x.value])


def chi4(x: Felt) -> complex | int:
    """Quartic character x^((q-1)/4), reported as 1, -1, 1j or -1j.

    1j stands for the field's fixed square root of -1 (``Field.i``).
    """
    f = x.field
    if f.degree % 2:
        raise FieldError("quartic character needs an even-degree field")
    if not x:
        raise ValueError("quartic character of zero")
    v = x ** ((f.q - 1) // 4)
    if v == 1:
        return 1
    if v == -1:
        return -1
    return 1j if v == f.i else -1j


def sqrt(x: Felt) -> Felt | None:
    """A square root of x, or None; of the two roots the smaller encoding wins."""
    f = x.field
    if not x:
        return x
    lg = f._log_l[x.value]
    if lg % 2:
        return None
    r = f._exp_l[lg // 2]
    return Felt(f, min(r, f.neg(r)))


def s_of_b(b: Felt) -> Felt:
    """b^((3-q)/4) for odd-degree fields."""
    f = b.field
    if f.degree % 2 == 0:
        raise FieldError("s(b) is defined only for odd-degree fields")
    if not b:
        raise ValueError("s(b) of zero")
    return b ** ((3 - f.q) // 4)
