"""Exact arithmetic and sign determination in Q and real quadratic fields.

A field is either the rationals or Q(sqrt(m)) for a square-free integer
m > 1.  Elements are stored as a pair of rationals (p, q) meaning
p + q*sqrt(m); for the rationals q is always zero.  An ordering of
Q(sqrt(m)) is one of its two real embeddings, selected by the sign given to
the image of sqrt(m).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from gmpy2 import mpq, mpz
from sympy.ntheory.factor_ import core as _squarefree_part

from .errors import FieldMismatchError, UnsupportedFieldError

# coordinates are stored as gmpy2 rationals; Fraction and int are accepted
Rational = Union[int, Fraction, type(mpq())]
_RATIONAL_TYPES = (int, Fraction, type(mpq()), type(mpz()))


@dataclass(frozen=True)
class Field:
    """Q when ``m`` is None, otherwise Q(sqrt(m)) with m square-free and > 1."""

    m: int | None = None

    def __post_init__(self) -> None:
        if self.m is None:
            return
        if not isinstance(self.m, int) or self.m <= 1:
            raise UnsupportedFieldError(f"radicand must be an integer > 1, got {self.m!r}")
        if _squarefree_part(self.m) != self.m:
            raise UnsupportedFieldError(
                f"radicand {self.m} is not square-free; use Field.quadratic()")

    @classmethod
    def rational(cls) -> Field:
        return cls(None)

    @classmethod
    def quadratic(cls, m: int) -> Field:
        """Q(sqrt(m)); m is reduced to its square-free part first."""
        return cls.for_radicand(m)[0]

    @classmethod
    def for_radicand(cls, m: int) -> tuple[Field, int]:
        """Return (Q(sqrt(m0)), s) with m = s^2 * m0 and m0 square-free."""
        if m <= 1:
            raise UnsupportedFieldError(f"radicand must be > 1, got {m}")
        m0 = int(_squarefree_part(m))
        if m0 == 1:
            raise UnsupportedFieldError(f"{m} is a perfect square")
        return cls(m0), isqrt(m // m0)

    @property
    def is_rational(self) -> bool:
        return self.m is None

    def __call__(self, p: Rational | FieldElement = 0, q: Rational = 0) -> FieldElement:
        if isinstance(p, FieldElement):
            if p.field != self:
                raise FieldMismatchError(f"{p!r} does not belong to {self}")
            return p
        return FieldElement(self, p, q)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def sqrt_m(self) -> FieldElement:
        if self.m is None:
            raise UnsupportedFieldError("Q has no distinguished square root")
        return FieldElement(self, 0, 1)

    def __str__(self) -> str:
        return "QQ" if self.m is None else f"QQ(sqrt({self.m}))"


QQ = Field(None)


class FieldElement:
    """Immutable element p + q*sqrt(m) of a :class:`Field`."""

    __slots__ = ("field", "p", "q", "_hash")

    def __init__(self, field: Field, p: Rational = 0, q: Rational = 0) -> None:
        p = mpq(p)
        q = mpq(q)
        if field.m is None and q:
            raise UnsupportedFieldError("irrational part given for an element of QQ")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- construction helpers -------------------------------------------------
    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, _RATIONAL_TYPES):
            return FieldElement(self.field, other)
        return None

    def _new(self, p, q) -> FieldElement:
        x = _alloc(FieldElement)
        _set_field(x, self.field)
        _set_p(x, p)
        _set_q(x, q)
        return x

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> FieldElement:
        return self._new(-self.p, -self.q)

    def __pos__(self) -> FieldElement:
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.q and not o.q:
            return self._new(self.p * o.p, self.q)
        m = self.field.m
        return self._new(self.p * o.p + m * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conjugate(self) -> FieldElement:
        """The Galois conjugate p - q*sqrt(m)."""
        return self._new(self.p, -self.q)

    def norm(self):
        if not self.q:
            return self.p * self.p
        return self.p * self.p - self.field.m * self.q * self.q

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if not self.q:
            return self._new(1 / self.p, self.q)
        n = self.norm()
        return self._new(self.p / n, -self.q / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.q:
            if not o.p:
                raise ZeroDivisionError("division by zero field element")
            return self._new(self.p / o.p, self.q / o.p)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> FieldElement:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.p and not self.q

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not self.q

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.p == other.p and self.q == other.q
        if isinstance(other, _RATIONAL_TYPES):
            return not self.q and self.p == other
        return NotImplemented

    def __hash__(self) -> int:
        try:
            return self._hash
        except AttributeError:
            h = hash((self.field.m, self.p, self.q))
            object.__setattr__(self, "_hash", h)
            return h

    def __repr__(self) -> str:
        if self.field.m is None:
            return f"FieldElement(QQ, {self.p})"
        return f"FieldElement({self.field}, {self.p}, {self.q})"

    def __str__(self) -> str:
        if not self.q:
            return str(self.p)
        if not self.p:
            return f"{self.q}*sqrt({self.field.m})"
        sign = "-" if self.q < 0 else "+"
        return f"{self.p}{sign}{abs(self.q)}*sqrt({self.field.m})"


# ----------------------------------------------------------------------------
# Orderings
# ----------------------------------------------------------------------------

_alloc = object.__new__
_set_field = FieldElement.field.__set__
_set_p = FieldElement.p.__set__
_set_q = FieldElement.q.__set__

POSITIVE_ROOT = "positive_root"
NEGATIVE_ROOT = "negative_root"


@dataclass(frozen=True)
class Ordering:
    """An ordering P of a field, realised as a real embedding."""

    field: Field
    embedding: str | None = None

    def __post_init__(self) -> None:
        if self.field.m is None:
            if self.embedding is not None:
                raise UnsupportedFieldError("QQ has a unique ordering; embedding must be None")
        elif self.embedding not in (POSITIVE_ROOT, NEGATIVE_ROOT):
            raise UnsupportedFieldError(f"unknown embedding {self.embedding!r}")

    @classmethod
    def rational(cls) -> Ordering:
        return cls(QQ, None)

    @classmethod
    def all_of(cls, field: Field) -> tuple[Ordering, ...]:
        if field.m is None:
            return (cls(field),)
        return (cls(field, POSITIVE_ROOT), cls(field, NEGATIVE_ROOT))

    @property
    def root_sign(self) -> int:
        return -1 if self.embedding == NEGATIVE_ROOT else 1

    def __str__(self) -> str:
        return str(self.field) if self.embedding is None else f"{self.field}[{self.embedding}]"


def _sgn(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def _check_field(x: FieldElement, P: Ordering) -> None:
    if x.field != P.field:
        raise FieldMismatchError(f"element of {x.field} used with ordering of {P.field}")


def sign_at(x: FieldElement, P: Ordering) -> int:
    """Sign of the real image of ``x`` under the embedding ``P``."""
    _check_field(x, P)
    sp = _sgn(x.p)
    if not x.q:
        return sp
    sq = _sgn(x.q) * P.root_sign
    if sp == 0:
        return sq
    if sp == sq:
        return sp
    # opposite signs: the larger of p^2 and q^2 m wins; equality is impossible
    # because m is not a rational square
    return sp if x.p * x.p > x.q * x.q * x.field.m else sq


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def cmp_at(x: FieldElement, y: FieldElement, P: Ordering) -> Cmp:
    if x.field != y.field:
        raise FieldMismatchError(f"{x.field} vs {y.field}")
    return Cmp(sign_at(x - y, P))


def is_positive(x: FieldElement, P: Ordering) -> bool:
    return sign_at(x, P) > 0


def floor_at(x: FieldElement, P: Ordering) -> int:
    """Exact floor of the real image of ``x``."""
    _check_field(x, P)
    if not x.q:
        return int(x.p.numerator // x.p.denominator)
    r = x.q * P.root_sign
    t = r * r * x.field.m
    root = isqrt(int(t.numerator // t.denominator))
    p_floor = int(x.p.numerator // x.p.denominator)
    n = p_floor + root if r > 0 else p_floor - root - 1
    while sign_at(x - n, P) < 0:
        n -= 1
    while sign_at(x - (n + 1), P) >= 0:
        n += 1
    return n


def floor_sqrt_scaled(x: FieldElement, P: Ordering, k: int) -> int:
    """floor(sqrt(x) * 2**k) for x >=_P 0."""
    if sign_at(x, P) < 0:
        raise ValueError("square root of a negative element")
    return isqrt(floor_at(x * (1 << (2 * k)), P))


def floor_fourth_root_scaled(x: FieldElement, P: Ordering, k: int) -> int:
    """floor(x**(1/4) * 2**k) for x >=_P 0."""
    if sign_at(x, P) < 0:
        raise ValueError("fourth root of a negative element")
    return isqrt(isqrt(floor_at(x * (1 << (4 * k)), P)))


# ----------------------------------------------------------------------------
# Dyadic intervals
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicInterval:
    """The closed interval [lo / 2**exp, hi / 2**exp]."""

    lo: int
    hi: int
    exp: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("empty dyadic interval")

    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.exp) if self.exp >= 0 else Fraction(self.lo << -self.exp)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.exp) if self.exp >= 0 else Fraction(self.hi << -self.exp)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value: Fraction | int) -> bool:
        return self.lower <= value <= self.upper

    def contains_interval(self, other: DyadicInterval) -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def sign(self) -> int | None:
        """+1 or -1 when the interval excludes zero, 0 for [0, 0], else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def _aligned(self, other: DyadicInterval) -> tuple[int, int, int, int, int]:
        e = max(self.exp, other.exp)
        s1, s2 = e - self.exp, e - other.exp
        return self.lo << s1, self.hi << s1, other.lo << s2, other.hi << s2, e

    def __add__(self, other: DyadicInterval) -> DyadicInterval:
        a, b, c, d, e = self._aligned(other)
        return DyadicInterval(a + c, b + d, e)

    def __neg__(self) -> DyadicInterval:
        return DyadicInterval(-self.hi, -self.lo, self.exp)

    def __sub__(self, other: DyadicInterval) -> DyadicInterval:
        return self + (-other)

    def __mul__(self, other: DyadicInterval) -> DyadicInterval:
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return DyadicInterval(min(products), max(products), self.exp + other.exp)

    def rounded(self, exp: int) -> DyadicInterval:
        """Outward rounding onto the grid 2**-exp (only ever widens)."""
        if exp >= self.exp:
            s = exp - self.exp
            return DyadicInterval(self.lo << s, self.hi << s, exp)
        s = self.exp - exp
        return DyadicInterval(self.lo >> s, -((-self.hi) >> s), exp)

    @classmethod
    def point(cls, n: int) -> DyadicInterval:
        return cls(n, n, 0)


def approx(x: FieldElement, P: Ordering, bits: int) -> DyadicInterval:
    """Dyadic enclosure of width <= 2**-bits of the image of ``x`` under ``P``.

    The endpoints are the exact floor and ceiling on the 2**-bits grid, so the
    enclosures are nested as ``bits`` grows.
    """
    if bits < 1:
        raise ValueError("bits must be >= 1")
    if x.is_zero():
        return DyadicInterval(0, 0, bits)
    scaled = x * (1 << bits)
    lo = floor_at(scaled, P)
    hi = lo if scaled == lo else lo + 1
    return DyadicInterval(lo, hi, bits)


def sqrt_approx(x: FieldElement, P: Ordering, bits: int) -> DyadicInterval:
    """Enclosure of the positive square root of ``x`` (x >=_P 0)."""
    lo = floor_sqrt_scaled(x, P, bits)
    hi = lo if x * (1 << (2 * bits)) == lo * lo else lo + 1
    return DyadicInterval(lo, hi, bits)


# ----------------------------------------------------------------------------
# Squares
# ----------------------------------------------------------------------------

def _rational_sqrt(x):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


def sqrt_exact(x: FieldElement) -> FieldElement | None:
    """Some y in the field with y*y == x, or None when x is not a square."""
    field = x.field
    if x.is_zero():
        return field.zero
    if field.m is None or not x.q:
        r = _rational_sqrt(x.p)
        if r is not None:
            return field(r)
        if field.m is None:
            return None
        # x = m * v^2 with v rational gives the root v*sqrt(m)
        v = _rational_sqrt(x.p / field.m)
        return field(0, v) if v is not None else None
    # (u + v sqrt m)^2 = u^2 + m v^2 + 2uv sqrt m
    n = _rational_sqrt(x.norm())
    if n is None:
        return None
    for cand in ((x.p + n) / 2, (x.p - n) / 2):
        u = _rational_sqrt(cand)
        if u:
            v = x.q / (2 * u)
            y = field(u, v)
            if y * y == x:
                return y
    return None


def is_square(x: FieldElement) -> bool:
    return sqrt_exact(x) is not None


def positive_sqrt(x: FieldElement, P: Ordering) -> FieldElement | None:
    """The square root of ``x`` that is positive at ``P``, if it lies in the field."""
    r = sqrt_exact(x)
    if r is None:
        return None
    return -r if sign_at(r, P) < 0 else r
