"""Quaternion algebras (a,b)_K over K = F or K = F(sqrt(delta)).

First-kind algebras have the F-basis 1, i, j, k.  For the unitary case the
algebra is A0 (x)_F K, stored on the 8-element F-basis

    1, i, j, k, sqrt(d), i*sqrt(d), j*sqrt(d), k*sqrt(d)

so that symmetric elements and certificate formulas stay F-linear.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sympy import factorint

from .errors import AlgebraMismatchError, InvalidAlgebraError, UnsupportedFieldError
from .ordered_field import Field, FieldElement, is_square

INFINITY = "inf"

BASIS_NAMES = ("1", "i", "j", "k", "sqrt(d)", "i*sqrt(d)", "j*sqrt(d)", "k*sqrt(d)")

# e_p * e_q = sign * factor * e_r on the quaternion basis, factor in {1, a, b, ab}
_QTABLE = {
    (0, 0): (0, 1, ""), (0, 1): (1, 1, ""), (0, 2): (2, 1, ""), (0, 3): (3, 1, ""),
    (1, 0): (1, 1, ""), (1, 1): (0, 1, "a"), (1, 2): (3, 1, ""), (1, 3): (2, 1, "a"),
    (2, 0): (2, 1, ""), (2, 1): (3, -1, ""), (2, 2): (0, 1, "b"), (2, 3): (1, -1, "b"),
    (3, 0): (3, 1, ""), (3, 1): (2, -1, "a"), (3, 2): (1, 1, "b"), (3, 3): (0, -1, "ab"),
}


@dataclass(frozen=True)
class AlgebraDesc:
    """(a,b)_F, or (a,b)_F (x) F(sqrt(delta)) when ``delta`` is given.

    ``declared_division`` records the user's division/split declaration for
    quadratic base fields, where it cannot be verified.
    """

    a: FieldElement
    b: FieldElement
    delta: FieldElement | None = None
    declared_division: bool | None = None
    _table: tuple = dc_field(init=False, repr=False, compare=False)
    _hash: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.a.field != self.b.field:
            raise InvalidAlgebraError("a and b lie in different fields")
        if self.a.is_zero() or self.b.is_zero():
            raise InvalidAlgebraError("a and b must be nonzero")
        if self.delta is not None:
            if self.delta.field != self.a.field:
                raise InvalidAlgebraError("delta lies in a different field")
            if self.delta.is_zero() or is_square(self.delta):
                raise InvalidAlgebraError(f"delta = {self.delta} is a square in {self.field}")
        object.__setattr__(self, "_table", self._build_table())
        object.__setattr__(self, "_hash", hash((self.a, self.b, self.delta, self.declared_division)))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, AlgebraDesc):
            return NotImplemented
        return (self._hash == other._hash and self.a == other.a and self.b == other.b
                and self.delta == other.delta and self.declared_division == other.declared_division)

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def over(cls, field: Field, a, b, delta=None, declared_division: bool | None = None):
        return cls(field(a), field(b), None if delta is None else field(delta),
                   declared_division)

    @property
    def field(self) -> Field:
        return self.a.field

    @property
    def is_unitary(self) -> bool:
        return self.delta is not None

    @property
    def dim(self) -> int:
        return 8 if self.is_unitary else 4

    def _build_table(self) -> tuple:
        factors = {"": self.field.one, "a": self.a, "b": self.b, "ab": self.a * self.b}
        n = self.dim
        table = [[None] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                r, sign, f = _QTABLE[(x % 4, y % 4)]
                coef = factors[f] * sign
                s = x // 4 + y // 4
                if s == 2:
                    coef = coef * self.delta
                    s = 0
                table[x][y] = (r + 4 * s, coef)
        return tuple(tuple(row) for row in table)

    # -- element constructors -------------------------------------------------
    def element(self, coeffs: Iterable) -> QuatElement:
        return QuatElement(self, tuple(self.field(c) for c in coeffs))

    def basis(self, n: int) -> QuatElement:
        return QuatElement(self, tuple(self.field(int(i == n)) for i in range(self.dim)))

    def scalar(self, c) -> QuatElement:
        c = self.field(c)
        return QuatElement(self, (c,) + (self.field.zero,) * (self.dim - 1))

    @property
    def one(self) -> QuatElement:
        return self.scalar(1)

    @property
    def zero(self) -> QuatElement:
        return self.scalar(0)

    @cached_property
    def division(self) -> bool | None:
        """True/False when known; None for an undeclared quadratic base field."""
        if self.field.is_rational:
            return is_division(self)
        return self.declared_division

    def __str__(self) -> str:
        base = f"({self.a}, {self.b})_{self.field}"
        return base if self.delta is None else f"{base} (x) {self.field}(sqrt({self.delta}))"


class QuatElement:
    """Immutable coefficient vector over F in the algebra's fixed basis."""

    __slots__ = ("alg", "c")

    def __init__(self, alg: AlgebraDesc, coeffs: Sequence[FieldElement]) -> None:
        coeffs = tuple(coeffs)
        if len(coeffs) != alg.dim:
            raise AlgebraMismatchError(f"expected {alg.dim} coefficients, got {len(coeffs)}")
        field = alg.field
        for x in coeffs:
            if x.field is not field and x.field != field:
                raise AlgebraMismatchError(f"coefficient {x!r} not in {alg.field}")
        self.alg = alg
        self.c = coeffs

    def _same(self, other: QuatElement) -> None:
        if other.alg is not self.alg and other.alg != self.alg:
            raise AlgebraMismatchError("elements of different algebras")

    def __add__(self, other: QuatElement) -> QuatElement:
        self._same(other)
        return QuatElement(self.alg, tuple(x + y for x, y in zip(self.c, other.c)))

    def __sub__(self, other: QuatElement) -> QuatElement:
        self._same(other)
        return QuatElement(self.alg, tuple(x - y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> QuatElement:
        return QuatElement(self.alg, tuple(-x for x in self.c))

    def __mul__(self, other) -> QuatElement:
        if isinstance(other, QuatElement):
            return quat_mul(self, other)
        s = self.alg.field(other)
        return QuatElement(self.alg, tuple(x * s for x in self.c))

    def __rmul__(self, other) -> QuatElement:
        s = self.alg.field(other)
        return QuatElement(self.alg, tuple(s * x for x in self.c))

    def __truediv__(self, other) -> QuatElement:
        s = self.alg.field(other).inverse()
        return QuatElement(self.alg, tuple(x * s for x in self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __getitem__(self, n: int) -> FieldElement:
        return self.c[n]

    def __len__(self) -> int:
        return len(self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuatElement):
            return NotImplemented
        return self.alg == other.alg and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.alg, self.c))

    def __repr__(self) -> str:
        terms = [f"({x})*{BASIS_NAMES[n]}" if n else f"({x})"
                 for n, x in enumerate(self.c) if x]
        return " + ".join(terms) if terms else "0"


def quat_mul(x: QuatElement, y: QuatElement) -> QuatElement:
    x._same(y)
    alg = x.alg
    table = alg._table
    zero = alg.field.zero
    out = [zero] * alg.dim
    for m, xm in enumerate(x.c):
        if not xm:
            continue
        row = table[m]
        for n, yn in enumerate(y.c):
            if not yn:
                continue
            r, coef = row[n]
            out[r] = out[r] + xm * yn * coef
    return QuatElement(alg, out)


def quat_conj(x: QuatElement) -> QuatElement:
    """Quaternion conjugation (gamma, or gamma_0 (x) id on the centre)."""
    c = x.c
    if x.alg.dim == 4:
        return QuatElement(x.alg, (c[0], -c[1], -c[2], -c[3]))
    return QuatElement(x.alg, (c[0], -c[1], -c[2], -c[3], c[4], -c[5], -c[6], -c[7]))


def reduced_norm(x: QuatElement) -> FieldElement | tuple[FieldElement, FieldElement]:
    """Nrd(x) = x * gamma(x).

    Returns an element of F for first-kind algebras and a pair (r, s) meaning
    r + s*sqrt(delta) in the unitary case.
    """
    alg = x.alg
    a, b = alg.a, alg.b
    c = x.c
    if alg.dim == 4:
        return c[0] * c[0] - a * c[1] * c[1] - b * c[2] * c[2] + a * b * c[3] * c[3]
    # X0^2 - a X1^2 - b X2^2 + ab X3^2 with X_n = c_n + c_{n+4} sqrt(delta)
    delta = alg.delta
    r = s = alg.field.zero
    for n, w in ((0, 1), (1, -a), (2, -b), (3, a * b)):
        p, q = c[n], c[n + 4]
        if p or q:
            r = r + (p * p + delta * q * q) * w
            s = s + p * q * 2 * w
    return r, s


def is_invertible(x: QuatElement) -> bool:
    n = reduced_norm(x)
    if isinstance(n, tuple):
        return bool(n[0]) or bool(n[1])
    return bool(n)


def quat_inverse(x: QuatElement) -> QuatElement:
    alg = x.alg
    n = reduced_norm(x)
    g = quat_conj(x)
    if not isinstance(n, tuple):
        if not n:
            raise ZeroDivisionError("element has zero reduced norm")
        return g / n
    r, s = n
    # (r + s sqrt d)^-1 = (r - s sqrt d) / (r^2 - d s^2); the denominator is
    # nonzero because delta is not a square in F
    den = r * r - alg.delta * s * s
    if not den:
        raise ZeroDivisionError("element has zero reduced norm")
    central = alg.scalar(r / den) + alg.basis(4) * (-s / den)
    return quat_mul(g, central)


# ----------------------------------------------------------------------------
# Local Hilbert symbols over Q
# ----------------------------------------------------------------------------

def _as_int_class(x) -> int:
    """An integer in the same square class as the nonzero rational x."""
    x = Fraction(x)
    if not x:
        raise ValueError("Hilbert symbol of zero")
    return x.numerator * x.denominator


def _split_valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def hilbert_symbol(a, b, place) -> int:
    """Local Hilbert symbol (a, b)_v for nonzero rationals a, b.

    ``place`` is a prime number or :data:`INFINITY`.
    """
    a, b = _as_int_class(a), _as_int_class(b)
    if place == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= _legendre(u, p)
    if alpha % 2:
        sign *= _legendre(v, p)
    return sign


def relevant_places(a, b) -> list:
    """Infinity followed by the primes dividing 2 * num/den of a and b."""
    n = 2
    for x in (Fraction(a), Fraction(b)):
        n *= abs(x.numerator) * x.denominator
    return [INFINITY] + sorted(factorint(n))


def hilbert_table(a, b) -> dict:
    return {place: hilbert_symbol(a, b, place) for place in relevant_places(a, b)}


def _rational_pair(alg: AlgebraDesc) -> tuple[Fraction, Fraction]:
    if not alg.field.is_rational:
        raise UnsupportedFieldError(
            "division status over quadratic fields must be declared, not computed")
    return alg.a.p, alg.b.p


def is_local_square(x, place) -> bool:
    """Whether the nonzero rational x is a square in Q_v."""
    x = Fraction(x)
    if place == INFINITY:
        return x > 0
    p = int(place)
    n = _as_int_class(x)
    v, u = _split_valuation(n, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return _legendre(u, p) == 1


def is_division(alg: AlgebraDesc) -> bool:
    """Whether the algebra is a division algebra (base field Q only).

    For first-kind algebras this is the existence of a place with Hilbert
    symbol -1.  In the unitary case A = A0 (x) Q(sqrt(delta)) stays division
    exactly when delta is a local square at some place where A0 ramifies.
    """
    a, b = _rational_pair(alg)
    ramified = [v for v, s in hilbert_table(a, b).items() if s == -1]
    if alg.delta is None:
        return bool(ramified)
    delta = alg.delta.p
    return any(is_local_square(delta, v) for v in ramified)
