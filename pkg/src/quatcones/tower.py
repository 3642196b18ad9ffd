"""Multi-quadratic extensions F(sqrt(s1), ..., sqrt(sk)) [+ a formal sqrt(-1)].

Elements are sparse coefficient maps over F indexed by bitmasks: bit ``i``
stands for the generator sqrt(s_i) and, when the tower is imaginary, the top
bit stands for a formal generator with square -1.  Radicands are kept
independent modulo squares of F, so the monomials form a basis and the zero
test is coordinatewise.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import NonRealError, TowerMismatchError
from .ordered_field import (
    DyadicInterval,
    FieldElement,
    Ordering,
    approx,
    positive_sqrt,
    sign_at,
    sqrt_approx,
)

START_BITS = 32
MAX_BITS = 1 << 16


@dataclass(frozen=True)
class Tower:
    ordering: Ordering
    radicands: tuple[FieldElement, ...]
    imaginary: bool = False
    _squares: tuple[FieldElement, ...] = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for s in self.radicands:
            if sign_at(s, self.ordering) <= 0:
                raise ValueError(f"radicand {s} is not positive at {self.ordering}")
        field = self.ordering.field
        gens = list(self.radicands) + ([field(-1)] if self.imaginary else [])
        squares = []
        for mask in range(1 << len(gens)):
            prod = field.one
            for i, g in enumerate(gens):
                if mask >> i & 1:
                    prod = prod * g
            squares.append(prod)
        object.__setattr__(self, "_squares", tuple(squares))

    @classmethod
    def build(cls, ordering: Ordering, radicands: Iterable[FieldElement],
              imaginary: bool = False) -> Tower:
        """Tower over the given positive radicands, dropping dependent ones."""
        gens: list[FieldElement] = []
        for r in radicands:
            if _subset_root(gens, r, ordering) is None:
                gens.append(r)
        return cls(ordering, tuple(gens), imaginary)

    @property
    def field(self):
        return self.ordering.field

    @property
    def ngens(self) -> int:
        return len(self.radicands) + int(self.imaginary)

    @property
    def imag_bit(self) -> int:
        if not self.imaginary:
            raise NonRealError("tower has no imaginary generator")
        return 1 << len(self.radicands)

    def __call__(self, c: FieldElement | int) -> TowerElement:
        c = self.field(c)
        return TowerElement(self, {0: c} if c else {})

    @property
    def zero(self) -> TowerElement:
        return TowerElement(self, {})

    @property
    def one(self) -> TowerElement:
        return self(1)

    @property
    def i(self) -> TowerElement:
        """The formal square root of -1."""
        return TowerElement(self, {self.imag_bit: self.field.one})

    def sqrt(self, r: FieldElement | int, branch: int = 1) -> TowerElement:
        """Square root of ``r`` inside the tower.

        For r >_P 0 this is the positive root.  For r <_P 0 it is
        ``branch * i * sqrt(-r)`` with ``i`` the formal square root of -1.
        """
        r = self.field(r)
        s = sign_at(r, self.ordering)
        if s == 0:
            return self.zero
        if s < 0:
            return self.i * self.sqrt(-r) * branch
        hit = _subset_root(list(self.radicands), r, self.ordering)
        if hit is None:
            raise TowerMismatchError(f"sqrt({r}) does not lie in the tower {self.radicands}")
        mask, w = hit
        return TowerElement(self, {mask: w / self._squares[mask]})


def _subset_root(gens: list[FieldElement], r: FieldElement,
                 P: Ordering) -> tuple[int, FieldElement] | None:
    """(mask, w) with w >_P 0 and w^2 = r * prod(gens[mask]), if any."""
    idx = range(len(gens))
    for size in range(len(gens) + 1):
        for subset in combinations(idx, size):
            prod = r
            for i in subset:
                prod = prod * gens[i]
            w = positive_sqrt(prod, P)
            if w is not None:
                return sum(1 << i for i in subset), w
    return None


class TowerElement:
    """Immutable sparse element of a :class:`Tower`."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower: Tower, terms: Mapping[int, FieldElement]) -> None:
        self.tower = tower
        self.terms = {m: c for m, c in terms.items() if c}

    def _check(self, other: TowerElement) -> None:
        if other.tower != self.tower:
            raise TowerMismatchError("operands live in different towers")

    def _lift(self, other) -> TowerElement:
        if isinstance(other, TowerElement):
            self._check(other)
            return other
        return self.tower(other)

    def __add__(self, other) -> TowerElement:
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return TowerElement(self.tower, terms)

    __radd__ = __add__

    def __neg__(self) -> TowerElement:
        return TowerElement(self.tower, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> TowerElement:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> TowerElement:
        return self._lift(other) - self

    def __mul__(self, other) -> TowerElement:
        if isinstance(other, (int, FieldElement)) or not isinstance(other, TowerElement):
            c = self.tower.field(other)
            return TowerElement(self.tower, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        squares = self.tower._squares
        terms: dict[int, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                common = m1 & m2
                v = c1 * c2
                if common:
                    v = v * squares[common]
                key = m1 ^ m2
                terms[key] = terms[key] + v if key in terms else v
        return TowerElement(self.tower, terms)

    __rmul__ = __mul__

    def conjugate(self, bit: int) -> TowerElement:
        """Image under the automorphism negating the generator ``bit``."""
        return TowerElement(self.tower, {m: (-c if m & bit else c) for m, c in self.terms.items()})

    def complex_conjugate(self) -> TowerElement:
        if not self.tower.imaginary:
            return self
        return self.conjugate(self.tower.imag_bit)

    def inverse(self) -> TowerElement:
        if not self.terms:
            raise ZeroDivisionError("inverse of zero tower element")
        norm = self
        cofactor = self.tower.one
        for g in range(self.tower.ngens):
            c = norm.conjugate(1 << g)
            cofactor = cofactor * c
            norm = norm * c
        base = norm.terms.get(0)
        if base is None or len(norm.terms) != 1:
            raise ArithmeticError("norm descent did not reach the base field")
        return cofactor * base.inverse()

    def __truediv__(self, other) -> TowerElement:
        if isinstance(other, TowerElement):
            return self * other.inverse()
        return self * self.tower.field(other).inverse()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_real(self) -> bool:
        if not self.tower.imaginary:
            return True
        bit = self.tower.imag_bit
        return not any(m & bit for m in self.terms)

    def base_value(self) -> FieldElement | None:
        """The element as a member of F, or None if it has other components."""
        if not self.terms:
            return self.tower.field.zero
        if set(self.terms) == {0}:
            return self.terms[0]
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, TowerElement):
            return self.tower == other.tower and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == self.tower(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.tower, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            gens = [f"sqrt({self.tower.radicands[i]})" for i in range(len(self.tower.radicands))
                    if m >> i & 1]
            if self.tower.imaginary and m & self.tower.imag_bit:
                gens.append("I")
            parts.append("*".join([f"({self.terms[m]})"] + gens))
        return " + ".join(parts)


def tower_arith(op: str, x: TowerElement, y: TowerElement | None = None) -> TowerElement:
    if op == "inv":
        return x.inverse()
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if x.tower != y.tower:
        raise TowerMismatchError("operands live in different towers")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown tower operation {op!r}")


def interval_at(x: TowerElement, bits: int) -> DyadicInterval:
    """Dyadic enclosure of a real tower element at working precision ``bits``."""
    tower = x.tower
    P = tower.ordering
    roots = [sqrt_approx(s, P, bits) for s in tower.radicands]
    work = bits + 8
    total = DyadicInterval(0, 0, work)
    for m, c in x.terms.items():
        term = approx(c, P, bits)
        for i, r in enumerate(roots):
            if m >> i & 1:
                term = (term * r).rounded(work)
        total = total + term.rounded(work)
    return total


def tower_sign(x: TowerElement) -> int:
    """Exact sign of a real tower element in the real closure F_P."""
    if not x.terms:
        return 0
    if not x.is_real():
        raise NonRealError("sign of an element with a nonzero imaginary part")
    base = x.base_value()
    if base is not None:
        return sign_at(base, x.tower.ordering)
    bits = START_BITS
    while bits <= MAX_BITS:
        s = interval_at(x, bits).sign()
        if s:
            return s
        bits *= 2
    raise ArithmeticError("tower_sign exceeded the precision cap on a nonzero element")
