"""Involutions on quaternion algebras: application, classification, normal forms."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from .errors import InvalidInvolutionError
from .linalg import inverse, leading_minors, mat_mul, mat_vec
from .ordered_field import FieldElement, Ordering, sign_at
from .quaternion import AlgebraDesc, QuatElement, quat_conj, quat_mul, reduced_norm

SYMPLECTIC = "symplectic"
ORTHOGONAL = "orthogonal"
UNITARY = "unitary"


@dataclass(frozen=True)
class InvolutionDesc:
    """gamma, Int(v) o gamma for a pure invertible v, or gamma_0 (x) iota."""

    kind: str
    v: QuatElement | None = None

    @classmethod
    def symplectic(cls) -> InvolutionDesc:
        return cls(SYMPLECTIC)

    @classmethod
    def orthogonal(cls, v: QuatElement) -> InvolutionDesc:
        return cls(ORTHOGONAL, v)

    @classmethod
    def unitary(cls) -> InvolutionDesc:
        return cls(UNITARY)


def validate(sigma: InvolutionDesc, alg: AlgebraDesc) -> None:
    if sigma.kind == UNITARY:
        if not alg.is_unitary:
            raise InvalidInvolutionError("unitary involution needs an algebra with delta")
        return
    if alg.is_unitary:
        raise InvalidInvolutionError(f"{sigma.kind} involution on an algebra with centre F(sqrt(delta))")
    if sigma.kind == SYMPLECTIC:
        if sigma.v is not None:
            raise InvalidInvolutionError("symplectic involution takes no v")
        return
    if sigma.kind != ORTHOGONAL:
        raise InvalidInvolutionError(f"unknown involution kind {sigma.kind!r}")
    v = sigma.v
    if v is None or v.alg != alg:
        raise InvalidInvolutionError("orthogonal involution needs v in the algebra")
    if v[0]:
        raise InvalidInvolutionError("v must be pure (zero 1-coordinate)")
    if not reduced_norm(v):
        raise InvalidInvolutionError("v must be invertible")


def apply(sigma: InvolutionDesc, x: QuatElement) -> QuatElement:
    if sigma.kind == SYMPLECTIC:
        return quat_conj(x)
    if sigma.kind == ORTHOGONAL:
        v = sigma.v
        # v is pure, so v^-1 = -v / Nrd(v)
        return quat_mul(quat_mul(v, quat_conj(x)), v) / -reduced_norm(v)
    if sigma.kind == UNITARY:
        c = x.c
        # gamma_0 negates i, j, k; iota negates sqrt(delta)
        return QuatElement(x.alg, (c[0], -c[1], -c[2], -c[3], -c[4], c[5], c[6], c[7]))
    raise InvalidInvolutionError(f"unknown involution kind {sigma.kind!r}")


def is_symmetric(sigma: InvolutionDesc, x: QuatElement) -> bool:
    return apply(sigma, x) == x


# ----------------------------------------------------------------------------
# Changes of presentation
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BasisChange:
    """An F-algebra isomorphism from ``source`` onto ``target``.

    ``to_source`` has as columns the source coordinates of the target basis;
    ``to_target`` is its inverse.
    """

    source: AlgebraDesc
    target: AlgebraDesc
    to_source: tuple
    to_target: tuple
    is_identity: bool = False

    def forward(self, x: QuatElement) -> QuatElement:
        if self.is_identity:
            return x
        return QuatElement(self.target, mat_vec(self.to_target, x.c))

    def backward(self, y: QuatElement) -> QuatElement:
        if self.is_identity:
            return y
        return QuatElement(self.source, mat_vec(self.to_source, y.c))

    def then(self, other: BasisChange) -> BasisChange:
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        return BasisChange(self.source, other.target,
                           _freeze(mat_mul(self.to_source, other.to_source)),
                           _freeze(mat_mul(other.to_target, self.to_target)))

    @classmethod
    def identity(cls, alg: AlgebraDesc) -> BasisChange:
        one, zero = alg.field.one, alg.field.zero
        eye = tuple(tuple(one if r == c else zero for c in range(alg.dim)) for r in range(alg.dim))
        return cls(alg, alg, eye, eye, True)


def _freeze(M) -> tuple:
    return tuple(tuple(row) for row in M)


def change_presentation(alg: AlgebraDesc, new_i: QuatElement, new_j: QuatElement) -> BasisChange:
    """Re-present ``alg`` with generators new_i, new_j (pure, anticommuting, in A0)."""
    field = alg.field
    k = quat_mul(new_i, new_j)
    sq_i, sq_j = quat_mul(new_i, new_i), quat_mul(new_j, new_j)
    for sq in (sq_i, sq_j):
        if any(sq.c[1:]):
            raise ArithmeticError("new generators do not square into F")
    if quat_mul(new_j, new_i) != -k:
        raise ArithmeticError("new generators do not anticommute")
    target = AlgebraDesc(sq_i[0], sq_j[0], alg.delta, alg.declared_division)
    cols = [alg.one.c, new_i.c, new_j.c, k.c]
    if alg.is_unitary:
        r = alg.basis(4)
        cols = cols + [quat_mul(alg.element(col), r).c for col in cols]
    to_source = [[cols[c][r] for c in range(alg.dim)] for r in range(alg.dim)]
    to_target = inverse(to_source, field.zero, field.one)
    return BasisChange(alg, target, _freeze(to_source), _freeze(to_target))


def swap_generators(alg: AlgebraDesc) -> BasisChange:
    """(a,b) -> (b,a) via i' = j, j' = i (so k' = -k)."""
    return change_presentation(alg, alg.basis(2), alg.basis(1))


def _pure_form(alg: AlgebraDesc, x: Sequence[FieldElement], y: Sequence[FieldElement]) -> FieldElement:
    """Polar form of x -> x^2 on pure quaternions: a x1y1 + b x2y2 - ab x3y3."""
    a, b = alg.a, alg.b
    return a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3]


def _primitive(vec: list[FieldElement]) -> list[FieldElement]:
    """Positive rescaling clearing denominators and common integer content."""
    parts = [c for x in vec for c in (x.p, x.q) if c]
    if not parts:
        return vec
    den = lcm(*(c.denominator for c in parts))
    content = 0
    for c in parts:
        content = gcd(content, (c * den).numerator)
    scale = vec[0].field(den) / content
    return [x * scale for x in vec]


def standardize_orthogonal(alg: AlgebraDesc, v: QuatElement) -> BasisChange:
    """Presentation (a', b') in which Int(v) o gamma fixes 1, i', j' and negates k'.

    i' is the first pure basis direction (or pairwise sum) whose projection
    orthogonal to v is anisotropic, j' spans the remaining orthogonal line,
    and then k' = i'j' is proportional to v.
    """
    field = alg.field
    zero = field.zero
    qv = _pure_form(alg, v.c, v.c)
    units = [[zero] * 4 for _ in range(3)]
    for n in range(3):
        units[n][n + 1] = field.one
    candidates = units + [[x + y for x, y in zip(units[m], units[n])]
                          for m in range(3) for n in range(m + 1, 3)]

    def project(e, basis):
        out = list(e)
        for w, qw in basis:
            coef = _pure_form(alg, e, w) / qw
            out = [x - coef * y for x, y in zip(out, w)]
        return out

    chosen: list[tuple[list[FieldElement], FieldElement]] = [(list(v.c), qv)]
    for _ in range(2):
        for e in candidates:
            w = project(e, chosen)
            if not any(w):
                continue
            w = _primitive(w)
            qw = _pure_form(alg, w, w)
            if qw:
                chosen.append((w, qw))
                break
        else:
            raise ArithmeticError("degenerate orthogonal complement for an invertible pure v")
    new_i, new_j = (alg.element(w) for w, _ in chosen[1:])
    return change_presentation(alg, new_i, new_j)


# ----------------------------------------------------------------------------
# Classification
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str
    sym_basis: tuple[QuatElement, ...]


def classify(sigma: InvolutionDesc, alg: AlgebraDesc) -> Classification:
    validate(sigma, alg)
    if sigma.kind == SYMPLECTIC:
        return Classification(SYMPLECTIC, (alg.one,))
    if sigma.kind == UNITARY:
        return Classification(UNITARY, tuple(alg.basis(n) for n in (0, 5, 6, 7)))
    change = standardize_orthogonal(alg, sigma.v)
    basis = tuple(change.backward(change.target.basis(n)) for n in (0, 1, 2))
    return Classification(ORTHOGONAL, basis)


def trace_form_gram(sigma: InvolutionDesc, alg: AlgebraDesc) -> list[list[FieldElement]]:
    """Gram matrix of (x, y) -> F-part of Trd(sigma(x) y) on the F-basis."""
    basis = [alg.basis(n) for n in range(alg.dim)]
    images = [apply(sigma, e) for e in basis]
    return [[quat_mul(s, e)[0] * 2 for e in basis] for s in images]


def is_positive_involution(sigma: InvolutionDesc, alg: AlgebraDesc, P: Ordering) -> bool:
    """Whether the involution trace form is positive definite at P."""
    return all(sign_at(m, P) > 0 for m in leading_minors(trace_form_gram(sigma, alg)))
