"""Independent signature path through explicit 2x2 splitting matrices.

Each working presentation is split over a tower of square roots of |a|,
|b|, |delta| (plus a formal sqrt(-1) where needed) by sending i and j to
fixed 2x2 matrices; sqrt(delta) goes to the scalar -I*sqrt(-delta).  The
involution becomes X -> Phi X^* Phi^-1 with X^* the transpose, conjugated
in the unitary cases.  Signatures are read off the hermitian matrix
Phi^-1 lambda(d) by the sign of its determinant and trace.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CaseMismatchError, NilOrderingError, SingularElementError
from .involution import apply
from .ordered_field import FieldElement, Ordering, sign_at
from .quaternion import AlgebraDesc, QuatElement, quat_mul
from .signature import CaseTag, Frame, SignatureConvention, check_domain, determine_frame
from .tower import Tower, TowerElement, tower_sign


@dataclass(frozen=True)
class SplitMatrix:
    """2x2 matrix over a tower, entries in row-major order."""

    entries: tuple[TowerElement, TowerElement, TowerElement, TowerElement]

    @classmethod
    def of(cls, a, b, c, d) -> SplitMatrix:
        return cls((a, b, c, d))

    @classmethod
    def scalar(cls, tower: Tower, x) -> SplitMatrix:
        x = x if isinstance(x, TowerElement) else tower(x)
        return cls((x, tower.zero, tower.zero, x))

    def __getitem__(self, rc: tuple[int, int]) -> TowerElement:
        r, c = rc
        return self.entries[2 * r + c]

    def __add__(self, other: SplitMatrix) -> SplitMatrix:
        return SplitMatrix(tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> SplitMatrix:
        return SplitMatrix(tuple(-x for x in self.entries))

    def scale(self, c) -> SplitMatrix:
        return SplitMatrix(tuple(x * c for x in self.entries))

    def __matmul__(self, other: SplitMatrix) -> SplitMatrix:
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return SplitMatrix((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def transpose(self) -> SplitMatrix:
        a, b, c, d = self.entries
        return SplitMatrix((a, c, b, d))

    def conj_transpose(self) -> SplitMatrix:
        return SplitMatrix(tuple(x.complex_conjugate() for x in self.transpose().entries))

    def det(self) -> TowerElement:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> TowerElement:
        return self.entries[0] + self.entries[3]

    def inverse(self) -> SplitMatrix:
        a, b, c, d = self.entries
        inv = self.det().inverse()
        return SplitMatrix((d * inv, -b * inv, -c * inv, a * inv))


@dataclass(frozen=True, eq=False)
class Splitting:
    """lambda on the working basis, with Phi and the transpose flavour."""

    frame: Frame
    tower: Tower
    images: tuple[SplitMatrix, ...]
    phi: SplitMatrix
    conjugate: bool

    def of_work(self, x: QuatElement) -> SplitMatrix:
        total = SplitMatrix.scalar(self.tower, 0)
        for coef, image in zip(x.c, self.images):
            if coef:
                total = total + image.scale(coef)
        return total

    def of_user(self, x: QuatElement) -> SplitMatrix:
        return self.of_work(self.frame.change.forward(x))

    def star(self, X: SplitMatrix) -> SplitMatrix:
        """Matrix image of the involution: Phi X^* Phi^-1."""
        Xt = X.conj_transpose() if self.conjugate else X.transpose()
        return self.phi @ Xt @ self.phi.inverse()


def _abs_at(x: FieldElement, P: Ordering) -> FieldElement:
    return x if sign_at(x, P) > 0 else -x


def _tables(frame: Frame, tower: Tower, corrupt: bool):
    """Images of i and j, Phi, and whether the involution conjugates entries."""
    alg = frame.work
    root = tower.sqrt
    z = tower.zero
    a, b = alg.a, alg.b
    case = frame.case
    if case in (CaseTag.CASE1, CaseTag.CASE2I, CaseTag.CASE3III):
        # diag(sqrt a, -sqrt a), antidiag(sqrt b, sqrt b); imaginary roots when negative
        i_img = SplitMatrix.of(root(a), z, z, -root(a))
        j_img = SplitMatrix.of(z, root(b), root(b), z)
    elif case is CaseTag.CASE2II:
        i_img = SplitMatrix.of(z, root(-a), -root(-a), z)
        j_img = SplitMatrix.of(z, root(b), root(b), z)
    elif case is CaseTag.CASE3I:
        i_img = SplitMatrix.of(root(a), z, z, -root(a))
        j_img = SplitMatrix.of(z, root(-b), -root(-b), z)
    elif case is CaseTag.CASE3II:
        i_img = SplitMatrix.of(z, root(a), root(a), z)
        j_img = SplitMatrix.of(root(b), z, z, -root(b))
    else:
        raise NilOrderingError(f"no splitting table for {case}")
    if corrupt:
        # flip the sign of one nonzero entry of the image of j
        e = list(j_img.entries)
        n = 2 if e[2] else 3
        e[n] = -e[n]
        j_img = SplitMatrix(tuple(e))
    one, zero = tower.one, tower.zero
    if case is CaseTag.CASE1:
        phi = SplitMatrix.of(zero, one, -one, zero)
    elif case is CaseTag.CASE2II:
        phi = j_img
    elif case in (CaseTag.CASE3I, CaseTag.CASE3II):
        phi = SplitMatrix.of(zero, one, one, zero)
    else:
        phi = SplitMatrix.scalar(tower, 1)
    return i_img, j_img, phi, case.is_unitary


@lru_cache(maxsize=256)
def splitting(frame: Frame, corrupt: bool = False) -> Splitting:
    alg = frame.work
    P = frame.ordering
    radicands = [_abs_at(alg.a, P), _abs_at(alg.b, P)]
    if alg.is_unitary:
        radicands.append(_abs_at(alg.delta, P))
    imaginary = frame.case in (CaseTag.CASE1, CaseTag.CASE3I, CaseTag.CASE3II, CaseTag.CASE3III)
    tower = Tower.build(P, radicands, imaginary)
    i_img, j_img, phi, conjugate = _tables(frame, tower, corrupt)
    base = [SplitMatrix.scalar(tower, 1), i_img, j_img, i_img @ j_img]
    if alg.is_unitary:
        root_delta = SplitMatrix.scalar(tower, tower.sqrt(alg.delta, branch=-1))
        base = base + [m @ root_delta for m in base]
    return Splitting(frame, tower, tuple(base), phi, conjugate)


def _frame_for(alg, sigma, P, case) -> Frame:
    frame = determine_frame(alg, sigma, P)
    if case is not None and CaseTag(case) is not frame.case:
        raise CaseMismatchError(f"configuration is {frame.case}, not {CaseTag(case)}")
    if frame.case.is_nil:
        raise NilOrderingError(f"{P} is a nil-ordering ({frame.case})")
    return frame


def split_matrix(alg: AlgebraDesc, sigma, P: Ordering, case, x: QuatElement) -> SplitMatrix:
    """lambda(x) for x given in the user presentation."""
    return splitting(_frame_for(alg, sigma, P, case)).of_user(x)


@dataclass
class HomomorphismReport:
    trials: int
    multiplicative_failures: list = field(default_factory=list)
    involution_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.multiplicative_failures and not self.involution_failures


def check_homomorphism(alg: AlgebraDesc, sigma, P: Ordering, case, trials: int,
                       seed: int = 0, corrupt: bool = False, sampler=None) -> HomomorphismReport:
    """Sample lambda(xy) = lambda(x)lambda(y) and lambda(sigma x) = Phi lambda(x)^* Phi^-1."""
    frame = _frame_for(alg, sigma, P, case)
    split = splitting(frame, corrupt)
    rng = random.Random(seed)
    draw = sampler if sampler is not None else (lambda: _random_element(alg, rng))
    report = HomomorphismReport(trials)
    basis = [alg.basis(n) for n in range(alg.dim)]
    for n in range(trials):
        # the first trials walk the basis so structural errors surface immediately
        if n < len(basis) ** 2:
            x, y = basis[n // len(basis)], basis[n % len(basis)]
        else:
            x, y = draw(), draw()
        X, Y = split.of_user(x), split.of_user(y)
        if split.of_user(quat_mul(x, y)) != X @ Y:
            report.multiplicative_failures.append((x, y))
        if split.of_user(apply(sigma, x)) != split.star(X):
            report.involution_failures.append(x)
    return report


def _random_element(alg: AlgebraDesc, rng: random.Random) -> QuatElement:
    field_ = alg.field
    def coef():
        p = rng.randint(-9, 9)
        q = rng.randint(-9, 9) if not field_.is_rational else 0
        return field_(p, q) / rng.randint(1, 5)
    return alg.element([coef() for _ in range(alg.dim)])


def oracle_matrix(frame: Frame, d: QuatElement) -> SplitMatrix:
    """The hermitian matrix whose spectrum carries the signature of <d>."""
    split = splitting(frame)
    image = split.of_user(d)
    if frame.case is CaseTag.CASE1:
        return image
    return split.phi.inverse() @ image


def _raw_oracle(frame: Frame, d: QuatElement) -> int:
    M = oracle_matrix(frame, d)
    det_sign = tower_sign(M.det())
    if det_sign == 0:
        raise SingularElementError(f"{d} is singular")
    if det_sign < 0:
        return 0
    return 2 * tower_sign(M.trace())


@lru_cache(maxsize=256)
def _orientation_of(frame: Frame) -> int:
    raw = _raw_oracle(frame, frame.generator())
    if raw == 0:
        raise AssertionError("designated generator has signature 0 in the split picture")
    return raw // 2


def signature_oracle(alg: AlgebraDesc, sigma, P: Ordering, conv: SignatureConvention,
                     case, d: QuatElement) -> int:
    """Signature of <d> recomputed from the splitting tables."""
    frame = _frame_for(alg, sigma, P, case)
    check_domain(frame, d)
    return conv.orientation * _orientation_of(frame) * _raw_oracle(frame, d)
