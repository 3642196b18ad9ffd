"""Case dispatch, nil-orderings and signatures of rank-one hermitian forms.

Every configuration (algebra, involution, ordering) is reduced to a *frame*:
a working presentation of the algebra in which the involution takes one of
the standard shapes, plus the designated generator of the positive cone.

Orthogonal involutions are first brought to the form that fixes 1, i, j and
negates k.  When the new structure constants have mixed signs the involution
is not the one that negates i; the two differ by an inner twist
``sigma = Int(u) o sigma_i`` with u = j, and symmetric elements y for
``sigma`` correspond to the sigma_i-symmetric elements ``u^-1 y``.  All
mixed-sign formulas are evaluated on those twisted coordinates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    AlgebraMismatchError,
    NilOrderingError,
    NotSymmetricError,
    SingularElementError,
    SplitAlgebraError,
)
from .involution import (
    ORTHOGONAL,
    SYMPLECTIC,
    UNITARY,
    BasisChange,
    InvolutionDesc,
    apply,
    is_positive_involution,
    standardize_orthogonal,
    swap_generators,
    validate,
)
from .ordered_field import FieldElement, Ordering, cmp_at, Cmp, sign_at
from .quaternion import AlgebraDesc, QuatElement, is_invertible, quat_inverse, quat_mul


class CaseTag(enum.Enum):
    CASE1 = "Case1_symplectic"
    CASE2I = "Case2i"
    CASE2II = "Case2ii"
    CASE2III = "Case2iii"
    CASE3I = "Case3i"
    CASE3II = "Case3ii"
    CASE3III = "Case3iii"
    NIL_SYMPLECTIC = "NilSymplectic"
    NIL_UNITARY = "NilUnitary"

    @property
    def is_nil(self) -> bool:
        return self in (CaseTag.CASE2III, CaseTag.NIL_SYMPLECTIC, CaseTag.NIL_UNITARY)

    @property
    def is_unitary(self) -> bool:
        return self in (CaseTag.CASE3I, CaseTag.CASE3II, CaseTag.CASE3III, CaseTag.NIL_UNITARY)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SignatureConvention:
    orientation: int = 1

    def __post_init__(self) -> None:
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def flipped(self) -> SignatureConvention:
        return SignatureConvention(-self.orientation)


DEFAULT_CONVENTION = SignatureConvention()

# coordinate slot of the raw +2 generator in the working presentation
GENERATOR_SLOT = {
    CaseTag.CASE1: 0, CaseTag.CASE2I: 0, CaseTag.CASE2II: 0,
    CaseTag.CASE3I: 7, CaseTag.CASE3II: 5, CaseTag.CASE3III: 0,
}


@dataclass(frozen=True, eq=False)
class Frame:
    """A configuration reduced to its working presentation.

    ``change`` maps user coordinates to the working algebra.  ``twist`` is the
    inner twist of the mixed orthogonal case (None elsewhere); template
    coordinates are ``twist^-1 * y`` for a working element y.
    """

    case: CaseTag
    algebra: AlgebraDesc
    involution: InvolutionDesc
    ordering: Ordering
    change: BasisChange
    work_involution: InvolutionDesc
    twist: QuatElement | None

    @property
    def work(self) -> AlgebraDesc:
        return self.change.target

    @cached_property
    def twist_inverse(self) -> QuatElement | None:
        return None if self.twist is None else quat_inverse(self.twist)

    def to_template(self, y: QuatElement) -> QuatElement:
        return y if self.twist is None else quat_mul(self.twist_inverse, y)

    def from_template(self, s: QuatElement) -> QuatElement:
        return s if self.twist is None else quat_mul(self.twist, s)

    @property
    def template_generator(self) -> QuatElement:
        return self.work.basis(GENERATOR_SLOT[self.case])

    @property
    def work_generator(self) -> QuatElement:
        return self.from_template(self.template_generator)

    def generator(self, conv: SignatureConvention = DEFAULT_CONVENTION) -> QuatElement:
        """Designated generator in user coordinates (signature +2 under conv)."""
        if self.case.is_nil:
            raise NilOrderingError(f"{self.case} has no positive cone")
        return self.change.backward(self.work_generator) * conv.orientation


def _positive(x: FieldElement, P: Ordering) -> bool:
    return sign_at(x, P) > 0


@lru_cache(maxsize=512)
def determine_frame(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering) -> Frame:
    validate(sigma, alg)
    if P.field != alg.field:
        from .errors import FieldMismatchError
        raise FieldMismatchError("ordering and algebra live over different fields")
    identity = BasisChange.identity(alg)
    a_pos, b_pos = _positive(alg.a, P), _positive(alg.b, P)

    if sigma.kind == SYMPLECTIC:
        case = CaseTag.NIL_SYMPLECTIC if a_pos or b_pos else CaseTag.CASE1
        return Frame(case, alg, sigma, P, identity, sigma, None)

    if sigma.kind == UNITARY:
        if _positive(alg.delta, P):
            return Frame(CaseTag.NIL_UNITARY, alg, sigma, P, identity, sigma, None)
        change = identity
        if a_pos and b_pos:
            case = CaseTag.CASE3I
        elif not a_pos and not b_pos:
            case = CaseTag.CASE3III
        else:
            case = CaseTag.CASE3II
            if a_pos:
                change = swap_generators(alg)
        return Frame(case, alg, sigma, P, change, sigma, None)

    # orthogonal
    if not a_pos and not b_pos:
        return Frame(CaseTag.CASE2III, alg, sigma, P, identity, sigma, None)
    change = standardize_orthogonal(alg, sigma.v)
    std = change.target
    a_pos, b_pos = _positive(std.a, P), _positive(std.b, P)
    twist = None
    if a_pos and b_pos:
        case = CaseTag.CASE2I
    else:
        # the standard form cannot be (-,-): that pattern is presentation invariant
        case = CaseTag.CASE2II
        if a_pos:
            change = change.then(swap_generators(std))
        twist = change.target.basis(2)
    work = change.target
    return Frame(case, alg, sigma, P, change, InvolutionDesc.orthogonal(work.basis(3)), twist)


@lru_cache(maxsize=512)
def _check_reference_form(frame: Frame) -> None:
    """Where eta = <1> is used, the working involution must be positive at P."""
    if frame.case in (CaseTag.CASE1, CaseTag.CASE2I, CaseTag.CASE3III):
        if not is_positive_involution(frame.work_involution, frame.work, frame.ordering):
            raise AssertionError(f"{frame.case}: involution trace form is not positive definite")


def case_of(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering) -> CaseTag:
    return determine_frame(alg, sigma, P).case


def nil_check(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering) -> bool:
    """Whether P is a nil-ordering for (A, sigma)."""
    validate(sigma, alg)
    if sigma.kind == SYMPLECTIC:
        return _positive(alg.a, P) or _positive(alg.b, P)
    if sigma.kind == ORTHOGONAL:
        return sign_at(alg.a, P) < 0 and sign_at(alg.b, P) < 0
    return _positive(alg.delta, P)


def check_domain(frame: Frame, d: QuatElement) -> None:
    if d.alg != frame.algebra:
        raise AlgebraMismatchError("element lives in a different algebra")
    if frame.case.is_nil:
        raise NilOrderingError(f"{frame.ordering} is a nil-ordering ({frame.case})")
    if apply(frame.involution, d) != d:
        raise NotSymmetricError(f"{d} is not symmetric under the involution")


def _greater(lhs: FieldElement, rhs: FieldElement, P: Ordering) -> bool:
    return cmp_at(lhs, rhs, P) is Cmp.GT


def raw_signature(frame: Frame, d: QuatElement) -> int:
    """Signature of <d> with the designated generator at +2 (no orientation)."""
    P = frame.ordering
    s = frame.to_template(frame.change.forward(d))
    alg = frame.work
    a, b = alg.a, alg.b
    c = s.c
    case = frame.case
    if case is CaseTag.CASE1:
        return 2 * sign_at(c[0], P)
    if case is CaseTag.CASE2I:
        hit = _greater(c[0] * c[0], a * c[1] * c[1] + b * c[2] * c[2], P)
        lead = c[0]
    elif case is CaseTag.CASE2II:
        hit = _greater(c[0] * c[0], b * c[2] * c[2] - a * b * c[3] * c[3], P)
        lead = c[0]
    else:
        delta = alg.delta
        d0, d5, d6, d7 = c[0], c[5], c[6], c[7]
        if case is CaseTag.CASE3I:
            rest = d0 * d0 - a * delta * d5 * d5 - b * delta * d6 * d6
            hit = _greater(d7 * d7, rest / (-a * b * delta), P)
            lead = d7
        elif case is CaseTag.CASE3II:
            rest = d0 * d0 - b * delta * d6 * d6 + a * b * delta * d7 * d7
            hit = _greater(d5 * d5, rest / (a * delta), P)
            lead = d5
        else:
            rest = a * delta * d5 * d5 + b * delta * d6 * d6 - a * b * delta * d7 * d7
            hit = _greater(d0 * d0, rest, P)
            lead = d0
    return 2 * sign_at(lead, P) if hit else 0


def signature(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering,
              conv: SignatureConvention, d: QuatElement) -> int:
    """Signature of the rank-one hermitian form <d> at P, in {-2, 0, 2}."""
    frame = determine_frame(alg, sigma, P)
    check_domain(frame, d)
    if not is_invertible(d):
        raise SingularElementError(f"{d} is not invertible")
    return frame_signature(frame, conv, d)


def frame_signature(frame: Frame, conv: SignatureConvention, d: QuatElement) -> int:
    """Signature of an already validated invertible symmetric d."""
    _check_reference_form(frame)
    return conv.orientation * raw_signature(frame, d)


def designated_generator(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering,
                         conv: SignatureConvention = DEFAULT_CONVENTION) -> QuatElement:
    return determine_frame(alg, sigma, P).generator(conv)


def m_p(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering) -> int:
    """Maximal signature over invertible symmetric elements; the witness is
    :func:`designated_generator`."""
    frame = determine_frame(alg, sigma, P)
    if frame.case.is_nil:
        raise NilOrderingError(f"{P} is a nil-ordering ({frame.case})")
    if alg.division is False:
        raise SplitAlgebraError(f"{alg} is split; use the PSD predicate instead")
    witness = frame.generator()
    return signature(alg, sigma, P, DEFAULT_CONVENTION, witness)
