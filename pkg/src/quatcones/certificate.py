"""Explicit positivity certificates d = sum u_n sigma(x_n) g x_n.

Every positive element d is written against the designated generator g as

    d = sigma(c) g c + (t - f(beta)) g

where f(x) = u x^2 + v / x^2, t is the generator coordinate of d and beta is
a dyadic number with f(beta) strictly between the minimum 2 sqrt(uv) and t.
Conversely the generator is recovered from any positive u by conjugating
with a handful of basis elements.  Composing the two gives a certificate of
d relative to u.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cone import Combination, ConeVerdict, Term, eval_combination, member
from .errors import IntervalEmptyError, NotInConeError
from .involution import InvolutionDesc, apply
from .ordered_field import FieldElement, Ordering, floor_fourth_root_scaled, sign_at
from .quaternion import AlgebraDesc, QuatElement, quat_mul
from .signature import (
    DEFAULT_CONVENTION,
    CaseTag,
    Frame,
    SignatureConvention,
    determine_frame,
)

MAX_BETA_BITS = 4096


@dataclass(frozen=True)
class Certificate:
    case: str
    target: QuatElement
    combination: Combination
    beta: FieldElement | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def generator(self) -> QuatElement:
        return self.combination.generator

    @property
    def terms(self) -> tuple[Term, ...]:
        return self.combination.terms


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# ----------------------------------------------------------------------------
# The one-variable minimization
# ----------------------------------------------------------------------------

def f_eval(u: FieldElement, v: FieldElement, x: FieldElement) -> FieldElement:
    """u x^2 + v / x^2."""
    if not x:
        raise ZeroDivisionError("f is undefined at 0")
    sq = x * x
    return u * sq + v / sq


def find_beta(u: FieldElement, v: FieldElement, t: FieldElement, P: Ordering) -> FieldElement:
    """A dyadic beta != 0 with 2 sqrt(uv) < f(beta) < t at P.

    Candidates are x* = (v/u)^(1/4) rounded half-up to k binary places for
    k = 0, 1, 2, ...; a candidate sitting exactly on the minimum is nudged
    by 2^-(k+3).
    """
    if sign_at(u, P) <= 0 or sign_at(v, P) <= 0:
        raise IntervalEmptyError("u and v must be positive")
    bound = u * v * 4
    if sign_at(t, P) <= 0 or sign_at(t * t - bound, P) <= 0:
        raise IntervalEmptyError(f"t = {t} is not above the minimum 2*sqrt(uv)")
    field_ = u.field
    ratio = v / u
    for k in range(MAX_BETA_BITS + 1):
        scaled = floor_fourth_root_scaled(ratio, P, k + 1)
        beta = field_((scaled + 1) // 2) / (1 << k)
        if not beta:
            continue
        value = f_eval(u, v, beta)
        gap = sign_at(value * value - bound, P)
        if gap == 0:
            beta = beta + field_(1) / (1 << (k + 3))
            value = f_eval(u, v, beta)
            gap = sign_at(value * value - bound, P)
        if gap > 0 and sign_at(t - value, P) > 0:
            return beta
    raise ArithmeticError("beta search exceeded its precision cap")


# ----------------------------------------------------------------------------
# Case templates (working coordinates)
# ----------------------------------------------------------------------------

def _lemma_data(frame: Frame, s: QuatElement):
    """(u, v, t, c_of_beta) for the template coordinates s of a positive d."""
    alg = frame.work
    a, b, c = alg.a, alg.b, s.c
    case = frame.case
    if case is CaseTag.CASE1:
        return alg.field.one, alg.field.zero, c[0], None
    if case is CaseTag.CASE2I:
        u, v, t = alg.field.one, (a * c[1] * c[1] + b * c[2] * c[2]) / 4, c[0]
        weights = {1: c[1] / 2, 2: c[2] / 2}
    elif case is CaseTag.CASE2II:
        u, v, t = alg.field.one, (b * c[2] * c[2] - a * b * c[3] * c[3]) / 4, c[0]
        weights = {2: c[2] / 2, 3: c[3] / 2}
    else:
        delta = alg.delta
        if case is CaseTag.CASE3I:
            u = -a * b * delta
            v = (c[0] * c[0] - a * delta * c[5] * c[5] - b * delta * c[6] * c[6]) / (
                a * a * b * b * delta * delta * 4)
            t = c[7]
            scale = -(a * b * delta * 2).inverse()
            weights = {n: c[n] * scale for n in (0, 5, 6)}
        elif case is CaseTag.CASE3II:
            u = a * delta
            v = (c[0] * c[0] - b * delta * c[6] * c[6] + a * b * delta * c[7] * c[7]) / (
                a * a * delta * delta * 4)
            t = c[5]
            scale = (a * delta * 2).inverse()
            weights = {n: c[n] * scale for n in (0, 6, 7)}
        else:
            u = alg.field.one
            v = (a * delta * c[5] * c[5] + b * delta * c[6] * c[6]
                 - a * b * delta * c[7] * c[7]) / 4
            t = c[0]
            weights = {n: c[n] / 2 for n in (5, 6, 7)}
    slot = frame.template_generator

    def c_of(beta: FieldElement) -> QuatElement:
        coeffs = [alg.field.zero] * alg.dim
        for n, w in weights.items():
            coeffs[n] = w / beta
        out = alg.element(coeffs) + slot * beta
        return out

    return u, v, t, c_of


def _positive_frame(alg, sigma, P, conv, d, what: str) -> Frame:
    verdict = member(alg, sigma, P, conv, d)
    if verdict is not ConeVerdict.PLUS:
        raise NotInConeError(f"{what} has verdict {verdict}, not PlusCone")
    return determine_frame(alg, sigma, P)


def _finish(frame: Frame, conv: SignatureConvention, target: QuatElement,
            generator: QuatElement, pairs, beta=None, notes=()) -> Certificate:
    """Map working-coordinate terms back to the user presentation and verify."""
    back = frame.change.backward
    terms = tuple(Term(u, back(x)) for u, x in pairs)
    cert = Certificate(frame.case.value, target, Combination(generator, terms), beta, tuple(notes))
    result = verify(cert, frame.algebra, frame.involution, frame.ordering)
    if not result:
        raise AssertionError(f"internal error: constructed certificate fails ({result.reason})")
    return cert


def certify_from_generator(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering,
                           conv: SignatureConvention, d: QuatElement) -> Certificate:
    """Certificate of d in the closure of the designated generator."""
    frame = _positive_frame(alg, sigma, P, conv, d, "target")
    g = frame.generator(conv)
    s = frame.to_template(frame.change.forward(d * conv.orientation))
    u, v, t, c_of = _lemma_data(frame, s)
    one = frame.work.one
    if not v:
        return _finish(frame, conv, d, g, [(t, one)], notes=("scalar direction",))
    beta = find_beta(u, v, t, P)
    c = c_of(beta)
    rest = t - f_eval(u, v, beta)
    return _finish(frame, conv, d, g, [(P.field.one, c), (rest, one)], beta)


def _conjugator_sign(m: int, n: int) -> int:
    """+1 if the unitary symmetric basis elements at slots m, n commute, else -1."""
    q = {0: 0, 5: 1, 6: 2, 7: 3}
    x, y = q[m], q[n]
    return 1 if x == 0 or y == 0 or x == y else -1


def generator_in_cone_of(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering,
                         conv: SignatureConvention, u: QuatElement) -> Certificate:
    """Certificate expressing the designated generator in the closure of u."""
    frame = _positive_frame(alg, sigma, P, conv, u, "generator candidate")
    g = frame.generator(conv)
    work = frame.work
    s = frame.to_template(frame.change.forward(u * conv.orientation))
    slot = frame.template_generator
    gen_index = next(n for n in range(work.dim) if slot.c[n])
    lead = s.c[gen_index]
    if s == slot * lead:
        return _finish(frame, conv, g, u, [(lead.inverse(), work.one)])
    a, b = work.a, work.b
    case = frame.case
    if case is CaseTag.CASE2I:
        pairs = [((a * lead * 2).inverse(), work.basis(1)),
                 ((b * lead * 2).inverse(), work.basis(2))]
    elif case is CaseTag.CASE2II:
        pairs = [((b * lead * 2).inverse(), work.basis(2)),
                 ((-a * b * lead * 2).inverse(), work.basis(3))]
    else:
        delta = work.delta
        squares = {0: work.field.one, 5: a * delta, 6: b * delta, 7: -a * b * delta}
        pairs = [(work.field(_conjugator_sign(m, gen_index)) / (squares[m] * lead * 4),
                  work.basis(m)) for m in (0, 5, 6, 7)]
    for coef, _ in pairs:
        if sign_at(coef, P) <= 0:
            raise AssertionError(f"internal error: absorption coefficient {coef} not positive")
    return _finish(frame, conv, g, u, pairs)


def certify_membership(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering,
                       conv: SignatureConvention, d: QuatElement, u: QuatElement) -> Certificate:
    """Flat certificate of d in the closure of the positive element u."""
    to_generator = certify_from_generator(alg, sigma, P, conv, d)
    from_u = generator_in_cone_of(alg, sigma, P, conv, u)
    pairs = [(t1.u * t2.u, quat_mul(t2.x, t1.x))
             for t1 in to_generator.terms for t2 in from_u.terms]
    terms = tuple(Term(c, x) for c, x in pairs)
    cert = Certificate(to_generator.case, d, Combination(u, terms), to_generator.beta,
                       ("composed with generator absorption",))
    result = verify(cert, alg, sigma, P)
    if not result:
        raise AssertionError(f"internal error: composed certificate fails ({result.reason})")
    return cert


def verify(cert: Certificate, alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering) -> VerifyResult:
    """Exact replay: all coefficients >=_P 0 and the combination equals the target."""
    try:
        for n, term in enumerate(cert.terms):
            if term.u.field != P.field:
                return VerifyResult(False, f"term {n}: coefficient in the wrong field")
            if sign_at(term.u, P) < 0:
                return VerifyResult(False, f"term {n}: negative coefficient {term.u}")
        g = cert.generator
        if g.alg != alg or cert.target.alg != alg:
            return VerifyResult(False, "elements live in a different algebra")
        if apply(sigma, g) != g:
            return VerifyResult(False, "generator is not symmetric")
        value = eval_combination(cert.combination, alg, sigma)
    except Exception as exc:  # malformed certificates are a false verdict
        return VerifyResult(False, f"{type(exc).__name__}: {exc}")
    if value != cert.target:
        return VerifyResult(False, f"evaluation mismatch: got {value}, expected {cert.target}")
    return VerifyResult(True)
