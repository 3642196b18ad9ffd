"""Positive-cone membership, closure combinations and sampled axiom checks."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import AlgebraMismatchError, NotSymmetricError
from .involution import InvolutionDesc, apply
from .linalg import principal_minors
from .ordered_field import FieldElement, Ordering, sign_at
from .quaternion import AlgebraDesc, QuatElement, is_invertible, quat_mul
from .signature import SignatureConvention, check_domain, determine_frame, frame_signature
from .tower import Tower, tower_sign


class ConeVerdict(enum.Enum):
    PLUS = "PlusCone"
    MINUS = "MinusCone"
    NEITHER = "Neither"
    ZERO = "Zero"

    def __str__(self) -> str:
        return self.value


def member(alg: AlgebraDesc, sigma: InvolutionDesc, P: Ordering,
           conv: SignatureConvention, d: QuatElement) -> ConeVerdict:
    """Verdict of d against the maximal cones of signature +2 and -2."""
    frame = determine_frame(alg, sigma, P)
    check_domain(frame, d)
    if d.is_zero():
        return ConeVerdict.ZERO
    if not is_invertible(d):
        return ConeVerdict.NEITHER
    s = frame_signature(frame, conv, d)
    return {2: ConeVerdict.PLUS, -2: ConeVerdict.MINUS}.get(s, ConeVerdict.NEITHER)


# ----------------------------------------------------------------------------
# Split case: positive semidefinite matrices
# ----------------------------------------------------------------------------

HermitianEntry = tuple  # (p, q) meaning p + q*sqrt(delta)


def psd_member(M: Sequence[Sequence], P: Ordering, delta: FieldElement | None = None) -> ConeVerdict:
    """PSD verdict for a symmetric matrix over F, or a hermitian one over
    F(sqrt(delta)) with delta <_P 0 when entries are (p, q) pairs."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if delta is None:
        entries = [[P.field(x) for x in row] for row in M]
        for r in range(n):
            for c in range(r):
                if entries[r][c] != entries[c][r]:
                    raise NotSymmetricError("matrix is not symmetric")
        sign = lambda x: sign_at(x, P)  # noqa: E731
        zero = P.field.zero
    else:
        if sign_at(delta, P) >= 0:
            raise ValueError("hermitian matrices need delta negative at P")
        tower = Tower.build(P, [-delta], imaginary=True)
        root = tower.sqrt(delta)
        entries = [[tower(P.field(p)) + root * P.field(q) for p, q in row] for row in M]
        for r in range(n):
            for c in range(r + 1):
                if entries[r][c] != entries[c][r].complex_conjugate():
                    raise NotSymmetricError("matrix is not hermitian")
        sign = tower_sign
        zero = tower.zero

    if all(x == zero for row in entries for x in row):
        return ConeVerdict.ZERO
    if all(sign(m) >= 0 for m in principal_minors(entries)):
        return ConeVerdict.PLUS
    negated = [[-x for x in row] for row in entries]
    if all(sign(m) >= 0 for m in principal_minors(negated)):
        return ConeVerdict.MINUS
    return ConeVerdict.NEITHER


# ----------------------------------------------------------------------------
# Closure combinations sum u_n sigma(x_n) g x_n
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    u: FieldElement
    x: QuatElement


@dataclass(frozen=True)
class Combination:
    generator: QuatElement
    terms: tuple[Term, ...]

    @classmethod
    def of(cls, generator: QuatElement, pairs) -> Combination:
        return cls(generator, tuple(Term(u, x) for u, x in pairs))


def eval_combination(C: Combination, alg: AlgebraDesc, sigma: InvolutionDesc) -> QuatElement:
    g = C.generator
    if g.alg != alg:
        raise AlgebraMismatchError("generator lives in a different algebra")
    total = alg.zero
    for term in C.terms:
        if term.x.alg != alg:
            raise AlgebraMismatchError("term lives in a different algebra")
        total = total + quat_mul(quat_mul(apply(sigma, term.x), g), term.x) * term.u
    return total


# ----------------------------------------------------------------------------
# Sampled prepositive-cone axioms
# ----------------------------------------------------------------------------

AXIOMS = ("P1", "P2", "P3", "P4", "P5")


@dataclass
class AxiomReport:
    trials: int
    checks: dict[str, int] = field(default_factory=lambda: dict.fromkeys(AXIOMS, 0))
    failures: dict[str, list] = field(default_factory=lambda: {k: [] for k in AXIOMS})

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def record(self, axiom: str, ok: bool, witness) -> None:
        self.checks[axiom] += 1
        if not ok:
            self.failures[axiom].append(witness)

    def summary(self) -> dict:
        return {k: {"checks": self.checks[k], "failures": len(self.failures[k])} for k in AXIOMS}


def check_axioms_sampled(predicate: Callable[[QuatElement], ConeVerdict], sampler,
                         trials: int) -> AxiomReport:
    """Sample the axioms against ``predicate``.

    ``sampler`` supplies ``generator``, ``involution``, ``plus_element()``,
    ``symmetric()``, ``element()`` and ``positive_scalar()``.  The first
    trial pairs the generator with itself so that a predicate broken on a
    simple sum is caught deterministically.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    report = AxiomReport(trials)
    plus, minus = ConeVerdict.PLUS, ConeVerdict.MINUS
    g = sampler.generator
    report.record("P1", predicate(g) is plus, g)
    for n in range(trials):
        if n == 0:
            d1 = d2 = g
        else:
            d1, d2 = sampler.plus_element(predicate), sampler.plus_element(predicate)
        total = d1 + d2
        report.record("P2", predicate(total) is plus, (d1, d2))

        x = sampler.element()
        image = quat_mul(quat_mul(apply(sampler.involution, x), d1), x)
        verdict = predicate(image)
        if is_invertible(x):
            ok = verdict is plus
        else:
            ok = verdict is not minus
        report.record("P3", ok, (d1, x))

        u = sampler.positive_scalar()
        report.record("P4", predicate(d1 * u) is plus, (u, d1))

        d = sampler.symmetric()
        if d:
            v, w = predicate(d), predicate(-d)
            report.record("P5", (w is minus) == (v is plus) and not (v is plus and w is plus), d)
    return report
