"""Seeded random elements and the standard test configurations."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cone import ConeVerdict, member
from .involution import InvolutionDesc, apply, classify
from .ordered_field import NEGATIVE_ROOT, POSITIVE_ROOT, QQ, Field, FieldElement, Ordering, sign_at
from .quaternion import AlgebraDesc, QuatElement, is_invertible, quat_mul
from .signature import DEFAULT_CONVENTION, SignatureConvention, determine_frame


@dataclass(frozen=True)
class Config:
    name: str
    algebra: AlgebraDesc
    involution: InvolutionDesc
    ordering: Ordering
    case: str

    @property
    def frame(self):
        return determine_frame(self.algebra, self.involution, self.ordering)


class ConfigSampler:
    """Random elements of one configuration, reproducible from ``seed``."""

    def __init__(self, config: Config, seed: int = 0, conv: SignatureConvention = DEFAULT_CONVENTION,
                 height: int = 6) -> None:
        self.config = config
        self.rng = random.Random(seed)
        self.conv = conv
        self.height = height
        self.algebra = config.algebra
        self.involution = config.involution
        self.ordering = config.ordering
        self.sym_basis = classify(config.involution, config.algebra).sym_basis

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def generator(self) -> QuatElement:
        return self.config.frame.generator(self.conv)

    def scalar(self) -> FieldElement:
        h = self.height
        p = self.rng.randint(-h, h)
        q = 0 if self.field.is_rational else self.rng.randint(-h, h)
        return self.field(p, q) / self.rng.randint(1, 4)

    def positive_scalar(self) -> FieldElement:
        while True:
            x = self.scalar()
            if sign_at(x, self.ordering) > 0:
                return x

    def element(self) -> QuatElement:
        return self.algebra.element([self.scalar() for _ in range(self.algebra.dim)])

    def invertible_element(self) -> QuatElement:
        while True:
            x = self.element()
            if is_invertible(x):
                return x

    def symmetric(self) -> QuatElement:
        total = self.algebra.zero
        for e in self.sym_basis:
            total = total + e * self.scalar()
        return total

    def symmetric_invertible(self) -> QuatElement:
        while True:
            d = self.symmetric()
            if is_invertible(d):
                return d

    def verdict(self, d: QuatElement) -> ConeVerdict:
        return member(self.algebra, self.involution, self.ordering, self.conv, d)

    def plus_element(self, predicate=None) -> QuatElement:
        """A random element judged PlusCone by ``predicate`` (default: member)."""
        judge = predicate or self.verdict
        g = self.generator
        for n in range(64):
            # later draws are pushed along the generator to raise the hit rate
            d = self.symmetric()
            if n:
                d = d + g * (self.positive_scalar() * n)
            if not is_invertible(d):
                continue
            v = judge(d)
            if v is ConeVerdict.PLUS:
                return d
            if v is ConeVerdict.MINUS:
                return -d
        # fall back to a congruence of the generator, shifted into the interior
        x = self.invertible_element()
        return quat_mul(quat_mul(apply(self.involution, x), g), x) + g


def _sqrt2(ordering: str) -> Ordering:
    return Ordering(Field.quadratic(2), ordering)


def standard_configs() -> list[Config]:
    """At least three configurations per non-nil case, over Q and Q(sqrt 2)."""
    Q = Ordering.rational()
    K = Field.quadratic(2)
    r2 = K(0, 1)
    sym, uni = InvolutionDesc.symplectic(), InvolutionDesc.unitary()
    configs: list[Config] = []

    def add(name, alg, sigma, P, case):
        configs.append(Config(name, alg, sigma, P, case))

    def orth(alg, v):
        return InvolutionDesc.orthogonal(alg.element(v))

    # Case 1: symplectic with a, b negative
    for a, b in ((-1, -1), (-2, -5), (-3, -7)):
        add(f"sympl({a},{b})", AlgebraDesc.over(QQ, a, b), sym, Q, "Case1_symplectic")
    alg = AlgebraDesc(K(1) - r2, K(-3))
    add("sympl(1-r2,-3)+", alg, sym, _sqrt2(POSITIVE_ROOT), "Case1_symplectic")
    alg = AlgebraDesc(K(1) + r2, K(-3))
    add("sympl(1+r2,-3)-", alg, sym, _sqrt2(NEGATIVE_ROOT), "Case1_symplectic")

    # Case 2.i: orthogonal, standard constants both positive
    for a, b in ((2, 3), (3, 5), (1, 7)):
        alg = AlgebraDesc.over(QQ, a, b)
        add(f"orth({a},{b};k)", alg, orth(alg, [0, 0, 0, 1]), Q, "Case2i")
    alg = AlgebraDesc.over(QQ, 2, 3)
    add("orth(2,3;i-2k)", alg, orth(alg, [0, 1, 0, -2]), Q, "Case2i")
    alg = AlgebraDesc(K(3), K(5))
    for emb in (POSITIVE_ROOT, NEGATIVE_ROOT):
        add(f"orth(3,5;k)@{emb}", alg, orth(alg, [0, 0, 0, 1]), _sqrt2(emb), "Case2i")
    alg = AlgebraDesc(K(1) + r2, K(3))
    add("orth(1+r2,3;k)+", alg, orth(alg, [0, 0, 0, 1]), _sqrt2(POSITIVE_ROOT), "Case2i")

    # Case 2.ii: mixed signs after standardization
    alg = AlgebraDesc.over(QQ, 2, 3)
    add("orth(2,3;i)", alg, orth(alg, [0, 1, 0, 0]), Q, "Case2ii")
    add("orth(2,3;i+j)", alg, orth(alg, [0, 1, 1, 0]), Q, "Case2ii")
    alg = AlgebraDesc.over(QQ, -1, 3)
    add("orth(-1,3;k)", alg, orth(alg, [0, 0, 0, 1]), Q, "Case2ii")
    alg = AlgebraDesc.over(QQ, 5, -2)
    add("orth(5,-2;k)", alg, orth(alg, [0, 0, 0, 1]), Q, "Case2ii")
    alg = AlgebraDesc(K(3), K(5))
    for emb in (POSITIVE_ROOT, NEGATIVE_ROOT):
        add(f"orth(3,5;i)@{emb}", alg, orth(alg, [0, 1, 0, 0]), _sqrt2(emb), "Case2ii")

    # Case 3: unitary, delta negative
    for a, b, delta, case in ((2, 3, -1, "Case3i"), (2, 3, -2, "Case3i"), (3, 5, -7, "Case3i"),
                              (-1, 3, -2, "Case3ii"), (3, -1, -2, "Case3ii"), (2, -5, -3, "Case3ii"),
                              (-1, -1, -7, "Case3iii"), (-2, -5, -1, "Case3iii"),
                              (-1, -3, -2, "Case3iii")):
        add(f"unit({a},{b};{delta})", AlgebraDesc.over(QQ, a, b, delta), uni, Q, case)
    for emb in (POSITIVE_ROOT, NEGATIVE_ROOT):
        for a, b, case in ((3, 5, "Case3i"), (-3, 5, "Case3ii"), (-3, -5, "Case3iii")):
            alg = AlgebraDesc(K(a), K(b), K(-1))
            add(f"unit({a},{b};-1)@{emb}", alg, uni, _sqrt2(emb), case)
    alg = AlgebraDesc(K(1) - r2, K(3), K(-1) - r2)
    add("unit(1-r2,3;-1-r2)+", alg, uni, _sqrt2(POSITIVE_ROOT), "Case3ii")
    return configs


def configs_by_case() -> dict[str, list[Config]]:
    out: dict[str, list[Config]] = {}
    for cfg in standard_configs():
        out.setdefault(cfg.case, []).append(cfg)
    return out
