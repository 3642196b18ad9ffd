"""JSON problem documents and certificates.

Scalars are exact strings: ``"p"`` or ``"p/q"`` for rationals and
``{"p": ..., "q": ...}`` for p + q*sqrt(m) over a quadratic field, where m
is declared once in the document's field descriptor.  JSON integers are
accepted as rationals; floats never are.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from gmpy2 import mpq

from .certificate import Certificate
from .cone import Combination, Term
from .errors import QuatConeError
from .involution import InvolutionDesc
from .ordered_field import NEGATIVE_ROOT, POSITIVE_ROOT, QQ, Field, FieldElement, Ordering
from .quaternion import AlgebraDesc, QuatElement
from .signature import SignatureConvention


class InputError(QuatConeError):
    """Malformed or inconsistent JSON input."""


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text: Any) -> mpq:
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError(f"scalars must be exact strings, got {text!r}")
    if isinstance(text, int):
        return mpq(text)
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text.strip()):
        raise InputError(f"not a rational scalar: {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return mpq(int(num), int(den or 1))


def format_rational(x) -> str:
    return str(mpq(x))


def _expect_keys(doc: Any, where: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    keys = set(doc)
    unknown = keys - required - optional
    if unknown:
        raise InputError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - keys
    if missing:
        raise InputError(f"{where}: missing keys {sorted(missing)}")
    return doc


@dataclass(frozen=True)
class Codec:
    """Scalar and element (de)serialization for one declared field.

    A non-square-free radicand m = s^2 * m0 is accepted; q*sqrt(m) is stored
    as (q*s)*sqrt(m0) and written back relative to the declared m.
    """

    field: Field
    declared_m: int | None = None
    scale: int = 1

    @classmethod
    def rational(cls) -> Codec:
        return cls(QQ)

    @classmethod
    def quadratic(cls, m: int) -> Codec:
        field, scale = Field.for_radicand(m)
        return cls(field, m, scale)

    def scalar(self, doc: Any) -> FieldElement:
        if isinstance(doc, dict):
            if self.field.is_rational:
                raise InputError("quadratic scalar given over QQ")
            _expect_keys(doc, "scalar", {"p", "q"})
            return self.field(parse_rational(doc["p"]), parse_rational(doc["q"]) * self.scale)
        return self.field(parse_rational(doc))

    def dump_scalar(self, x: FieldElement):
        if self.field.is_rational:
            return format_rational(x.p)
        return {"p": format_rational(x.p), "q": format_rational(x.q / self.scale)}

    def element(self, doc: Any, alg: AlgebraDesc) -> QuatElement:
        if not isinstance(doc, list) or len(doc) != alg.dim:
            raise InputError(f"element must be a list of {alg.dim} scalars")
        return alg.element([self.scalar(c) for c in doc])

    def dump_element(self, x: QuatElement) -> list:
        return [self.dump_scalar(c) for c in x.c]


@dataclass(frozen=True)
class Problem:
    codec: Codec
    ordering: Ordering
    algebra: AlgebraDesc
    involution: InvolutionDesc
    element: QuatElement | None
    orientation: int | None

    @property
    def convention(self) -> SignatureConvention:
        return SignatureConvention(self.orientation or 1)


def _parse_field(doc: Any) -> tuple[Codec, Ordering]:
    doc = _expect_keys(doc, "field", {"kind"}, {"m", "embedding"})
    kind = doc["kind"]
    if kind == "rational":
        if doc.get("m") is not None or doc.get("embedding") is not None:
            raise InputError("field: QQ takes no radicand or embedding")
        return Codec.rational(), Ordering.rational()
    if kind != "quadratic":
        raise InputError(f"field: unknown kind {kind!r}")
    m = doc.get("m")
    if not isinstance(m, int) or isinstance(m, bool):
        raise InputError("field: m must be an integer")
    emb = doc.get("embedding")
    if emb not in (POSITIVE_ROOT, NEGATIVE_ROOT):
        raise InputError(f"field: embedding must be {POSITIVE_ROOT!r} or {NEGATIVE_ROOT!r}")
    codec = Codec.quadratic(m)
    return codec, Ordering(codec.field, emb)


def _parse_algebra(doc: Any, codec: Codec) -> AlgebraDesc:
    doc = _expect_keys(doc, "algebra", {"a", "b"}, {"delta", "division"})
    delta = doc.get("delta")
    division = doc.get("division")
    if division is not None and not isinstance(division, bool):
        raise InputError("algebra: division must be a boolean")
    return AlgebraDesc(codec.scalar(doc["a"]), codec.scalar(doc["b"]),
                       None if delta is None else codec.scalar(delta), division)


def parse_involution(doc: Any, codec: Codec, alg: AlgebraDesc) -> InvolutionDesc:
    doc = _expect_keys(doc, "involution", {"kind"}, {"v"})
    kind = doc["kind"]
    if kind == "orthogonal":
        if "v" not in doc:
            raise InputError("involution: orthogonal needs v")
        return InvolutionDesc.orthogonal(codec.element(doc["v"], alg))
    if "v" in doc:
        raise InputError(f"involution: {kind} takes no v")
    if kind == "symplectic":
        return InvolutionDesc.symplectic()
    if kind == "unitary":
        return InvolutionDesc.unitary()
    raise InputError(f"involution: unknown kind {kind!r}")


def parse_orientation(value: Any) -> int:
    if value in ("+", 1):
        return 1
    if value in ("-", -1):
        return -1
    raise InputError(f"orientation must be '+' or '-', got {value!r}")


def parse_problem(doc: Any) -> Problem:
    doc = _expect_keys(doc, "problem", {"field", "algebra", "involution"}, {"element", "orientation"})
    codec, ordering = _parse_field(doc["field"])
    alg = _parse_algebra(doc["algebra"], codec)
    sigma = parse_involution(doc["involution"], codec, alg)
    element = codec.element(doc["element"], alg) if "element" in doc else None
    orientation = parse_orientation(doc["orientation"]) if "orientation" in doc else None
    return Problem(codec, ordering, alg, sigma, element, orientation)


def dump_certificate(cert: Certificate, codec: Codec) -> dict:
    return {
        "case": cert.case,
        "target": codec.dump_element(cert.target),
        "generator": codec.dump_element(cert.generator),
        "beta": None if cert.beta is None else codec.dump_scalar(cert.beta),
        "terms": [{"u": codec.dump_scalar(t.u), "x": codec.dump_element(t.x)} for t in cert.terms],
    }


def parse_certificate(doc: Any, codec: Codec, alg: AlgebraDesc) -> Certificate:
    doc = _expect_keys(doc, "certificate", {"case", "target", "generator", "beta", "terms"})
    if not isinstance(doc["case"], str):
        raise InputError("certificate: case must be a string")
    if not isinstance(doc["terms"], list):
        raise InputError("certificate: terms must be a list")
    terms = []
    for n, term in enumerate(doc["terms"]):
        term = _expect_keys(term, f"certificate term {n}", {"u", "x"})
        terms.append(Term(codec.scalar(term["u"]), codec.element(term["x"], alg)))
    beta = None if doc["beta"] is None else codec.scalar(doc["beta"])
    combination = Combination(codec.element(doc["generator"], alg), tuple(terms))
    return Certificate(doc["case"], codec.element(doc["target"], alg), combination, beta)


def loads(text: str) -> Any:
    """json.loads that refuses floats, NaN and duplicate keys."""
    def no_float(s):
        raise InputError(f"floats are not exact scalars: {s}")

    def no_constant(s):
        raise InputError(f"invalid JSON constant {s}")

    def pairs(items):
        out = {}
        for k, v in items:
            if k in out:
                raise InputError(f"duplicate key {k!r}")
            out[k] = v
        return out

    try:
        return json.loads(text, parse_float=no_float, parse_constant=no_constant,
                          object_pairs_hook=pairs)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"
