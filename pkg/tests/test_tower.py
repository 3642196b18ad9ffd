import pytest
import sympy as sp
from hypothesis import given, strategies as st

from oracles import scalar
from quatcones import POSITIVE_ROOT, QQ, NonRealError, Ordering, Tower, tower_sign
from quatcones.tower import tower_arith
from strategies import SQRT2, rationals

Q = Ordering.rational()


def tower(*radicands, imaginary=False, P=Q):
    return Tower.build(P, [P.field(r) for r in radicands], imaginary)


def test_generator_products():
    T = tower(2)
    assert tower_arith("mul", T.sqrt(2), T.sqrt(2)) == T(2)
    T = tower(2, 6)
    prod = tower_arith("mul", T.sqrt(2), T.sqrt(6))
    assert prod.terms == {0b11: QQ(1)}
    assert prod == T.sqrt(12) * QQ(1)


def test_inverse_example():
    T = tower(2)
    assert tower_arith("inv", T.one + T.sqrt(2)) == T.sqrt(2) - T.one


def test_sign_examples():
    T = tower(2, 3)
    assert tower_sign(T.sqrt(2) + T.sqrt(3) - 3) == 1
    T = tower(2, 3, 6)
    assert tower_sign(T.sqrt(2) * T.sqrt(3) - T.sqrt(6)) == 0
    assert tower_sign(-tower(2).sqrt(2)) == -1


def test_dependent_radicands_are_dropped():
    T = tower(2, 8, 3, 6, 24)
    assert len(T.radicands) == 2
    assert T.sqrt(24) * T.sqrt(24) == T(24)


def test_imaginary_roots():
    T = tower(3, imaginary=True)
    r = T.sqrt(-3)
    assert r * r == T(-3)
    assert T.sqrt(-3, branch=-1) == -r
    assert r.complex_conjugate() == -r
    with pytest.raises(NonRealError):
        tower_sign(r)


def test_quadratic_base():
    P = Ordering(SQRT2, POSITIVE_ROOT)
    T = Tower.build(P, [SQRT2(3, 1)])
    root = T.sqrt(SQRT2(3, 1))
    assert root * root == T(SQRT2(3, 1))
    assert tower_sign(root - SQRT2(2)) == 1     # sqrt(4.414) > 2


def _numeric(x, radicands):
    total = 0
    for mask, c in x.terms.items():
        term = scalar(c)
        for i, r in enumerate(radicands):
            if mask >> i & 1:
                term *= sp.sqrt(r)
        total += term
    return total


coefficient_maps = st.dictionaries(st.integers(0, 7), rationals, max_size=8)


@given(coefficient_maps)
def test_sign_matches_symbolic(coeffs):
    radicands = (2, 3, 5)
    T = tower(*radicands)
    x = T.zero
    for mask, c in coeffs.items():
        term = T(QQ(c))
        for i, r in enumerate(radicands):
            if mask >> i & 1:
                term = term * T.sqrt(r)
        x = x + term
    expected = sp.sign(sp.nsimplify(_numeric(x, radicands)).evalf(80)) if x else 0
    assert tower_sign(x) == int(expected)


@given(coefficient_maps, coefficient_maps)
def test_ring_and_inverse(c1, c2):
    T = tower(2, 3, imaginary=True)

    def build(coeffs):
        return sum((T.zero + T(QQ(c)) * _monomial(T, m) for m, c in coeffs.items()), T.zero)

    x, y = build(c1), build(c2)
    assert x * y == y * x
    assert (x + y) * y == x * y + y * y
    if x:
        assert x * x.inverse() == T.one


def _monomial(T, mask):
    out = T.one
    for i, r in enumerate((2, 3)):
        if mask >> i & 1:
            out = out * T.sqrt(r)
    if mask >> 2 & 1:
        out = out * T.i
    return out
