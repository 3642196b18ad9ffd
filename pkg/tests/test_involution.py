import pytest
from hypothesis import given, strategies as st

from oracles import MatrixModel, same
from quatcones import (
    POSITIVE_ROOT,
    QQ,
    AlgebraDesc,
    InvalidInvolutionError,
    InvolutionDesc,
    Ordering,
    apply,
    classify,
    is_positive_involution,
    is_symmetric,
    quat_mul,
)
from quatcones.involution import standardize_orthogonal, swap_generators
from strategies import SQRT2, elements

A23 = AlgebraDesc.over(QQ, 2, 3)
U23 = AlgebraDesc.over(QQ, 2, 3, -1)
Q = Ordering.rational()


def orth(alg, *v):
    return InvolutionDesc.orthogonal(alg.element(v))


def test_apply_examples():
    sigma = orth(A23, 0, 0, 0, 1)
    i, k = A23.basis(1), A23.basis(3)
    assert apply(sigma, i) == i
    assert apply(sigma, k) == -k
    assert apply(InvolutionDesc.symplectic(), A23.basis(2)) == -A23.basis(2)
    assert apply(InvolutionDesc.unitary(), U23.basis(7)) == U23.basis(7)


def test_classify_examples():
    cls = classify(InvolutionDesc.symplectic(), A23)
    assert cls.kind == "symplectic" and cls.sym_basis == (A23.one,)
    cls = classify(orth(A23, 0, 0, 0, 1), A23)
    assert cls.kind == "orthogonal" and cls.sym_basis == tuple(A23.basis(n) for n in range(3))
    cls = classify(InvolutionDesc.unitary(), U23)
    assert cls.sym_basis == tuple(U23.basis(n) for n in (0, 5, 6, 7))


def test_standardize_examples():
    change = standardize_orthogonal(A23, A23.basis(3))
    assert (change.target.a, change.target.b) == (2, 3)
    assert change.forward(A23.basis(1)) == change.target.basis(1)
    change = standardize_orthogonal(A23, A23.basis(1))
    assert (change.target.a, change.target.b) == (3, -6)
    assert change.backward(change.target.basis(1)) == A23.basis(2)
    assert change.backward(change.target.basis(2)) == A23.basis(3)
    change = standardize_orthogonal(A23, A23.element([0, 1, 1, 0]))
    w = change.backward(change.target.basis(1))
    assert w == A23.element([0, 3, -2, 0]) and change.target.a == 30


def test_swap():
    change = swap_generators(A23)
    assert (change.target.a, change.target.b) == (3, 2)
    assert change.backward(change.target.basis(3)) == -A23.basis(3)


def test_validation():
    with pytest.raises(InvalidInvolutionError):
        classify(orth(A23, 1, 0, 0, 0), A23)
    with pytest.raises(InvalidInvolutionError):
        classify(InvolutionDesc.unitary(), A23)
    with pytest.raises(InvalidInvolutionError):
        classify(InvolutionDesc.symplectic(), U23)
    with pytest.raises(InvalidInvolutionError):
        classify(InvolutionDesc("reflexive"), A23)


def test_positive_involutions():
    assert is_positive_involution(InvolutionDesc.symplectic(), AlgebraDesc.over(QQ, -1, -1), Q)
    assert not is_positive_involution(InvolutionDesc.symplectic(), A23, Q)
    assert is_positive_involution(orth(A23, 0, 0, 0, 1), A23, Q)
    assert not is_positive_involution(orth(A23, 0, 1, 0, 0), A23, Q)
    assert is_positive_involution(InvolutionDesc.unitary(),
                                  AlgebraDesc.over(QQ, -1, -1, -7), Q)


CONFIGS = [
    (A23, InvolutionDesc.symplectic()),
    (A23, orth(A23, 0, 0, 0, 1)),
    (A23, orth(A23, 0, 1, 1, 0)),
    (A23, orth(A23, 0, 1, -2, 3)),
    (AlgebraDesc.over(QQ, -1, 5), orth(AlgebraDesc.over(QQ, -1, 5), 0, 2, 0, 1)),
    (U23, InvolutionDesc.unitary()),
    (AlgebraDesc(SQRT2(1, 1), SQRT2(3)), orth(AlgebraDesc(SQRT2(1, 1), SQRT2(3)), 0, 1, 1, 1)),
]


@st.composite
def configs_with_elements(draw):
    alg, sigma = draw(st.sampled_from(CONFIGS))
    def element():
        return alg.element([draw(elements(alg.field)) for _ in range(alg.dim)])
    return alg, sigma, element(), element()


@given(configs_with_elements())
def test_involution_laws(cfg):
    alg, sigma, x, y = cfg
    assert apply(sigma, apply(sigma, x)) == x
    assert apply(sigma, quat_mul(x, y)) == quat_mul(apply(sigma, y), apply(sigma, x))
    assert apply(sigma, x + y) == apply(sigma, x) + apply(sigma, y)


@given(configs_with_elements())
def test_involution_matches_matrix_model(cfg):
    alg, sigma, x, _ = cfg
    model = MatrixModel(alg)
    assert same(model.image(apply(sigma, x)), model.involution(sigma, x))


@given(configs_with_elements())
def test_sym_basis_spans_symmetric_part(cfg):
    alg, sigma, x, _ = cfg
    basis = classify(sigma, alg).sym_basis
    assert len(basis) == {"symplectic": 1, "orthogonal": 3, "unitary": 4}[sigma.kind]
    assert all(is_symmetric(sigma, e) for e in basis)
    assert is_symmetric(sigma, x + apply(sigma, x))


@given(configs_with_elements())
def test_standardization_is_an_isomorphism(cfg):
    alg, sigma, x, y = cfg
    if sigma.kind != "orthogonal":
        return
    change = standardize_orthogonal(alg, sigma.v)
    work = change.target
    assert change.backward(change.forward(x)) == x
    assert change.forward(quat_mul(x, y)) == quat_mul(change.forward(x), change.forward(y))
    # sigma fixes i', j' and negates k'
    for n, s in ((1, 1), (2, 1), (3, -1)):
        e = change.backward(work.basis(n))
        assert apply(sigma, e) == e * s
    assert classify(sigma, alg).kind == "orthogonal"


def test_quadratic_field_positivity():
    P = Ordering(SQRT2, POSITIVE_ROOT)
    alg = AlgebraDesc(SQRT2(1, -1), SQRT2(-3))
    assert is_positive_involution(InvolutionDesc.symplectic(), alg, P)
