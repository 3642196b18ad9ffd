import pytest
from hypothesis import given, strategies as st

from oracles import TraceFormOracle
from quatcones import (
    DEFAULT_CONVENTION,
    NEGATIVE_ROOT,
    POSITIVE_ROOT,
    QQ,
    AlgebraDesc,
    AlgebraMismatchError,
    CaseTag,
    InvolutionDesc,
    NilOrderingError,
    NotSymmetricError,
    Ordering,
    SignatureConvention,
    SingularElementError,
    SplitAlgebraError,
    apply,
    case_of,
    designated_generator,
    m_p,
    nil_check,
    quat_mul,
    sign_at,
    signature,
)
from quatcones.quaternion import is_invertible
from quatcones.sampling import ConfigSampler, standard_configs
from strategies import SQRT2, seeds

Q = Ordering.rational()
A23 = AlgebraDesc.over(QQ, 2, 3)
U23 = AlgebraDesc.over(QQ, 2, 3, -1)
ORTH_K = InvolutionDesc.orthogonal(A23.basis(3))
A_NEG = AlgebraDesc.over(QQ, -2, -3)
SYM, UNI = InvolutionDesc.symplectic(), InvolutionDesc.unitary()
CONFIGS = standard_configs()


def sig(alg, sigma, d, P=Q, conv=DEFAULT_CONVENTION):
    return signature(alg, sigma, P, conv, alg.element(d))


def test_signature_examples():
    assert sig(A23, ORTH_K, [4, 1, 1, 0]) == 2
    assert sig(A23, ORTH_K, [1, 0, 0, 0]) == 2
    assert sig(A23, ORTH_K, [0, 1, 0, 0]) == 0
    assert sig(U23, UNI, [0, 0, 0, 0, 0, 0, 0, 1]) == 2


def test_m_p_examples():
    assert m_p(A23, ORTH_K, Q) == 2
    assert designated_generator(A23, ORTH_K, Q) == A23.one
    assert m_p(AlgebraDesc.over(QQ, 2, 3, -5), UNI, Q) == 2
    assert designated_generator(U23, UNI, Q) == U23.basis(7)
    with pytest.raises(NilOrderingError):
        m_p(A23, SYM, Q)
    with pytest.raises(SplitAlgebraError):
        m_p(U23, UNI, Q)  # Q(i) splits (2,3)


def test_nil_table():
    P = Q
    rows = [
        (A23, SYM, True),
        (AlgebraDesc.over(QQ, -1, -1), SYM, False),
        (AlgebraDesc.over(QQ, -1, 3), SYM, True),
        (A_NEG, InvolutionDesc.orthogonal(A_NEG.basis(3)), True),
        (A23, ORTH_K, False),
        (AlgebraDesc.over(QQ, 2, 3, 2), UNI, True),
        (AlgebraDesc.over(QQ, 2, 3, -2), UNI, False),
    ]
    for alg, sigma, expected in rows:
        assert nil_check(alg, sigma, P) is expected


def test_nil_depends_on_the_ordering():
    alg = AlgebraDesc(SQRT2(1, 1), SQRT2(-3))   # 1 + sqrt 2 changes sign
    assert nil_check(alg, SYM, Ordering(SQRT2, POSITIVE_ROOT))
    assert not nil_check(alg, SYM, Ordering(SQRT2, NEGATIVE_ROOT))
    alg = AlgebraDesc(SQRT2(3), SQRT2(5), SQRT2(1, -1))
    assert not nil_check(alg, UNI, Ordering(SQRT2, POSITIVE_ROOT))
    assert nil_check(alg, UNI, Ordering(SQRT2, NEGATIVE_ROOT))


def test_case_tags():
    for cfg in CONFIGS:
        assert case_of(cfg.algebra, cfg.involution, cfg.ordering).value == cfg.case
    assert case_of(A23, SYM, Q) is CaseTag.NIL_SYMPLECTIC
    assert case_of(AlgebraDesc.over(QQ, 2, 3, 5), UNI, Q) is CaseTag.NIL_UNITARY


def test_domain_errors():
    with pytest.raises(NotSymmetricError):
        sig(A23, ORTH_K, [0, 0, 0, 1])
    with pytest.raises(SingularElementError):
        sig(AlgebraDesc.over(QQ, 1, 3), InvolutionDesc.orthogonal(
            AlgebraDesc.over(QQ, 1, 3).basis(3)), [1, 1, 0, 0])
    with pytest.raises(NilOrderingError):
        sig(A23, SYM, [1, 0, 0, 0])
    with pytest.raises(AlgebraMismatchError):
        signature(A23, ORTH_K, Q, DEFAULT_CONVENTION, U23.one)


def test_orientation_flips_every_signature():
    flipped = SignatureConvention(-1)
    assert sig(A23, ORTH_K, [4, 1, 1, 0], conv=flipped) == -2
    assert designated_generator(A23, ORTH_K, Q, flipped) == -A23.one


@pytest.mark.parametrize("cfg", CONFIGS, ids=lambda c: c.name)
def test_against_trace_form_oracle(cfg):
    sampler = ConfigSampler(cfg, seed=11)
    oracle = TraceFormOracle(cfg.algebra, cfg.involution, cfg.ordering,
                             sampler.sym_basis, sampler.generator)
    alg, sigma, P = cfg.algebra, cfg.involution, cfg.ordering
    samples = [sampler.generator] + [sampler.symmetric_invertible() for _ in range(4)]
    for d in samples:
        assert signature(alg, sigma, P, DEFAULT_CONVENTION, d) == oracle.signature(d)


configs = st.sampled_from(CONFIGS)


@given(configs, seeds())
def test_congruence_invariance(cfg, seed):
    s = ConfigSampler(cfg, seed)
    alg, sigma, P = cfg.algebra, cfg.involution, cfg.ordering
    d, x = s.symmetric_invertible(), s.invertible_element()
    image = quat_mul(quat_mul(apply(sigma, x), d), x)
    assert signature(alg, sigma, P, s.conv, image) == signature(alg, sigma, P, s.conv, d)


@given(configs, seeds())
def test_scaling_and_negation(cfg, seed):
    s = ConfigSampler(cfg, seed)
    alg, sigma, P = cfg.algebra, cfg.involution, cfg.ordering
    d, u = s.symmetric_invertible(), s.scalar()
    base = signature(alg, sigma, P, s.conv, d)
    assert base in (-2, 0, 2)
    assert signature(alg, sigma, P, s.conv, -d) == -base
    if u:
        assert signature(alg, sigma, P, s.conv, d * u) == sign_at(u, P) * base
    assert signature(alg, sigma, P, s.conv.flipped(), d) == -base


@given(configs, seeds())
def test_generator_attains_the_maximum(cfg, seed):
    s = ConfigSampler(cfg, seed)
    g = s.generator
    assert is_invertible(g) and apply(cfg.involution, g) == g
    assert signature(cfg.algebra, cfg.involution, cfg.ordering, s.conv, g) == 2
