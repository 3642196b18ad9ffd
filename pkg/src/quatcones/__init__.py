"""Positive cones of quaternion algebras with involution, with exact arithmetic."""
from .certificate import (
    Certificate,
    VerifyResult,
    certify_from_generator,
    certify_membership,
    f_eval,
    find_beta,
    generator_in_cone_of,
    verify,
)
from .cone import (
    AxiomReport,
    Combination,
    ConeVerdict,
    Term,
    check_axioms_sampled,
    eval_combination,
    member,
    psd_member,
)
from .errors import *  # noqa: F401,F403
from .involution import InvolutionDesc, apply, classify, is_positive_involution, is_symmetric
from .oracle import check_homomorphism, signature_oracle, split_matrix
from .ordered_field import (
    NEGATIVE_ROOT,
    POSITIVE_ROOT,
    QQ,
    Field,
    FieldElement,
    Ordering,
    approx,
    cmp_at,
    floor_at,
    sign_at,
    sqrt_approx,
)
from .quaternion import (
    INFINITY,
    AlgebraDesc,
    QuatElement,
    hilbert_symbol,
    hilbert_table,
    is_division,
    quat_conj,
    quat_inverse,
    quat_mul,
    reduced_norm,
)
from .signature import (
    DEFAULT_CONVENTION,
    CaseTag,
    SignatureConvention,
    case_of,
    designated_generator,
    m_p,
    nil_check,
    signature,
)
from .tower import Tower, TowerElement, tower_sign

__version__ = "0.1.0"
