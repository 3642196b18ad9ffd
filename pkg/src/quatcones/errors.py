"""Exception hierarchy shared by all modules."""


class QuatConeError(Exception):
    """Base class for every error raised by the library."""


class FieldMismatchError(QuatConeError):
    pass


class TowerMismatchError(QuatConeError):
    pass


class AlgebraMismatchError(QuatConeError):
    pass


class UnsupportedFieldError(QuatConeError):
    pass


class InvalidAlgebraError(QuatConeError):
    pass


class InvalidInvolutionError(QuatConeError):
    pass


class NonRealError(QuatConeError):
    """Sign requested for a tower element with a nonzero imaginary part."""


class NilOrderingError(QuatConeError):
    """The ordering is a nil-ordering of (A, sigma); no positive cones exist."""


class NotSymmetricError(QuatConeError):
    pass


class SingularElementError(QuatConeError):
    pass


class SplitAlgebraError(QuatConeError):
    pass


class NotInConeError(QuatConeError):
    pass


class IntervalEmptyError(QuatConeError):
    """find_beta called with a target that is not strictly above the minimum."""


class CaseMismatchError(QuatConeError):
    pass
