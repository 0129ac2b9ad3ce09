"""Exception types raised across the package."""


class ImaginarityError(ValueError):
    """Base class for all input and numerical-contract violations."""


class NotHermitian(ImaginarityError):
    pass


class NotSymmetric(ImaginarityError):
    pass


class NotPSD(ImaginarityError):
    pass


class NotPositiveDefinite(ImaginarityError):
    pass


class InvalidState(ImaginarityError):
    """A matrix failed density-matrix validation."""


class InvalidGaussian(ImaginarityError):
    """Mean/covariance pair failed Gaussian-state validation."""


class BlochNormExceeded(ImaginarityError):
    pass


class ZeroVector(ImaginarityError):
    pass


class ProbabilityOutOfRange(ImaginarityError):
    pass


class DimensionMismatch(ImaginarityError):
    pass


class MuOutOfRange(ImaginarityError):
    pass


class SingularNormalizer(ImaginarityError):
    pass


class SingularSum(ImaginarityError):
    pass


class NuBelowOne(ImaginarityError):
    pass


class TruncationUnreliable(ImaginarityError):
    pass
