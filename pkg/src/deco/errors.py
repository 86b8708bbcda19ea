"""Exception hierarchy shared by all modules."""


class DecoError(ValueError):
    """Base class for every domain error raised by :mod:`deco`."""


class NotUnitary(DecoError):
    pass


class ZeroEntry(DecoError):
    pass


class NotNormalized(DecoError):
    pass


class NTooLarge(DecoError):
    pass


class LengthMismatch(DecoError):
    pass


class InvalidRestriction(DecoError):
    pass


class NonRealMeasure(DecoError):
    pass


class DegenerateP(DecoError):
    pass


class NotHermitian(DecoError):
    pass


class NoConvergence(DecoError):
    pass


class UnsupportedKind(DecoError):
    pass


class SizeMismatch(DecoError):
    pass


class InsufficientPoints(DecoError):
    pass
