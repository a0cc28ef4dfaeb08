"""Exception hierarchy.

Every error raised by the library derives from :class:`BroadcastError`, which is
itself a ``ValueError`` so callers that only care about "bad input" can catch
that.
"""


class BroadcastError(ValueError):
    pass


class NonPositiveVariance(BroadcastError):
    pass


class NonPositivePower(BroadcastError):
    pass


class NonPositiveBandwidth(BroadcastError):
    pass


class UnsortedNoise(BroadcastError):
    pass


class IndexOutOfRange(BroadcastError, IndexError):
    pass


class LengthMismatch(BroadcastError):
    pass


class OutOfRange(BroadcastError):
    pass


class NotMonotone(BroadcastError):
    pass


class DimensionMismatch(BroadcastError):
    pass


class InvalidTau(BroadcastError):
    pass


class NoSolution(BroadcastError):
    pass


class DegenerateDenominator(BroadcastError, ArithmeticError):
    pass


class InconsistentLabels(BroadcastError):
    pass


class NegativeRate(BroadcastError):
    pass


class ModePreconditionFailed(BroadcastError):
    pass


class InsufficientSamples(BroadcastError):
    pass
