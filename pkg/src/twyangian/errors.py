"""Exception types shared by all modules.

Each error carries its class name into CLI output, so names are part of
the external interface.
"""


class TwYangianError(Exception):
    """Base class for every domain error raised by the package."""

    @property
    def name(self):
        return type(self).__name__


class NonRationalRoot(TwYangianError):
    pass


class ImproperAtInfinity(TwYangianError):
    pass


class UnsupportedPair(TwYangianError):
    pass


class DegeneratePQ(TwYangianError):
    pass


class BadShiftRange(TwYangianError):
    pass


class NoSolution(TwYangianError):
    pass


class NotAssociable(TwYangianError):
    pass


class NoSymmetricSquareRoot(TwYangianError):
    pass


class StringConditionViolated(TwYangianError):
    pass


class NoRationalNormalizer(TwYangianError):
    """Raised when the normalizing series is not rational.

    The truncated series coefficients (in powers of u^-1) are kept on the
    exception so callers can still use them.
    """

    def __init__(self, message, series=None):
        super().__init__(message)
        self.series = series or []


class NotClassifiable(TwYangianError):
    pass


class DegreeLimitExceeded(TwYangianError):
    pass
