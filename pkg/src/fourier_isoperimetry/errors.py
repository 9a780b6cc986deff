"""Exception and warning types raised across the package."""


class HurwitzError(Exception):
    """Base class for every error raised by this package."""


class NonConvergence(HurwitzError):
    """Grid refinement hit its cap before successive values agreed."""


class NonFinite(HurwitzError, ValueError):
    """An integrand returned NaN or infinity at a quadrature node."""


class NonMonotone(HurwitzError, ValueError):
    """A speed function was non-positive, so arc length is not invertible."""


class IndexOutOfRange(HurwitzError, IndexError):
    pass


class ZeroMeanViolated(HurwitzError, ValueError):
    pass


class InvalidParams(HurwitzError, ValueError):
    pass


class NotClosed(HurwitzError, ValueError):
    pass


class TooFewPoints(HurwitzError, ValueError):
    pass


class HarmonicsExceedNyquist(HurwitzError, ValueError):
    pass


class NewtonStall(HurwitzError):
    """Inverse arc-length solve failed even after the bisection fallback."""


class NotUnitSpeed(HurwitzError, ValueError):
    pass


class TruncationWarning(UserWarning):
    """Fourier tail energy beyond the requested order exceeds tolerance."""
