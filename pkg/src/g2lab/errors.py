"""Exception types raised across g2lab."""


class G2LabError(Exception):
    """Base class for all g2lab errors."""


class InvalidParameter(G2LabError, ValueError):
    """A state or command parameter violates its invariant."""


class DegenerateSqueeze(G2LabError, ValueError):
    """Operation needs coth(r/2) but r is at or below the degeneracy threshold.

    Use the displaced-thermal (r = 0) routines instead.
    """


class ZeroDenominator(G2LabError, ZeroDivisionError):
    """The normalising photon number vanishes."""


class NegativeDiscriminant(G2LabError, ArithmeticError):
    """The stationarity condition for the optimal amplitude has no real root."""


class ExistenceViolation(G2LabError, ValueError):
    """An amplitude minimum was requested where none exists (r <= ln(2 nbar + 1)/2)."""


class DimensionTooSmall(G2LabError, ValueError):
    """Fock truncation dimension below the supported minimum."""


class EigenFailure(G2LabError, RuntimeError):
    """Hermitian eigendecomposition did not converge or lost unitarity."""


class TruncationError(G2LabError, RuntimeError):
    """The Fock basis could not be made large enough within the dimension cap."""


class OutsideEnvelope(TruncationError):
    """Requested oracle parameters lie outside the documented verification envelope."""
