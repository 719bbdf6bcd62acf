"""Exception types raised across the package."""


class NotHermitian(ValueError):
    """Matrix differs from its conjugate transpose beyond tolerance."""


class NotUnitTrace(ValueError):
    """Matrix trace differs from one beyond tolerance."""


class NotPSD(ValueError):
    """Matrix has an eigenvalue below the clamp window."""


class DimensionMismatch(ValueError):
    pass


class DomainError(ValueError):
    """Scalar argument outside its admissible interval."""


class TruncationOverflow(RuntimeError):
    """Fock-space truncation cannot grow far enough to hold the tail mass."""


class NoConvergence(RuntimeError):
    """Fixed-point iteration hit its iteration cap."""


class FitDegenerate(RuntimeError):
    """Not enough resolvable points for the exponential-decay fit."""
