"""Exception hierarchy shared by every layer of the toolkit."""


class SwansonError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(SwansonError, ValueError):
    """Truncation too small, or operands of different dimension."""


class NonPositiveFrequencyError(SwansonError, ValueError):
    pass


class InvalidParametersError(SwansonError, ValueError):
    """Hamiltonian parameters outside the real-spectrum domain (omega^2 < 4 alpha beta)."""


class NotHermitianError(SwansonError, ValueError):
    pass


class NoConvergenceError(SwansonError, RuntimeError):
    pass


class MatrixOverflowError(SwansonError, OverflowError):
    """A matrix computation left the floating-point range.

    Near the singular band the metric grows without bound; at a given
    truncation this is where it stops being representable in doubles.
    """


class InvalidRegionError(SwansonError, ValueError):
    """Metric parameter z inside (or on the edge of) the singular band."""


class ExceptionalPointError(InvalidRegionError):
    """Omega = 0 and z sits on the collapsed band."""


class HermitianCaseError(SwansonError, ValueError):
    """alpha == beta: the Hamiltonian is Hermitian and there is no singular band."""
