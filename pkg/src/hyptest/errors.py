"""Exception and warning types raised across the package."""


class HyptestError(Exception):
    """Base class for all errors raised by hyptest."""


class InvalidOperand(HyptestError, ValueError):
    """Operand is not Hermitian / PSD / a projector within tolerance."""


class ShapeError(HyptestError, ValueError):
    """Operands have incompatible or non-square shapes."""


class DomainError(HyptestError, ValueError):
    """A scalar argument lies outside its admissible range."""


class ResourceError(HyptestError):
    """A dense computation would exceed the configured dimension budget."""


class NonDiagonal(HyptestError, ValueError):
    """A classical routine received an operator with off-diagonal entries."""


class InvalidState(HyptestError, ValueError):
    """A density operator does not have unit trace."""


class ZeroOperand(HyptestError, ValueError):
    """A divergence was requested for the zero operator."""


class InvariantViolation(HyptestError, ValueError):
    """Family parameters violate their admissible ranges."""


class InfeasibleParams(HyptestError, ValueError):
    """No block realization exists for the requested family parameters."""


class ParseError(HyptestError, ValueError):
    """Malformed JSON input."""


class PrecisionLossWarning(UserWarning):
    """Two independent evaluations of the same quantity disagree."""


class OptimalityWarning(UserWarning):
    """A measurement passed the optimality test but violates a necessary condition."""
