"""Exception hierarchy shared by every module."""


class RepleteError(Exception):
    """Base class for all library errors."""


class FieldConstructionError(RepleteError, ValueError):
    """Bad defining polynomial or integral basis."""


class PrecisionError(RepleteError):
    """Interval refinement hit the precision cap without deciding."""


class BudgetExceeded(RepleteError):
    """Lattice enumeration visited more nodes than allowed."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class CapExceeded(RepleteError):
    """More elements than the caller allowed to materialize."""


class NotMonogenicError(RepleteError, ValueError):
    """Operation needs the integral basis to be the power basis."""


class TruncationError(RepleteError):
    """Truncated series cannot be bounded below the requested tolerance."""


class ToleranceError(RepleteError):
    """A numerical estimate is too uncertain for the requested tolerance."""


class ConventionError(RepleteError):
    """Closed-form Fourier tables disagree with quadrature."""
