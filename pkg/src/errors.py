"""
Exception hierarchy for the surgery-space solver.

Every error raised by the numerical engine derives from SurgerySpaceError so
front ends can map failures onto exit codes and per-row scan statuses.
"""

from typing import Optional


class SurgerySpaceError(Exception):
    """Base class for all solver errors."""
    pass


class DegenerateShape(SurgerySpaceError):
    """A shape parameter or a formula denominator hit a degenerate value."""

    def __init__(self, message: str, simplex: Optional[str] = None):
        super().__init__(message)
        self.simplex = simplex


class StepCollapse(SurgerySpaceError):
    """Adaptive path subdivision fell below the minimum step length."""
    pass


class InvalidPath(SurgerySpaceError):
    """A continuation path leaves the cut plane or touches a puncture."""
    pass


class NoConvergence(SurgerySpaceError):
    """Newton iteration did not reach the requested tolerance."""
    pass


class DegenerateJacobian(SurgerySpaceError):
    """The Newton derivative vanished (|g'| below the configured floor)."""
    pass


class SingularSystem(SurgerySpaceError):
    """(u, v) are real-collinear, so (p, q) cannot be recovered."""
    pass


class NotPrimitive(SurgerySpaceError):
    """Surgery coefficients are not a primitive integer pair."""
    pass


class DegenerateTriangle(SurgerySpaceError):
    """The octagon construction collapsed (O on a square vertex or outside)."""
    pass


class CouplingMismatch(SurgerySpaceError):
    """The coupled two-cusp solve disagreed with the decoupled solves."""
    pass


class SettingsLoadError(SurgerySpaceError):
    """Error loading or validating a settings file."""
    pass
