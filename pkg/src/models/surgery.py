"""
Data models for Dehn filling: coefficients, continuation paths, solver output
and core geodesics.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .holonomy import LogHolonomy, Side

CENTRE = 0.5 + 0.5j


@dataclass(frozen=True)
class FillingCoeffs:
    """
    Real surgery coefficients (p, q) on one lifted cusp pair.

    The complete variant stands for the unfilled cusp (u = 0); its p and q
    are meaningless and left at zero.
    """

    p: float = 0.0
    q: float = 0.0
    complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise ValueError(f"surgery coefficients must be finite, got ({self.p}, {self.q})")
        if not self.complete and self.p == 0 and self.q == 0:
            raise ValueError("(0, 0) is not a filling; use FillingCoeffs.complete_structure()")

    @classmethod
    def complete_structure(cls) -> "FillingCoeffs":
        return cls(complete=True)

    @property
    def is_integral(self) -> bool:
        return not self.complete and self.p.is_integer() and self.q.is_integer()

    def as_tuple(self) -> Tuple[float, float]:
        return (self.p, self.q)

    def __str__(self) -> str:
        if self.complete:
            return "complete"
        return f"({self.p:g}, {self.q:g})"


@dataclass(frozen=True)
class PathSpec:
    """
    A polyline in the parameter plane, starting at the complete structure.

    With restrict_to_cut_plane set, the path may not cross the four rays
    leaving the corners of the unit square away from its centre.
    """

    waypoints: Tuple[complex, ...] = (CENTRE,)
    max_step: Optional[float] = None
    restrict_to_cut_plane: bool = True

    def __post_init__(self):
        points = tuple(complex(w) for w in self.waypoints)
        if not points:
            raise ValueError("a path needs at least one waypoint")
        object.__setattr__(self, "waypoints", points)

    @classmethod
    def straight(cls, end: complex, max_step: Optional[float] = None) -> "PathSpec":
        """The segment from the centre of the square to end."""
        return cls(waypoints=(CENTRE, complex(end)), max_step=max_step)

    @property
    def start(self) -> complex:
        return self.waypoints[0]

    @property
    def endpoint(self) -> complex:
        return self.waypoints[-1]

    def legs(self):
        """Consecutive (from, to) pairs, skipping zero-length legs."""
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a != b:
                yield a, b

    def extended(self, *points: complex) -> "PathSpec":
        return PathSpec(
            waypoints=self.waypoints + tuple(points),
            max_step=self.max_step,
            restrict_to_cut_plane=self.restrict_to_cut_plane,
        )


@dataclass(frozen=True)
class SolveResult:
    """Solution of p u + q v = 2 pi i on one side."""

    param: complex
    log_hol: LogHolonomy
    residual: float
    iterations: int
    path_taken: PathSpec
    side: Side = Side.BETA
    filling: FillingCoeffs = field(default_factory=FillingCoeffs.complete_structure)
    start: complex = CENTRE
    restarts: int = 0


@dataclass(frozen=True)
class CoreGeodesic:
    """
    Complex length of the core of a filled cusp.

    The real part is the translation length and the imaginary part the
    torsion. (r, s) completes the primitive pair (p, q) with p s - q r = 1;
    cone_order is the common factor divided out of non-primitive fillings.
    """

    complex_length: complex
    r: int
    s: int
    cone_order: int = 1

    @property
    def length(self) -> float:
        return self.complex_length.real

    @property
    def torsion(self) -> float:
        return self.complex_length.imag
