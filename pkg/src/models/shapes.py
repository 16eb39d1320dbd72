"""
Shape data models for the eight-simplex triangulation of A*.

Values are immutable once built. Complex numbers are plain Python ``complex``.
"""

import cmath
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Tuple

# Storage order of the eight simplices (first octahedron, then second).
SHAPE_NAMES: Tuple[str, ...] = ("z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4")
ALPHA_SHAPES: Tuple[str, ...] = ("z1", "z3", "w2", "w4")
BETA_SHAPES: Tuple[str, ...] = ("z2", "z4", "w1", "w3")


@dataclass(frozen=True)
class SimplexShape:
    """A shape parameter z with its companions z' = (z-1)/z and z'' = 1/(1-z)."""

    z: complex
    z_prime: complex
    z_doubleprime: complex

    @property
    def product(self) -> complex:
        """z z' z'', equal to -1 for every valid shape."""
        return self.z * self.z_prime * self.z_doubleprime

    def dihedral_args(self) -> Tuple[float, float, float]:
        """Principal arguments of (z, z', z'')."""
        return (cmath.phase(self.z), cmath.phase(self.z_prime), cmath.phase(self.z_doubleprime))


@dataclass(frozen=True)
class ParamPoint:
    """A point (alpha, beta) of the two-parameter deformation space."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = complex(getattr(self, name))
            if not (cmath.isfinite(value)):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    def with_alpha(self, alpha: complex) -> "ParamPoint":
        return ParamPoint(alpha=alpha, beta=self.beta)

    def with_beta(self, beta: complex) -> "ParamPoint":
        return ParamPoint(alpha=self.alpha, beta=beta)


@dataclass(frozen=True)
class ShapeVector:
    """The eight simplex shapes at a parameter point."""

    z1: SimplexShape
    z2: SimplexShape
    z3: SimplexShape
    z4: SimplexShape
    w1: SimplexShape
    w2: SimplexShape
    w3: SimplexShape
    w4: SimplexShape
    source: ParamPoint

    def __getitem__(self, name: str) -> SimplexShape:
        if name not in SHAPE_NAMES:
            raise KeyError(name)
        return getattr(self, name)

    def items(self) -> Iterator[Tuple[str, SimplexShape]]:
        for name in SHAPE_NAMES:
            yield name, getattr(self, name)

    def values(self) -> List[complex]:
        """The eight shape parameters z in storage order."""
        return [getattr(self, name).z for name in SHAPE_NAMES]


class Orientation(str, Enum):
    """Orientation class of a simplex."""

    POSITIVE = "+"
    FLAT = "0"
    NEGATIVE = "-"


@dataclass(frozen=True)
class OrientationReport:
    """Per-simplex orientation classification with the band used."""

    classes: Dict[str, Orientation] = field(default_factory=dict)
    epsilon: float = 1e-9

    def names_with(self, orientation: Orientation) -> List[str]:
        return [name for name in SHAPE_NAMES if self.classes.get(name) == orientation]

    @property
    def all_positive(self) -> bool:
        return all(self.classes[name] == Orientation.POSITIVE for name in SHAPE_NAMES)

    def as_string(self) -> str:
        """Eight characters, one of '+', '0', '-' per simplex in storage order."""
        return "".join(self.classes[name].value for name in SHAPE_NAMES)
