"""
Cusp and holonomy data models.

Cusps W and Z are deformed by beta, cusps X and Y by alpha. Within each pair
the holonomies agree, so one parameter describes one lifted cusp pair.
"""

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Tuple


class Side(str, Enum):
    """Which parameter a quantity depends on."""

    ALPHA = "alpha"
    BETA = "beta"

    @property
    def cusps(self) -> Tuple["CuspId", "CuspId"]:
        if self is Side.BETA:
            return (CuspId.W, CuspId.Z)
        return (CuspId.Y, CuspId.X)

    @property
    def representative(self) -> "CuspId":
        """Cusp whose closed forms define the pair's holonomy (W or Y)."""
        return self.cusps[0]


class CuspId(str, Enum):
    """The four cusps of A*."""

    W = "W"
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def side(self) -> Side:
        return Side.BETA if self in (CuspId.W, CuspId.Z) else Side.ALPHA

    @property
    def partner(self) -> "CuspId":
        return {CuspId.W: CuspId.Z, CuspId.Z: CuspId.W, CuspId.X: CuspId.Y, CuspId.Y: CuspId.X}[self]


@dataclass(frozen=True)
class CuspHolonomy:
    """Derivatives of the longitude and meridian holonomy at one cusp."""

    l: complex
    m: complex


@dataclass(frozen=True)
class HolonomyValues:
    """Longitude/meridian holonomy derivatives at all four cusps."""

    cusps: Dict[CuspId, CuspHolonomy]

    def __getitem__(self, cusp: CuspId) -> CuspHolonomy:
        return self.cusps[CuspId(cusp)]

    def items(self) -> Iterator[Tuple[CuspId, CuspHolonomy]]:
        for cusp in CuspId:
            yield cusp, self.cusps[cusp]

    def max_difference(self, other: "HolonomyValues", relative: bool = False) -> float:
        """Largest |difference| over all eight entries, optionally relative to |self|."""
        worst = 0.0
        for cusp, mine in self.items():
            theirs = other[cusp]
            for a, b in ((mine.l, theirs.l), (mine.m, theirs.m)):
                diff = abs(a - b)
                if relative:
                    diff /= max(abs(a), 1.0)
                worst = max(worst, diff)
        return worst


@dataclass(frozen=True)
class LogHolonomy:
    """
    Branch-tracked logarithms of the meridian (u) and longitude (v) holonomy.

    u = Log m + 2 pi i branch_u and v = Log l + 2 pi i branch_v where Log is
    the principal logarithm.
    """

    u: complex
    v: complex
    branch_u: int = 0
    branch_v: int = 0

    @property
    def m(self) -> complex:
        return cmath.exp(self.u)

    @property
    def l(self) -> complex:
        return cmath.exp(self.v)

    @classmethod
    def from_branches(cls, m: complex, l: complex, branch_u: int, branch_v: int) -> "LogHolonomy":
        two_pi_i = 2j * cmath.pi
        return cls(
            u=cmath.log(m) + two_pi_i * branch_u,
            v=cmath.log(l) + two_pi_i * branch_v,
            branch_u=branch_u,
            branch_v=branch_v,
        )


@dataclass(frozen=True)
class CuspModulus:
    """Modulus tau = (dv/dx)/(du/dx) of a complete cusp, normalized to Im tau > 0."""

    cusp: CuspId
    tau: complex
    flipped: bool = False
