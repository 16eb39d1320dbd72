"""
Octagon construction over the unit square.

Right isosceles triangles ASO, BTO, CUO and DRO are erected on the segments
joining the square's vertices A=0, B=1, C=1+i, D=i to an interior point O.
The octagon ASBTCUDR tiles the plane under translation by 1 and i.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

SQUARE_VERTICES: Dict[str, complex] = {"A": 0j, "B": 1 + 0j, "C": 1 + 1j, "D": 1j}

# Base vertex of the triangle whose apex is the constructed point.
APEX_BASES: Dict[str, str] = {"S": "A", "T": "B", "U": "C", "R": "D"}

OCTAGON_ORDER: Tuple[str, ...] = ("A", "S", "B", "T", "C", "U", "D", "R")


@dataclass(frozen=True)
class OctagonConfig:
    """
    Points of the construction for one choice of O.

    orientation_flags records, per apex in the order S, T, U, R, whether
    the apex was taken on the clockwise side of its base segment.
    """

    O: complex
    R: complex
    S: complex
    T: complex
    U: complex
    orientation_flags: Tuple[bool, bool, bool, bool]
    A: complex = SQUARE_VERTICES["A"]
    B: complex = SQUARE_VERTICES["B"]
    C: complex = SQUARE_VERTICES["C"]
    D: complex = SQUARE_VERTICES["D"]

    def point(self, name: str) -> complex:
        return getattr(self, name)

    @property
    def octagon(self) -> Tuple[complex, ...]:
        """Vertices of ASBTCUDR in order."""
        return tuple(self.point(name) for name in OCTAGON_ORDER)

    def triangle(self, names: str) -> Tuple[complex, complex, complex]:
        """Vertices of a triangle given by three point names, e.g. ``"ASO"``."""
        return tuple(self.point(name) for name in names)

    @property
    def construction_triangles(self) -> Dict[str, Tuple[complex, complex, complex]]:
        """The four right isosceles triangles, keyed ASO, BTO, CUO, DRO."""
        return {
            f"{base}{apex}O": self.triangle(f"{base}{apex}O")
            for apex, base in sorted(APEX_BASES.items(), key=lambda item: item[1])
        }
