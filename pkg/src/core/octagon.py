"""
Octagon construction, its tiling check and the horoball-section match.

Each apex X over a base segment P O is taken on the same side,
X = (P + O)/2 - i (O - P)/2, which makes T - R = 1 and S - U = -i for every
interior O.
"""

import itertools
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from ..errors import DegenerateTriangle
from ..models.octagon import APEX_BASES, SQUARE_VERTICES, OctagonConfig
from ..models.reports import VerificationReport
from .config import DEGENERACY_EPS
from .report_builder import ReportBuilder
from .shapes import beta_shapes

logger = logging.getLogger(__name__)

# Clockwise apex on every base segment.
APEX_SIGN = -1
TRANSLATION_T_MINUS_R = 1 + 0j
TRANSLATION_S_MINUS_U = -1j

HOROBALL_TRIANGLES: Tuple[str, ...] = ("DUO", "CTO", "BSO", "ARO")
HOROBALL_SHAPES: Tuple[str, ...] = ("z2", "w3", "z4", "w1")

# Vertex labelling (v0, v1, v2) with shape (v2 - v0)/(v1 - v0), and the
# beta-side simplex each horoball triangle reproduces.
HOROBALL_ASSIGNMENT: Dict[str, Tuple[str, str]] = {
    "DUO": ("UDO", "w1"),
    "CTO": ("TCO", "z4"),
    "BSO": ("SBO", "w3"),
    "ARO": ("RAO", "z2"),
}

OPPOSITE_PAIRS: Tuple[Tuple[str, str], ...] = (("DUO", "BSO"), ("CTO", "ARO"))


def apex(base: complex, omega: complex, sign: int = APEX_SIGN) -> complex:
    """Right-angle vertex of the right isosceles triangle on the segment base-omega."""
    return (base + omega) / 2 + sign * 1j * (omega - base) / 2


def octagon_construct(omega: complex, eps: float = DEGENERACY_EPS) -> OctagonConfig:
    """
    Erect the four right isosceles triangles on the segments from O = omega.

    Raises:
        DegenerateTriangle: If omega is not strictly inside the unit square or
            is within eps of a vertex
    """
    omega = complex(omega)
    if not (0 < omega.real < 1 and 0 < omega.imag < 1):
        raise DegenerateTriangle(f"O = {omega} is not inside the open unit square")
    for name, vertex in SQUARE_VERTICES.items():
        if abs(omega - vertex) < eps:
            raise DegenerateTriangle(f"O = {omega} coincides with the vertex {name}")

    points = {name: apex(SQUARE_VERTICES[base], omega) for name, base in APEX_BASES.items()}
    flags = tuple(APEX_SIGN < 0 for _ in ("S", "T", "U", "R"))
    return OctagonConfig(O=omega, orientation_flags=flags, **points)


def triangle_shape(v0: complex, v1: complex, v2: complex) -> complex:
    """Similarity class (v2 - v0)/(v1 - v0) seen from v0."""
    return (v2 - v0) / (v1 - v0)


def _orient(a: complex, b: complex, c: complex) -> float:
    return ((b - a) * (c - a).conjugate()).imag


def _on_segment(a: complex, b: complex, c: complex, tol: float) -> bool:
    return (
        abs(_orient(a, b, c)) <= tol
        and min(a.real, b.real) - tol <= c.real <= max(a.real, b.real) + tol
        and min(a.imag, b.imag) - tol <= c.imag <= max(a.imag, b.imag) + tol
    )


def segments_intersect(p1: complex, p2: complex, q1: complex, q2: complex, tol: float = 1e-15) -> bool:
    """Whether closed segments [p1, p2] and [q1, q2] meet."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    ):
        return True
    return (
        _on_segment(q1, q2, p1, tol)
        or _on_segment(q1, q2, p2, tol)
        or _on_segment(p1, p2, q1, tol)
        or _on_segment(p1, p2, q2, tol)
    )


def is_simple_polygon(vertices: Iterable[complex]) -> bool:
    """No two non-adjacent edges of the closed polygon meet."""
    pts = list(vertices)
    n = len(pts)
    edges = [(pts[k], pts[(k + 1) % n]) for k in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if j == i + 1 or (i == 0 and j == n - 1):
            continue
        if segments_intersect(*edges[i], *edges[j]):
            return False
    return True


def polygon_area(vertices: Iterable[complex]) -> float:
    """Signed shoelace area, positive for counter-clockwise order."""
    pts = list(vertices)
    return 0.5 * sum(
        (pts[k].conjugate() * pts[(k + 1) % len(pts)]).imag for k in range(len(pts))
    )


def smallest_triangle_diameter(cfg: OctagonConfig) -> float:
    return min(
        max(abs(a - b) for a, b in itertools.combinations(tri, 2))
        for tri in cfg.construction_triangles.values()
    )


def octagon_tiling_check(
    cfg: OctagonConfig, tol: float = 1e-13, builder: Optional[ReportBuilder] = None
) -> VerificationReport:
    """
    Check the translation identities, right isosceles triangles, simplicity
    and unit area of ASBTCUDR.
    """
    own = builder is None
    builder = builder or ReportBuilder("octagon")
    label = f"O={cfg.O:.6g}"

    builder.measure("T - R = 1", abs(cfg.T - cfg.R - TRANSLATION_T_MINUS_R), tol, label)
    builder.measure("S - U = -i", abs(cfg.S - cfg.U - TRANSLATION_S_MINUS_U), tol, label)
    for name, (base, top, o) in cfg.construction_triangles.items():
        # O - X = sign * i (P - X) at the right-angle vertex X
        builder.measure(
            "right isosceles triangles",
            abs((o - top) - APEX_SIGN * 1j * (base - top)),
            tol,
            f"{label} {name}",
        )
    builder.require("octagon is simple", is_simple_polygon(cfg.octagon), label)
    builder.measure("octagon has unit area", abs(polygon_area(cfg.octagon) - 1.0), tol, label)
    builder.count_sample()
    if own:
        builder.note("smallest_triangle_diameter", smallest_triangle_diameter(cfg))
        builder.note("S - U", "-i")
    return builder.build()


def triangle_shapes(cfg: OctagonConfig) -> Dict[str, complex]:
    """Shapes of the horoball triangles under the frozen vertex labelling."""
    return {
        triangle: triangle_shape(*cfg.triangle(labelling))
        for triangle, (labelling, _) in HOROBALL_ASSIGNMENT.items()
    }


def search_assignments(cfg: OctagonConfig, tol: float = 1e-10) -> Dict[str, List[Tuple[str, str]]]:
    """
    Every (vertex labelling, simplex) pair under which a horoball triangle
    reproduces one of z2, w3, z4, w1 at beta = O.
    """
    targets = {name: shape.z for name, shape in beta_shapes(cfg.O).items()}
    found: Dict[str, List[Tuple[str, str]]] = {}
    for triangle in HOROBALL_TRIANGLES:
        matches = []
        for labelling in itertools.permutations(triangle):
            value = triangle_shape(*cfg.triangle("".join(labelling)))
            for simplex in HOROBALL_SHAPES:
                if abs(value - targets[simplex]) <= tol * max(1.0, abs(targets[simplex])):
                    matches.append(("".join(labelling), simplex))
        found[triangle] = matches
    return found


def horoball_correspondence(
    omega: complex, tol: float = 1e-10, builder: Optional[ReportBuilder] = None
) -> VerificationReport:
    """
    Match the triangles DUO, CTO, BSO, ARO against the beta-side shapes at beta = omega.

    The frozen assignment must be among the matches found by exhaustive
    search; the opposite-pair products and the companion product are
    checked from triangle data alone.
    """
    own = builder is None
    builder = builder or ReportBuilder("octagon")
    cfg = octagon_construct(omega)
    label = f"O={cfg.O:.6g}"

    found = search_assignments(cfg, tol)
    for triangle, (labelling, simplex) in HOROBALL_ASSIGNMENT.items():
        builder.require(
            "frozen horoball assignment matches",
            (labelling, simplex) in found[triangle],
            f"{label} {triangle}",
        )

    shapes = triangle_shapes(cfg)
    for first, second in OPPOSITE_PAIRS:
        builder.measure(
            "opposite triangle shapes multiply to -1",
            abs(shapes[first] * shapes[second] + 1),
            1e-12,
            f"{label} {first}*{second}",
        )
    doubleprime = 1.0
    for value in shapes.values():
        doubleprime *= 1 / (1 - value)
    builder.measure("w1'' w3'' z2'' z4'' = -1/4", abs(doubleprime + 0.25), 1e-12, label)
    builder.count_sample()

    if own:
        builder.note("assignment", {t: f"{lab}->{s}" for t, (lab, s) in HOROBALL_ASSIGNMENT.items()})
        builder.note("matches", {t: [f"{lab}->{s}" for lab, s in m] for t, m in found.items()})
    return builder.build()
