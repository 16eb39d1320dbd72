"""
Analytic continuation of the logarithmic holonomies (u, v).

u and v start at 0 at the complete structure and are carried along a path by
accumulating the principal logarithm of the ratio between consecutive
holonomy values. Steps are subdivided until both ratios stay within a
quarter turn, so no branch change can be missed.

The cut plane is the complex plane minus the four rays leaving the corners of
the unit square away from its centre. It is star-shaped about the centre, so
a straight segment from the centre never crosses a cut.
"""

import cmath
import logging
import math
from typing import List, Optional, Tuple

from ..errors import InvalidPath, StepCollapse
from ..models.holonomy import LogHolonomy, Side
from ..models.settings import DEFAULT_SETTINGS, SolverSettings
from ..models.surgery import PathSpec
from .config import COMPLETE_POINT, PUNCTURES, TWO_PI_I
from .holonomy import HOLONOMY_DIVISORS, side_holonomy

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2

# Outward direction of the cut at each corner.
CUT_DIRECTIONS = {corner: cmath.phase(corner - COMPLETE_POINT) for corner in PUNCTURES}

ARC_SAMPLES = 16


def nearest_puncture(x: complex) -> Tuple[complex, float]:
    """The corner of the unit square closest to x and its distance."""
    corner = min(PUNCTURES, key=lambda c: abs(x - c))
    return corner, abs(x - corner)


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def segment_crosses_cut(a: complex, b: complex, corner: complex, tol: float = 1e-15) -> bool:
    """Whether the closed segment [a, b] meets the cut ray leaving corner."""
    d = cmath.exp(1j * CUT_DIRECTIONS[corner])
    e = b - a
    denom = _cross(e, d)
    w = corner - a
    if abs(denom) < tol:
        # Parallel: only a collinear overlap counts.
        if abs(_cross(w, d)) > tol * max(1.0, abs(w)):
            return False
        s_a = ((a - corner) * d.conjugate()).real
        s_b = ((b - corner) * d.conjugate()).real
        return max(s_a, s_b) >= 0
    t = _cross(w, d) / denom
    s = _cross(w, e) / denom
    return -tol <= t <= 1 + tol and s >= -tol


def validate_path(path: PathSpec, settings: SolverSettings = DEFAULT_SETTINGS):
    """
    Check that a path avoids the punctures and, if restricted, the cuts.

    Raises:
        InvalidPath: If a waypoint is within degeneracy_eps of a puncture or
            a leg crosses a cut ray of a restricted path
    """
    for w in path.waypoints:
        corner, dist = nearest_puncture(w)
        if dist < settings.degeneracy_eps:
            raise InvalidPath(f"waypoint {w} is within {settings.degeneracy_eps:g} of the puncture {corner}")
    if not path.restrict_to_cut_plane:
        return
    for a, b in path.legs():
        for corner in PUNCTURES:
            if segment_crosses_cut(a, b, corner):
                raise InvalidPath(f"leg {a} -> {b} crosses the cut at {corner}")


def _walk_leg(
    x: complex,
    target: complex,
    side: Side,
    values: Tuple[complex, complex],
    acc: Tuple[complex, complex],
    max_step: Optional[float],
    settings: SolverSettings,
) -> Tuple[Tuple[complex, complex], Tuple[complex, complex], int]:
    m, l = values
    acc_u, acc_v = acc
    steps = 0
    while x != target:
        remaining = abs(target - x)
        _, clearance = nearest_puncture(x)
        step = min(settings.step_fraction * clearance, remaining)
        if max_step is not None:
            step = min(step, max_step)
        direction = (target - x) / remaining
        while True:
            if step < settings.min_step:
                raise StepCollapse(f"continuation step fell below {settings.min_step:g} near {x}")
            y = target if step >= remaining else x + step * direction
            m_y, l_y = side_holonomy(y, side, settings.degeneracy_eps)
            ratio_m = m_y / m
            ratio_l = l_y / l
            if abs(cmath.phase(ratio_m)) < HALF_PI and abs(cmath.phase(ratio_l)) < HALF_PI:
                break
            logger.debug("Halving continuation step %.3g at %s", step, x)
            step /= 2
        acc_u += cmath.log(ratio_m)
        acc_v += cmath.log(ratio_l)
        x, m, l = y, m_y, l_y
        steps += 1
    return (m, l), (acc_u, acc_v), steps


def _branch(accumulated: complex, value: complex) -> int:
    return round((accumulated.imag - cmath.phase(value)) / (2 * math.pi))


def extend_log(
    start: LogHolonomy,
    x_from: complex,
    x_to: complex,
    side: Side,
    max_step: Optional[float] = None,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> LogHolonomy:
    """
    Continue an existing (u, v) at x_from along the segment to x_to.

    No cut-plane restriction applies; crossing a cut changes the branch
    integers continuously with the path.
    """
    side = Side(side)
    m, l = side_holonomy(x_from, side, settings.degeneracy_eps)
    (m, l), (u, v), _ = _walk_leg(
        complex(x_from), complex(x_to), side, (m, l), (start.u, start.v), max_step, settings
    )
    return LogHolonomy.from_branches(m, l, _branch(u, m), _branch(v, l))


def continue_log(
    path: PathSpec, side: Side, settings: SolverSettings = DEFAULT_SETTINGS
) -> LogHolonomy:
    """
    Continue (u, v) from (0, 0) at the complete structure along a path.

    Args:
        path: Polyline starting at the centre of the unit square
        side: Which parameter the path moves
        settings: Step control and puncture tolerance

    Returns:
        LogHolonomy at the path's endpoint with its branch integers

    Raises:
        InvalidPath: If the path does not start at the centre, touches a
            puncture or (when restricted) crosses a cut
        StepCollapse: If subdivision cannot keep each step within a quarter turn
    """
    side = Side(side)
    if abs(path.start - COMPLETE_POINT) > settings.degeneracy_eps:
        raise InvalidPath(f"path must start at the complete structure {COMPLETE_POINT}, got {path.start}")
    validate_path(path, settings)

    max_step = path.max_step if path.max_step is not None else settings.max_step
    m, l = side_holonomy(COMPLETE_POINT, side, settings.degeneracy_eps)
    acc = (cmath.log(m), cmath.log(l))
    total_steps = 0
    for a, b in path.legs():
        (m, l), acc, steps = _walk_leg(a, b, side, (m, l), acc, max_step, settings)
        total_steps += steps

    result = LogHolonomy.from_branches(m, l, _branch(acc[0], m), _branch(acc[1], l))
    logger.debug(
        "Continued %s-side logs to %s in %d steps: branches (%d, %d)",
        side.value, path.endpoint, total_steps, result.branch_u, result.branch_v,
    )
    return result


def _corner_log(x: complex, corner: complex) -> complex:
    """log(x - corner) with its cut along the outward ray from corner."""
    phi = CUT_DIRECTIONS[corner]
    d = x - corner
    arg = phi + math.pi + cmath.phase(-d * cmath.exp(-1j * phi))
    return complex(math.log(abs(d)), arg)


def cut_plane_logs(x: complex, side: Side, eps: float = DEFAULT_SETTINGS.degeneracy_eps) -> LogHolonomy:
    """
    Exact cut-plane branch of (u, v) at x.

    Each closed form is a signed product of (x - c) over the corners c, so its
    logarithm is the signed sum of corner logarithms, each cut along its own
    outward ray, normalized to vanish at the centre.
    """
    side = Side(side)
    x = complex(x)
    m, l = side_holonomy(x, side, eps)
    divisors = HOLONOMY_DIVISORS[side]

    def branch_log(divisor):
        return sum(sign * (_corner_log(x, c) - _corner_log(COMPLETE_POINT, c)) for c, sign in divisor)

    u = branch_log(divisors["m"])
    v = branch_log(divisors["l"])
    return LogHolonomy(u=u, v=v, branch_u=_branch(u, m), branch_v=_branch(v, l))


def rotate_quarter(x: complex) -> complex:
    """Quarter turn x -> i x + 1 about the centre of the unit square."""
    return 1j * complex(x) + 1


def rotate_log_holonomy(log_hol: LogHolonomy) -> LogHolonomy:
    """(u, v) at rotate_quarter(x) given (u, v) at x: the pair maps to (v, -u)."""
    return LogHolonomy(u=log_hol.v, v=-log_hol.u, branch_u=log_hol.branch_v, branch_v=-log_hol.branch_u)


def _closest_approach(a: complex, b: complex, c: complex) -> Tuple[float, float]:
    """Parameter t in [0, 1] and distance of the point of [a, b] closest to c."""
    e = b - a
    t = ((c - a) * e.conjugate()).real / abs(e) ** 2
    t = min(1.0, max(0.0, t))
    return t, abs(a + t * e - c)


def _detour(corner: complex, end: complex, clearance: float) -> List[complex]:
    """Waypoints stopping short of corner, arcing round it on end's side, then to end."""
    inward = CUT_DIRECTIONS[corner] + math.pi
    entry = corner + clearance * cmath.exp(1j * inward)
    sweep = math.remainder(cmath.phase(end - corner) - inward, 2 * math.pi)
    arc = [
        corner + clearance * cmath.exp(1j * (inward + sweep * k / ARC_SAMPLES))
        for k in range(1, ARC_SAMPLES + 1)
    ]
    return [entry] + arc + [end]


def default_path(x: complex, settings: SolverSettings = DEFAULT_SETTINGS) -> PathSpec:
    """
    Path from the centre to x used when the caller gives none.

    The straight segment, unless it passes closer than detour_trigger to a
    corner at an interior point; then the path detours round that corner at
    distance detour_clearance.
    """
    x = complex(x)
    for corner in PUNCTURES:
        t, dist = _closest_approach(COMPLETE_POINT, x, corner)
        if 0.0 < t < 1.0 and dist < settings.detour_trigger:
            logger.debug("Detouring around %s on the way to %s", corner, x)
            waypoints = (COMPLETE_POINT, *_detour(corner, x, settings.detour_clearance))
            return PathSpec(waypoints=waypoints, max_step=settings.max_step, restrict_to_cut_plane=False)
    return PathSpec.straight(x, max_step=settings.max_step)
