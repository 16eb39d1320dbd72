"""
Numerical verification of the isolation, circle-to-square and
infinite-circle theorems, the half-volume corollary, the shape relations and
the octagon geometry.

Every verifier returns a VerificationReport and is deterministic for a given
seed. Samples that cannot be evaluated are reported, never dropped silently.
"""

import cmath
import logging
import math
from typing import Iterable, List, Optional, Sequence

import numpy as np

from ..errors import SurgerySpaceError
from ..models.holonomy import CuspId, Side
from ..models.reports import VerificationReport
from ..models.settings import DEFAULT_SETTINGS, SolverSettings
from ..models.shapes import BETA_SHAPES, ParamPoint
from ..models.surgery import FillingCoeffs, PathSpec
from .config import CIRCLE_RADIUS, COMPLETE_POINT, PUNCTURES
from .continuation import (
    continue_log,
    cut_plane_logs,
    default_path,
    rotate_log_holonomy,
    rotate_quarter,
    validate_path,
)
from .holonomy import (
    cancellation_identities,
    cusp_modulus,
    holonomy_closed_form,
    holonomy_words,
    side_holonomy,
)
from .octagon import (
    horoball_correspondence,
    octagon_construct,
    octagon_tiling_check,
    smallest_triangle_diameter,
)
from .report_builder import ReportBuilder
from .shapes import classify_orientation, consistency_residuals, shapes_from_params
from .surgery import filled_geodesic_length, filling_from_log, joint_solve, solve_filling
from .volume import lobachevsky, volume

logger = logging.getLogger(__name__)

SAMPLE_LOW = -1.5
SAMPLE_HIGH = 2.5
SAMPLE_CLEARANCE = 0.1

COMPLETE_VOLUME = 16 * lobachevsky(math.pi / 4)
HALF_VOLUME = COMPLETE_VOLUME / 2

DEFAULT_RADII = (1e2, 1e3, 1e4)
DEFAULT_ANGLES = tuple(math.pi / 16 + k * math.pi / 8 for k in range(16))
RAY_ANGLES = (math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4)
RAY_SKIP = 0.02

# Vertices of the unit square seen from the centre, and the corner of the
# (+-2, +-2) square each one maps to.
VERTEX_CORNERS = {
    1 + 1j: (-2.0, 2.0),
    1j: (2.0, 2.0),
    0j: (2.0, -2.0),
    1 + 0j: (-2.0, -2.0),
}
BLOWUP_OFFSETS = (0.3, 0.1, 0.03, 0.01, 0.003)

COROLLARY_FILLINGS = (
    (0.0, 2.0), (1.0, 2.0), (-1.5, 2.0), (2.0, 0.0),
    (2.0, -1.0), (0.0, -2.0), (-2.0, 0.5), (-2.0, -1.0),
)


def random_points(
    rng: np.random.Generator,
    n: int,
    low: float = SAMPLE_LOW,
    high: float = SAMPLE_HIGH,
    clearance: float = SAMPLE_CLEARANCE,
) -> List[complex]:
    """n uniform points of the square [low, high]^2 at least clearance from every puncture."""
    points: List[complex] = []
    while len(points) < n:
        re, im = rng.uniform(low, high, size=2)
        z = complex(re, im)
        if min(abs(z - c) for c in PUNCTURES) >= clearance:
            points.append(z)
    return points


def _fmt(z: complex) -> str:
    return f"{complex(z):.10g}"


def _log_gap(a, b) -> float:
    return max(abs(a.u - b.u), abs(a.v - b.v))


def verify_consistency(
    n_samples: int = 10000, seed: int = 0, settings: SolverSettings = DEFAULT_SETTINGS
) -> VerificationReport:
    """
    Gluing and octagon relations, companion products, parameter separation,
    word/closed-form agreement and the cancellation identities on random
    parameter points.
    """
    rng = np.random.default_rng(seed)
    builder = ReportBuilder("consistency", seed)
    alphas = random_points(rng, n_samples)
    betas = random_points(rng, n_samples)

    for alpha, beta in zip(alphas, betas):
        point = ParamPoint(alpha, beta)
        label = f"alpha={_fmt(alpha)} beta={_fmt(beta)}"
        try:
            s = shapes_from_params(point, settings.degeneracy_eps)
        except SurgerySpaceError as e:
            builder.skip(f"{label}: {e}")
            continue

        for relation, residual in consistency_residuals(s).items():
            builder.measure(relation, abs(residual), 1e-12, label)
        for name, shape in s.items():
            builder.measure("z z' z'' = -1", abs(shape.product + 1), 1e-14, f"{label} {name}")

        other = shapes_from_params(point.with_beta(alpha), settings.degeneracy_eps)
        same = all(s[name] == other[name] for name in ("z1", "z3", "w2", "w4"))
        builder.require("alpha shapes independent of beta", same, label)

        words = holonomy_words(s, settings.degeneracy_eps)
        closed = holonomy_closed_form(point, settings.degeneracy_eps)
        builder.measure("words equal closed forms", words.max_difference(closed, relative=True), 1e-11, label)
        for identity, residual in cancellation_identities(point, settings.degeneracy_eps).items():
            builder.measure(identity, abs(residual), 1e-12, label)
        builder.count_sample()

    logger.info("Consistency: %d samples, max residual %.2e", builder.sample_count, builder.build().max_residual)
    return builder.build()


def _fd_modulus(cusp: CuspId, alpha: complex, beta: complex, h: float = 1e-6) -> complex:
    """Modulus from central differences of the word products in the cusp's own parameter."""

    def words_at(a: complex, b: complex):
        return holonomy_words(shapes_from_params(ParamPoint(a, b)))[cusp]

    if cusp.side is Side.BETA:
        plus, minus = words_at(alpha, beta + h), words_at(alpha, beta - h)
    else:
        plus, minus = words_at(alpha + h, beta), words_at(alpha - h, beta)
    tau = cmath.log(plus.l / minus.l) / cmath.log(plus.m / minus.m)
    return -tau if tau.imag < 0 else tau


def isolation_fillings(grid: int) -> List[FillingCoeffs]:
    """grid^2 integral fillings outside the (+-2, +-2) square."""
    values = [(-1) ** k * (3 + k) for k in range(grid)]
    return [FillingCoeffs(p, q) for p in values for q in values]


def verify_isolation(
    grid: int = 5,
    seed: int = 0,
    n_alpha: int = 1000,
    settings: SolverSettings = DEFAULT_SETTINGS,
    f_beta: Optional[FillingCoeffs] = None,
) -> VerificationReport:
    """
    Strong isolation: the beta pair's holonomy, solution and cusp shape do not
    see the alpha filling, and vice versa.
    """
    if grid < 4:
        raise ValueError("grid must be at least 4")
    rng = np.random.default_rng(seed)
    builder = ReportBuilder("thm1", seed)
    f_beta = f_beta or FillingCoeffs(3, -4)

    beta_fixed, alpha_fixed = random_points(rng, 2, clearance=0.3)
    alphas = random_points(rng, n_alpha)
    betas = random_points(rng, n_alpha)

    def spread(values: Sequence[complex]) -> float:
        scale = max(1.0, max(abs(v) for v in values))
        return max(abs(v - values[0]) for v in values) / scale

    beta_words = [holonomy_words(shapes_from_params(ParamPoint(a, beta_fixed))) for a in alphas]
    alpha_words = [holonomy_words(shapes_from_params(ParamPoint(alpha_fixed, b))) for b in betas]
    for check, words, cusps in (
        ("beta-pair holonomy constant in alpha", beta_words, (CuspId.W, CuspId.Z)),
        ("alpha-pair holonomy constant in beta", alpha_words, (CuspId.Y, CuspId.X)),
    ):
        for cusp in cusps:
            builder.measure(check, spread([w[cusp].l for w in words]), 1e-12, f"l_{cusp.value}")
            builder.measure(check, spread([w[cusp].m for w in words]), 1e-12, f"m_{cusp.value}")
    builder.count_sample(2 * n_alpha)

    h = 1e-5
    for alpha, beta in zip(alphas[:100], betas[:100]):
        plus = holonomy_words(shapes_from_params(ParamPoint(alpha + h, beta)))[CuspId.W].l
        minus = holonomy_words(shapes_from_params(ParamPoint(alpha - h, beta)))[CuspId.W].l
        builder.measure("d l_W / d alpha vanishes", abs(plus - minus) / (2 * h), 1e-7, _fmt(alpha))

    for cusp in CuspId:
        modulus = cusp_modulus(cusp)
        builder.measure("complete cusp modulus is i", abs(modulus.tau - 1j), 1e-12, cusp.value)
        fd_tau = _fd_modulus(cusp, COMPLETE_POINT, COMPLETE_POINT)
        builder.measure("finite-difference modulus agrees", abs(fd_tau - modulus.tau), 1e-5, cusp.value)

    betas_out, volumes, taus, fd_taus = [], [], [], []
    for f_alpha in isolation_fillings(grid):
        label = f"f_alpha={f_alpha}"
        try:
            alpha_res, beta_res = joint_solve(f_alpha, f_beta, settings)
        except SurgerySpaceError as e:
            builder.require("joint solve succeeds", False, f"{label}: {type(e).__name__}: {e}")
            continue
        builder.require("joint solve succeeds", True, label)
        betas_out.append(beta_res.param)
        volumes.append(volume(shapes_from_params(ParamPoint(alpha_res.param, beta_res.param))))
        taus.append(cusp_modulus(CuspId.W, beta_res.param).tau)
        fd_taus.append(_fd_modulus(CuspId.W, alpha_res.param, COMPLETE_POINT))
        builder.count_sample()

    if betas_out:
        beta_spread = max(abs(b - betas_out[0]) for b in betas_out)
        builder.measure("beta solution independent of the alpha filling", beta_spread, 1e-12, str(f_beta))
        tau_spread = max(abs(t - taus[0]) for t in taus)
        builder.measure("beta-cusp modulus independent of the alpha filling", tau_spread, 1e-12, "W")
        fd_error = max(abs(t - 1j) for t in fd_taus)
        builder.measure("finite-difference complete beta-cusp modulus is i", fd_error, 1e-5, "W")
        volume_spread = max(volumes) - min(volumes)
        distinct = len(volumes) < 2 or volume_spread > 1e-6
        builder.require("volume varies with the alpha filling", distinct, f"spread {volume_spread:.3e}")
        builder.note("volume_range", [min(volumes), max(volumes)])
    builder.note("f_beta", str(f_beta))
    return builder.build()


def circle_point(theta: float) -> complex:
    return COMPLETE_POINT + CIRCLE_RADIUS * cmath.exp(1j * theta)


def arc_of(theta: float) -> str:
    """Arc of the circle between consecutive square vertices containing angle theta."""
    t = math.remainder(theta, 2 * math.pi)
    if -math.pi / 4 < t < math.pi / 4:
        return "right"
    if math.pi / 4 < t < 3 * math.pi / 4:
        return "top"
    if -3 * math.pi / 4 < t < -math.pi / 4:
        return "bottom"
    return "left"


# Coordinate pinned on each arc: (index into (p, q), value).
ARC_EDGES = {"top": (1, 2.0), "bottom": (1, -2.0), "left": (0, 2.0), "right": (0, -2.0)}


def verify_theorem2(
    n_samples: int = 64, settings: SolverSettings = DEFAULT_SETTINGS, vertex_clearance: float = 1e-3
) -> VerificationReport:
    """
    The circle |beta - (1+i)/2| = 1/sqrt 2 maps onto the boundary of the
    (+-2, +-2) square, with four flat simplices along it.
    """
    if n_samples < 8:
        raise ValueError("n_samples must be at least 8")
    builder = ReportBuilder("thm2")
    thetas = [math.pi * (2 * k + 1) / n_samples for k in range(n_samples)]
    tol = 1e-9

    for theta in thetas:
        vertex_gap = min(abs(math.remainder(theta - (math.pi / 4 + k * math.pi / 2), 2 * math.pi)) for k in range(4))
        if vertex_gap < vertex_clearance:
            builder.skip(f"theta={theta:.6f} within {vertex_clearance:g} of a vertex")
            continue
        beta = circle_point(theta)
        label = f"theta={theta:.6f}"
        try:
            s = shapes_from_params(ParamPoint(COMPLETE_POINT, beta), settings.degeneracy_eps)
            log_hol = continue_log(default_path(beta, settings), Side.BETA, settings)
            f = filling_from_log(log_hol, settings)
            rotated = continue_log(default_path(rotate_quarter(beta), settings), Side.BETA, settings)
        except SurgerySpaceError as e:
            builder.require("sample evaluates", False, f"{label}: {type(e).__name__}: {e}")
            continue

        for name in BETA_SHAPES:
            z = s[name].z
            builder.measure("w1, w3, z2, z4 flat", abs(z.imag), settings.flat_eps, f"{label} {name}")
        builder.measure("(p, q) on the (+-2, +-2) square", abs(max(abs(f.p), abs(f.q)) - 2), tol, label)

        arc = arc_of(theta)
        index, value = ARC_EDGES[arc]
        builder.measure(f"{arc} arc coordinate", abs(f.as_tuple()[index] - value), tol, label)
        if arc == "top":
            builder.require("|Re v| <= |Re u| on the top arc", abs(log_hol.v.real) <= abs(log_hol.u.real) + tol, label)

        expected = rotate_log_holonomy(log_hol)
        builder.measure(
            "quarter-turn symmetry of (u, v)",
            max(abs(rotated.u - expected.u), abs(rotated.v - expected.v)),
            1e-10,
            label,
        )
        f_rot = filling_from_log(rotated, settings)
        builder.measure(
            "quarter-turn symmetry of (p, q)",
            max(abs(f_rot.p - f.q), abs(f_rot.q + f.p)),
            tol,
            label,
        )
        builder.count_sample()

    for arc, theta in (("right", 0.0), ("top", math.pi / 2), ("left", math.pi), ("bottom", -math.pi / 2)):
        f = filling_from_log(continue_log(default_path(circle_point(theta), settings), Side.BETA, settings), settings)
        index, _ = ARC_EDGES[arc]
        builder.measure("arc midpoint is symmetric", abs(f.as_tuple()[1 - index]), tol, arc)

    corners = []
    for vertex, corner in VERTEX_CORNERS.items():
        angle = cmath.phase(vertex - COMPLETE_POINT)
        for side_sign in (-1, 1):
            theta = angle + side_sign * vertex_clearance
            f = filling_from_log(continue_log(default_path(circle_point(theta), settings), Side.BETA, settings), settings)
            gap = max(abs(f.p - corner[0]), abs(f.q - corner[1]))
            builder.measure("vertex-adjacent samples near a corner", gap, 1e-2, f"theta={theta:.6f}")
            corners.append({"vertex": _fmt(vertex), "theta": theta, "p": f.p, "q": f.q})
    builder.note("corner_samples", corners)

    lengths = []
    for delta in BLOWUP_OFFSETS:
        beta = circle_point(3 * math.pi / 4 - delta)
        log_hol = continue_log(default_path(beta, settings), Side.BETA, settings)
        lengths.append(filled_geodesic_length(filling_from_log(log_hol, settings), log_hol))
    for k in range(1, len(lengths)):
        builder.require(
            "filled geodesic length grows toward the vertex i",
            lengths[k] > lengths[k - 1],
            f"offset={BLOWUP_OFFSETS[k]:g}",
            lengths[k - 1] - lengths[k],
        )
    builder.note("blowup_lengths", dict(zip([f"{d:g}" for d in BLOWUP_OFFSETS], lengths)))
    builder.note("arc_convention", {arc: f"{'pq'[i]} = {v:+g}" for arc, (i, v) in ARC_EDGES.items()})
    return builder.build()


def verify_corollary(settings: SolverSettings = DEFAULT_SETTINGS) -> VerificationReport:
    """
    Fillings on the (+-2, +-2) square put beta on the circle, where the total
    volume is half that of the complete structure.
    """
    builder = ReportBuilder("corollary")
    complete = shapes_from_params(ParamPoint(COMPLETE_POINT, COMPLETE_POINT))
    builder.measure("complete volume is 16 Lambda(pi/4)", abs(volume(complete) - COMPLETE_VOLUME), 1e-10, "complete")
    builder.require("complete structure positively oriented", classify_orientation(complete).all_positive, "complete")

    rows = []
    for p, q in COROLLARY_FILLINGS:
        f = FillingCoeffs(p, q)
        label = str(f)
        try:
            result = solve_filling(f, Side.BETA, settings=settings)
        except SurgerySpaceError as e:
            builder.require("filling solves", False, f"{label}: {type(e).__name__}: {e}")
            continue
        s = shapes_from_params(ParamPoint(COMPLETE_POINT, result.param))
        vol = volume(s)
        builder.measure("beta on the circle", abs(abs(result.param - COMPLETE_POINT) - CIRCLE_RADIUS), 1e-9, label)
        builder.measure("volume is half the complete volume", abs(vol - HALF_VOLUME), 1e-9, label)
        rows.append({"filling": label, "beta": _fmt(result.param), "volume": vol})
        builder.count_sample()
    builder.note("half_volume", HALF_VOLUME)
    builder.note("fillings", rows)
    return builder.build()


def sector_of(theta: float) -> str:
    """Which quarter of a large circle theta points into."""
    c, s = math.cos(theta), math.sin(theta)
    if abs(c) >= abs(s):
        return "right" if c > 0 else "left"
    return "top" if s > 0 else "bottom"


# Unit-square edge approached by each sector as |beta| grows: (index, value).
SECTOR_EDGES = {"right": (0, -1.0), "left": (0, 1.0), "top": (1, 1.0), "bottom": (1, -1.0)}


def verify_theorem3(
    radii: Iterable[float] = DEFAULT_RADII,
    angles: Iterable[float] = DEFAULT_ANGLES,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> VerificationReport:
    """
    Large circles |beta| = r approach the boundary of the (+-1, +-1) square
    as r grows, and the four beta-side shapes tend to -i.
    """
    radii = list(radii)
    if any(b <= a for a, b in zip(radii, radii[1:])) or min(radii) < 10:
        raise ValueError("radii must be increasing and at least 10")
    builder = ReportBuilder("thm3")
    table = []

    for theta in angles:
        gap = min(abs(math.remainder(theta - ray, 2 * math.pi)) for ray in RAY_ANGLES)
        if gap < RAY_SKIP:
            builder.skip(f"theta={theta:.6f} within {RAY_SKIP} rad of a cut ray")
            continue
        sector = sector_of(theta)
        index, target = SECTOR_EDGES[sector]
        distances = []
        for r in radii:
            beta = r * cmath.exp(1j * theta)
            label = f"theta={theta:.6f} r={r:g}"
            try:
                log_hol = continue_log(PathSpec.straight(beta, settings.max_step), Side.BETA, settings)
                f = filling_from_log(log_hol, settings)
                s = shapes_from_params(ParamPoint(COMPLETE_POINT, beta), settings.degeneracy_eps)
            except SurgerySpaceError as e:
                builder.require("sample evaluates", False, f"{label}: {type(e).__name__}: {e}")
                distances.append(math.inf)
                continue
            distance = abs(max(abs(f.p), abs(f.q)) - 1)
            distances.append(distance)
            shape_error = max(abs(s[name].z + 1j) for name in BETA_SHAPES)
            re_u, re_v = abs(log_hol.u.real), abs(log_hol.v.real)
            dominant = re_v >= re_u if sector in ("left", "right") else re_u >= re_v
            builder.require("dominant real part of (u, v) by sector", dominant, label)
            table.append({
                "theta": theta, "r": r, "p": f.p, "q": f.q,
                "distance": distance, "shape_error": shape_error, "edge": f"{'pq'[index]} = {target:+g}",
            })
            builder.count_sample()
            if r == radii[-1]:
                builder.measure("distance to the unit square at the largest radius", distance, 0.05, label)
                builder.measure("sector converges to its edge", abs(f.as_tuple()[index] - target), 0.05, label)
                builder.measure("beta shapes tend to -i", shape_error, 1e-3, label)
        for k in range(1, len(distances)):
            builder.require(
                "distance strictly decreasing in r",
                distances[k] < distances[k - 1],
                f"theta={theta:.6f} r={radii[k]:g}",
                distances[k] - distances[k - 1],
            )

    builder.note("radii", radii)
    builder.note("convergence_table", table)
    builder.note("sector_edges", {sector: f"{'pq'[i]} -> {v:+g}" for sector, (i, v) in SECTOR_EDGES.items()})
    return builder.build()


def verify_octagon(n_samples: int = 1000, seed: int = 0, vertex_distance: float = 1e-3) -> VerificationReport:
    """Octagon identities and horoball matches at random interior points."""
    rng = np.random.default_rng(seed)
    builder = ReportBuilder("octagon", seed)
    omegas = [complex(*rng.uniform(0.0, 1.0, size=2)) for _ in range(n_samples)]
    omegas.append(COMPLETE_POINT)
    omegas.append(0.9 + 0.1j)

    for omega in omegas:
        try:
            cfg = octagon_construct(omega)
        except SurgerySpaceError as e:
            builder.skip(f"O={_fmt(omega)}: {e}")
            continue
        octagon_tiling_check(cfg, builder=builder)
        horoball_correspondence(omega, builder=builder)

    for vertex in PUNCTURES:
        omega = vertex + vertex_distance * (COMPLETE_POINT - vertex) / abs(COMPLETE_POINT - vertex)
        cfg = octagon_construct(omega)
        octagon_tiling_check(cfg, builder=builder)
        builder.require(
            "one triangle shrinks near a vertex",
            smallest_triangle_diameter(cfg) < 3 * vertex_distance,
            f"O={_fmt(omega)}",
        )

    builder.note("T - R", "1")
    builder.note("S - U", "-i")
    return builder.build()


def verify_cut_plane_logs(
    n_samples: int = 50, seed: int = 0, settings: SolverSettings = DEFAULT_SETTINGS
) -> VerificationReport:
    """Path continuation agrees with the exact cut-plane logarithms and is path independent."""
    rng = np.random.default_rng(seed)
    builder = ReportBuilder("continuation", seed)
    ends = random_points(rng, n_samples)
    vias = random_points(rng, n_samples)
    for end, via in zip(ends, vias):
        label = f"end={_fmt(end)} via={_fmt(via)}"
        two_leg = PathSpec(waypoints=(COMPLETE_POINT, via, end))
        try:
            validate_path(two_leg, settings)
        except SurgerySpaceError:
            builder.skip(f"{label}: leaves the cut plane")
            continue
        for side in Side:
            straight = continue_log(PathSpec.straight(end), side, settings)
            bent = continue_log(two_leg, side, settings)
            exact = cut_plane_logs(end, side)
            m, l = side_holonomy(end, side)
            builder.measure("homotopic paths agree", _log_gap(straight, bent), 1e-10, label)
            builder.measure("continuation matches cut-plane logs", _log_gap(straight, exact), 1e-10, label)
            round_trip = max(abs(cmath.exp(straight.u) - m) / abs(m), abs(cmath.exp(straight.v) - l) / abs(l))
            builder.measure("exp(u) = m and exp(v) = l", round_trip, 1e-12, label)
        builder.count_sample()
    return builder.build()
