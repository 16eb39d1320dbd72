"""
Dehn filling equations.

A filling (p, q) of a cusp pair asks for p u + q v = 2 pi i, with (u, v) the
branch-tracked logarithmic holonomies of that pair. The two pairs depend on
different parameters, so each equation is a one-variable problem; the
coupled two-variable solve in joint_solve is kept as an independent check of
that decoupling.
"""

import cmath
import logging
import math
from dataclasses import replace
from typing import List, Optional, Tuple

import numpy as np

from ..errors import (
    CouplingMismatch,
    DegenerateJacobian,
    DegenerateShape,
    NoConvergence,
    NotPrimitive,
    SingularSystem,
    StepCollapse,
)
from ..models.holonomy import CuspId, LogHolonomy, Side
from ..models.settings import DEFAULT_SETTINGS, SolverSettings
from ..models.shapes import ParamPoint
from ..models.surgery import CoreGeodesic, FillingCoeffs, PathSpec, SolveResult
from .config import COMPLETE_POINT, TWO_PI_I
from .continuation import continue_log, default_path, extend_log, nearest_puncture
from .holonomy import holonomy_words, log_derivatives
from .shapes import shapes_from_params

logger = logging.getLogger(__name__)

LINE_SEARCH_HALVINGS = 30
FD_STEP = 1e-7


def filling_residual(f: FillingCoeffs, log_hol: LogHolonomy) -> complex:
    """p u + q v - 2 pi i, or u for the complete structure."""
    if f.complete:
        return log_hol.u
    return f.p * log_hol.u + f.q * log_hol.v - TWO_PI_I


def newton_start(f: FillingCoeffs, side: Side) -> complex:
    """
    First Newton iterate: the zero of the filling equation linearized at the
    complete structure.
    """
    du, dv = log_derivatives(COMPLETE_POINT, side)
    return COMPLETE_POINT + TWO_PI_I / (f.p * du + f.q * dv)


def restart_points(settings: SolverSettings = DEFAULT_SETTINGS) -> List[complex]:
    n = settings.restart_count
    return [COMPLETE_POINT + settings.restart_radius * cmath.exp(2j * math.pi * k / n) for k in range(n)]


class FillingSolver:
    """
    Damped Newton iteration for one filling equation on one side.

    The solver owns its iterate and branch state. Without a path hint each
    iterate is re-continued from the centre along the default path, which
    selects the cut-plane branch. With a hint, the start is reached along the
    hint and every Newton step is continued from the previous iterate.
    """

    def __init__(self, f: FillingCoeffs, side: Side, settings: SolverSettings = DEFAULT_SETTINGS):
        self.f = f
        self.side = Side(side)
        self.settings = settings

    def _logs_along_default(self, x: complex) -> Tuple[LogHolonomy, PathSpec]:
        path = default_path(x, self.settings)
        return continue_log(path, self.side, self.settings), path

    def _evaluate(self, x: complex, log_hol: LogHolonomy) -> Tuple[complex, complex]:
        du, dv = log_derivatives(x, self.side, self.settings.degeneracy_eps)
        g = filling_residual(self.f, log_hol)
        dg = self.f.p * du + self.f.q * dv
        return g, dg

    def run(self, start: complex, path_hint: Optional[PathSpec] = None) -> SolveResult:
        """
        Iterate from start until |g| < newton_tol.

        Raises:
            NoConvergence: On hitting max_iterations or a failed line search
            DegenerateJacobian: If |g'| falls below jacobian_floor
            StepCollapse: From the continuation
        """
        settings = self.settings
        if path_hint is not None:
            x = path_hint.endpoint
            log_hol = continue_log(path_hint, self.side, settings)
            path = path_hint
        else:
            x = complex(start)
            log_hol, path = self._logs_along_default(x)

        g, dg = self._evaluate(x, log_hol)
        for iteration in range(settings.max_iterations + 1):
            logger.debug("Newton %s-side iteration %d: x=%s |g|=%.3e", self.side.value, iteration, x, abs(g))
            if abs(g) < settings.newton_tol:
                return SolveResult(
                    param=x,
                    log_hol=log_hol,
                    residual=abs(g),
                    iterations=iteration,
                    path_taken=path,
                    side=self.side,
                    filling=self.f,
                    start=complex(start) if path_hint is None else path_hint.endpoint,
                )
            if iteration == settings.max_iterations:
                break
            if abs(dg) < settings.jacobian_floor:
                raise DegenerateJacobian(f"|g'| = {abs(dg):.3e} at {x}")

            dx = -g / dg
            t = 1.0
            for _ in range(LINE_SEARCH_HALVINGS):
                x_new = x + t * dx
                if nearest_puncture(x_new)[1] >= settings.degeneracy_eps:
                    try:
                        if path_hint is not None:
                            log_new = extend_log(log_hol, x, x_new, self.side, path.max_step, settings)
                            path_new = path.extended(x_new)
                        else:
                            log_new, path_new = self._logs_along_default(x_new)
                        g_new, dg_new = self._evaluate(x_new, log_new)
                    except (DegenerateShape, StepCollapse):
                        g_new = None
                    if g_new is not None and abs(g_new) < abs(g):
                        break
                t /= 2
            else:
                raise NoConvergence(f"line search failed at {x} (|g| = {abs(g):.3e})")
            x, log_hol, path, g, dg = x_new, log_new, path_new, g_new, dg_new

        raise NoConvergence(
            f"no convergence for {self.f} on the {self.side.value} side after "
            f"{settings.max_iterations} iterations (|g| = {abs(g):.3e})"
        )


def solve_filling(
    f: FillingCoeffs,
    side: Side,
    start: Optional[complex] = None,
    path_hint: Optional[PathSpec] = None,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> SolveResult:
    """
    Solve p u + q v = 2 pi i for the parameter of one side.

    Args:
        f: Filling coefficients; the complete variant returns the centre
        side: Side whose parameter is solved for
        start: First iterate (default: linearized solution at the centre)
        path_hint: Path whose endpoint is the start and whose branch is kept
        settings: Solver tolerances

    Returns:
        SolveResult with the solved parameter and its logarithmic holonomy

    Raises:
        NoConvergence: If the start and every restart point fail
        DegenerateJacobian, StepCollapse: Propagated from the first start
    """
    side = Side(side)
    if f.complete:
        return SolveResult(
            param=COMPLETE_POINT,
            log_hol=LogHolonomy(u=0j, v=0j),
            residual=0.0,
            iterations=0,
            path_taken=PathSpec(),
            side=side,
            filling=f,
        )

    solver = FillingSolver(f, side, settings)
    first = complex(start) if start is not None else newton_start(f, side)
    try:
        result = solver.run(first, path_hint)
        logger.info("Solved %s on the %s side: %s in %d iterations", f, side.value, result.param, result.iterations)
        return result
    except NoConvergence as e:
        error = e
        logger.debug("Newton from %s failed (%s); restarting", first, e)

    for k, point in enumerate(restart_points(settings), start=1):
        try:
            result = solver.run(point)
        except (NoConvergence, DegenerateJacobian, StepCollapse) as e:
            error = e
            continue
        logger.info("Solved %s on the %s side after %d restarts: %s", f, side.value, k, result.param)
        return replace(result, restarts=k)
    raise NoConvergence(f"{f} on the {side.value} side: all starts failed ({error})")


def filling_from_log(log_hol: LogHolonomy, settings: SolverSettings = DEFAULT_SETTINGS) -> FillingCoeffs:
    """
    Real (p, q) with p u + q v = 2 pi i.

    Raises:
        SingularSystem: If u and v are real-collinear
    """
    u, v = log_hol.u, log_hol.v
    det = (u.conjugate() * v).imag
    if abs(det) < settings.singular_floor:
        raise SingularSystem(f"u = {u} and v = {v} are real-collinear (det {det:.3e})")
    matrix = np.array([[u.real, v.real], [u.imag, v.imag]])
    p, q = np.linalg.solve(matrix, np.array([0.0, 2 * math.pi]))
    return FillingCoeffs(p=float(p), q=float(q))


def filling_from_param(
    x: complex,
    side: Side,
    path: Optional[PathSpec] = None,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> FillingCoeffs:
    """Surgery coefficients realized at parameter x, continued along path (default path if omitted)."""
    log_hol = continue_log(path or default_path(x, settings), side, settings)
    return filling_from_log(log_hol, settings)


class CoupledSolver:
    """
    Newton iteration on both filling equations as one system in (alpha, beta).

    Holonomies come from the word products of the full shape vector, so the
    decoupling is not assumed. (u, v) for both pairs are continued along the
    straight segment from the complete structure in C^2; the Jacobian is
    taken by finite differences of branch-free logarithm ratios.
    """

    CUSPS = (CuspId.Y, CuspId.W)

    def __init__(self, f_alpha: FillingCoeffs, f_beta: FillingCoeffs, settings: SolverSettings = DEFAULT_SETTINGS):
        self.fillings = (f_alpha, f_beta)
        self.settings = settings

    def _holonomies(self, point: np.ndarray) -> np.ndarray:
        s = shapes_from_params(ParamPoint(alpha=point[0], beta=point[1]), self.settings.degeneracy_eps)
        words = holonomy_words(s, self.settings.degeneracy_eps)
        return np.array([h for cusp in self.CUSPS for h in (words[cusp].m, words[cusp].l)])

    def _continue(self, target: np.ndarray) -> np.ndarray:
        """(u_Y, v_Y, u_W, v_W) at target, continued straight from the centre."""
        origin = np.array([COMPLETE_POINT, COMPLETE_POINT])
        values = self._holonomies(origin)
        logs = np.log(values.astype(complex))
        span = float(np.abs(target - origin).max())
        if span == 0.0:
            return logs
        t = 0.0
        while t < 1.0:
            here = origin + t * (target - origin)
            clearance = min(nearest_puncture(z)[1] for z in here)
            step = min(self.settings.step_fraction * clearance / span, 1.0 - t)
            if self.settings.max_step is not None:
                step = min(step, self.settings.max_step / span)
            while True:
                if step * span < self.settings.min_step:
                    raise StepCollapse(f"coupled continuation collapsed near {here}")
                nxt = self._holonomies(origin + (t + step) * (target - origin))
                ratios = nxt / values
                if np.all(np.abs(np.angle(ratios)) < math.pi / 2):
                    break
                step /= 2
            logs = logs + np.log(ratios)
            values = nxt
            t += step
        return logs

    def _residual(self, logs: np.ndarray) -> np.ndarray:
        out = []
        for k, f in enumerate(self.fillings):
            u, v = logs[2 * k], logs[2 * k + 1]
            out.append(u if f.complete else f.p * u + f.q * v - TWO_PI_I)
        return np.array(out)

    def _jacobian(self, point: np.ndarray, values: np.ndarray) -> np.ndarray:
        jac = np.zeros((2, 2), dtype=complex)
        for j in range(2):
            shifted = point.copy()
            shifted[j] += FD_STEP
            dlogs = np.log(self._holonomies(shifted) / values) / FD_STEP
            for k, f in enumerate(self.fillings):
                du, dv = dlogs[2 * k], dlogs[2 * k + 1]
                jac[k, j] = du if f.complete else f.p * du + f.q * dv
        return jac

    def run(self, start: Tuple[complex, complex]) -> Tuple[complex, complex]:
        settings = self.settings
        point = np.array(start, dtype=complex)
        residual = self._residual(self._continue(point))
        for iteration in range(settings.max_iterations):
            norm = float(np.abs(residual).max())
            if norm < settings.newton_tol:
                logger.debug("Coupled Newton converged in %d iterations at %s", iteration, point)
                return complex(point[0]), complex(point[1])
            jac = self._jacobian(point, self._holonomies(point))
            if abs(np.linalg.det(jac)) < settings.jacobian_floor:
                raise DegenerateJacobian(f"coupled Jacobian is singular at {point}")
            delta = np.linalg.solve(jac, -residual)
            t = 1.0
            for _ in range(LINE_SEARCH_HALVINGS):
                trial = point + t * delta
                try:
                    trial_residual = self._residual(self._continue(trial))
                except (DegenerateShape, StepCollapse):
                    trial_residual = None
                if trial_residual is not None and np.abs(trial_residual).max() < norm:
                    break
                t /= 2
            else:
                raise NoConvergence(f"coupled line search failed at {point}")
            point, residual = trial, trial_residual
        raise NoConvergence(f"coupled Newton did not converge from {start}")


def joint_solve(
    f_alpha: FillingCoeffs,
    f_beta: FillingCoeffs,
    settings: SolverSettings = DEFAULT_SETTINGS,
    cross_check: bool = True,
) -> Tuple[SolveResult, SolveResult]:
    """
    Solve both cusp pairs and confirm the coupled system agrees.

    Returns:
        (alpha result, beta result) from the independent solves

    Raises:
        CouplingMismatch: If the coupled solve lands elsewhere
        NoConvergence, DegenerateJacobian, StepCollapse: As solve_filling
    """
    alpha = solve_filling(f_alpha, Side.ALPHA, settings=settings)
    beta = solve_filling(f_beta, Side.BETA, settings=settings)
    if not cross_check:
        return alpha, beta

    coupled = CoupledSolver(f_alpha, f_beta, settings).run((alpha.start, beta.start))
    gap = max(abs(coupled[0] - alpha.param), abs(coupled[1] - beta.param))
    if gap > settings.coupling_tol:
        raise CouplingMismatch(
            f"coupled solve {coupled} differs from decoupled ({alpha.param}, {beta.param}) by {gap:.3e}"
        )
    logger.info("Joint solve %s x %s agrees with the coupled system (gap %.2e)", f_alpha, f_beta, gap)
    return alpha, beta


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def dual_curve(p: int, q: int) -> Tuple[int, int]:
    """
    Integers (r, s) with p s - q r = 1 and |r| minimal.

    Ties are broken towards non-negative r.
    """
    if p == 0:
        return -q, 0
    _, x, y = _extended_gcd(p, q)
    r, s = -y, x
    k = round(-r / p)
    best = None
    for shift in (k - 1, k, k + 1):
        cand = (r + shift * p, s + shift * q)
        key = (abs(cand[0]), cand[0] < 0)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def core_geodesic(
    f: FillingCoeffs, log_hol: LogHolonomy, reduce_common_factor: bool = False
) -> CoreGeodesic:
    """
    Complex length r u + s v of the core of the filling, with Re >= 0.

    Args:
        f: Integral filling coefficients
        log_hol: (u, v) at the solved parameter
        reduce_common_factor: Divide out gcd(p, q) and report it as the cone order

    Raises:
        NotPrimitive: If (p, q) is not integral, or has a common factor and
            reduce_common_factor is off
    """
    if not f.is_integral:
        raise NotPrimitive(f"core geodesics need integral coefficients, got {f}")
    p, q = int(f.p), int(f.q)
    g = math.gcd(p, q)
    if g != 1:
        if not reduce_common_factor:
            raise NotPrimitive(f"{f} has common factor {g}")
        p, q = p // g, q // g

    r, s = dual_curve(p, q)
    length = r * log_hol.u + s * log_hol.v
    if length.real < 0:
        length = -length
    return CoreGeodesic(complex_length=complex(length), r=r, s=s, cone_order=g)


def filled_geodesic_length(f: FillingCoeffs, log_hol: LogHolonomy) -> float:
    """
    Translation length of the filled geodesic for real (p, q).

    Equals Re of core_geodesic for primitive integers and stays defined
    for every real pair.
    """
    if f.complete:
        return math.inf
    return abs(((f.p * log_hol.v - f.q * log_hol.u) / (f.p ** 2 + f.q ** 2)).real)
