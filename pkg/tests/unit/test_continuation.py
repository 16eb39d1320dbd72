import cmath
import math

import pytest
from hypothesis import given, settings

from src.core.continuation import (
    continue_log,
    cut_plane_logs,
    default_path,
    extend_log,
    rotate_log_holonomy,
    rotate_quarter,
    segment_crosses_cut,
    validate_path,
)
from src.core.holonomy import side_holonomy
from src.errors import InvalidPath
from src.models.holonomy import LogHolonomy, Side
from src.models.settings import SolverSettings
from src.models.surgery import PathSpec
from tests.strategies import plane_points


@pytest.mark.unit
def test_logs_vanish_at_the_complete_structure():
    for side in Side:
        log_hol = continue_log(PathSpec(), side)
        assert log_hol.u == 0
        assert log_hol.v == 0
        assert (log_hol.branch_u, log_hol.branch_v) == (0, 0)


@pytest.mark.unit
def test_top_arc_midpoint_logs(top_arc_midpoint):
    log_hol = continue_log(PathSpec.straight(top_arc_midpoint), Side.BETA)

    assert log_hol.u == pytest.approx(math.log(3 + 2 * math.sqrt(2)), abs=1e-11)
    assert log_hol.v == pytest.approx(math.pi * 1j, abs=1e-11)


@pytest.mark.unit
@settings(max_examples=100, deadline=None)
@given(x=plane_points())
def test_continuation_matches_exact_cut_plane_logs(x):
    for side in Side:
        walked = continue_log(PathSpec.straight(x), side)
        exact = cut_plane_logs(x, side)
        assert abs(walked.u - exact.u) < 1e-10
        assert abs(walked.v - exact.v) < 1e-10
        assert (walked.branch_u, walked.branch_v) == (exact.branch_u, exact.branch_v)


@pytest.mark.unit
@settings(max_examples=100, deadline=None)
@given(x=plane_points())
def test_exponentials_recover_the_holonomy(x):
    for side in Side:
        log_hol = cut_plane_logs(x, side)
        m, l = side_holonomy(x, side)
        assert cmath.exp(log_hol.u) == pytest.approx(m, rel=1e-12)
        assert cmath.exp(log_hol.v) == pytest.approx(l, rel=1e-12)


@pytest.mark.unit
@settings(max_examples=100, deadline=None)
@given(x=plane_points())
def test_quarter_turn_symmetry(x):
    for side in Side:
        rotated = cut_plane_logs(rotate_quarter(x), side)
        expected = rotate_log_holonomy(cut_plane_logs(x, side))
        assert abs(rotated.u - expected.u) < 1e-10
        assert abs(rotated.v - expected.v) < 1e-10


@pytest.mark.unit
def test_quarter_turn_permutes_the_corners():
    assert rotate_quarter(0j) == 1
    assert rotate_quarter(1) == 1 + 1j
    assert rotate_quarter(1 + 1j) == 1j
    assert rotate_quarter(1j) == 0
    assert rotate_quarter(0.5 + 0.5j) == 0.5 + 0.5j


@pytest.mark.unit
def test_loop_around_a_corner_shifts_the_branch():
    corner = 1 + 1j
    radius = 0.3
    base = corner + radius * cmath.exp(1j * 5 * math.pi / 4)
    start = continue_log(PathSpec.straight(base), Side.BETA)

    log_hol, x = start, base
    for k in range(1, 9):
        y = corner + radius * cmath.exp(1j * (5 * math.pi / 4 + k * math.pi / 4))
        log_hol = extend_log(log_hol, x, y, Side.BETA)
        x = y

    # m and l both carry (beta - (1+i))^-1, so a positive loop lowers u and v by 2 pi i.
    assert log_hol.u - start.u == pytest.approx(-2j * math.pi, abs=1e-10)
    assert log_hol.v - start.v == pytest.approx(-2j * math.pi, abs=1e-10)
    assert log_hol.branch_u == start.branch_u - 1


@pytest.mark.unit
def test_path_must_start_at_centre():
    with pytest.raises(InvalidPath):
        continue_log(PathSpec(waypoints=(0.2 + 0.2j, 0.4 + 0.4j)), Side.BETA)


@pytest.mark.unit
def test_path_through_a_puncture_rejected():
    with pytest.raises(InvalidPath):
        validate_path(PathSpec(waypoints=(0.5 + 0.5j, 1j)))


@pytest.mark.unit
def test_path_crossing_a_cut_rejected():
    path = PathSpec(waypoints=(0.5 + 0.5j, 2 + 1.5j, 1.5 + 2j))

    with pytest.raises(InvalidPath):
        validate_path(path)
    with pytest.raises(InvalidPath):
        continue_log(path, Side.ALPHA)


@pytest.mark.unit
def test_unrestricted_path_may_cross_a_cut():
    path = PathSpec(waypoints=(0.5 + 0.5j, 2 + 1.5j, 1.5 + 2j), restrict_to_cut_plane=False)

    log_hol = continue_log(path, Side.BETA)
    exact = cut_plane_logs(1.5 + 2j, Side.BETA)
    assert log_hol.u - exact.u == pytest.approx(-2j * math.pi, abs=1e-10)


@pytest.mark.unit
def test_segment_crosses_cut():
    assert segment_crosses_cut(2 + 1.5j, 1.5 + 2j, 1 + 1j)
    assert not segment_crosses_cut(0.5 + 0.5j, 2 + 1.5j, 1 + 1j)
    assert not segment_crosses_cut(0.5 + 0.5j, 0.5 + 3j, 1j)


@pytest.mark.unit
def test_default_path_detours_near_a_corner():
    solver_settings = SolverSettings()
    straight = default_path(2 + 1j, solver_settings)
    assert straight.waypoints == (0.5 + 0.5j, 2 + 1j)

    # The segment towards 1.2 + 1.19i grazes the corner 1 + i.
    target = 1.2 + 1.19j
    detour = default_path(target, solver_settings)
    assert not detour.restrict_to_cut_plane
    assert detour.endpoint == target
    assert min(abs(w - (1 + 1j)) for w in detour.waypoints) >= solver_settings.detour_clearance - 1e-12


@pytest.mark.unit
def test_log_holonomy_from_branches():
    log_hol = LogHolonomy.from_branches(-1 + 0j, 2 + 0j, 1, -2)

    assert log_hol.u == pytest.approx(3j * math.pi)
    assert log_hol.v == pytest.approx(math.log(2) - 4j * math.pi)
    assert log_hol.m == pytest.approx(-1)
