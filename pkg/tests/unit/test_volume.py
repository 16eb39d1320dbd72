import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.shapes import shape_triple, shapes_from_params
from src.core.volume import clausen, lobachevsky, simplex_volume, volume
from src.models.shapes import ParamPoint
from tests.strategies import interior_points

LAMBDA_PI_4 = 0.4579827970886095
COMPLETE_VOLUME = 7.327724753417752


def lobachevsky_oracle(theta: float) -> float:
    return float(-mpmath.quad(lambda t: mpmath.log(abs(2 * mpmath.sin(t))), [0, theta]))


@pytest.mark.unit
def test_lobachevsky_at_quarter_pi():
    assert lobachevsky(math.pi / 4) == pytest.approx(LAMBDA_PI_4, abs=1e-15)
    assert lobachevsky(math.pi / 4) == pytest.approx(float(mpmath.catalan) / 2, abs=1e-15)
    assert clausen(math.pi / 2) == pytest.approx(float(mpmath.catalan), abs=1e-15)


@pytest.mark.unit
@pytest.mark.parametrize("theta", [0.05, math.pi / 6, math.pi / 3, 1.2, math.pi / 2 - 0.01])
def test_lobachevsky_matches_the_integral(theta):
    assert lobachevsky(theta) == pytest.approx(lobachevsky_oracle(theta), abs=1e-13)


@pytest.mark.unit
@given(theta=st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_lobachevsky_is_odd_and_pi_periodic(theta):
    assert lobachevsky(-theta) == pytest.approx(-lobachevsky(theta), abs=1e-12)
    assert lobachevsky(theta + math.pi) == pytest.approx(lobachevsky(theta), abs=1e-12)


@pytest.mark.unit
def test_lobachevsky_zeros():
    for theta in (0.0, math.pi / 2, math.pi, -math.pi / 2):
        assert lobachevsky(theta) == pytest.approx(0, abs=1e-14)


@pytest.mark.unit
def test_lobachevsky_accepts_arrays():
    thetas = np.array([math.pi / 4, math.pi / 6, -math.pi / 4])
    values = lobachevsky(thetas)

    assert values.shape == (3,)
    assert values[0] == pytest.approx(LAMBDA_PI_4)
    assert values[2] == pytest.approx(-LAMBDA_PI_4)


@pytest.mark.unit
def test_complete_volume(centre):
    s = shapes_from_params(ParamPoint(centre, centre))

    assert volume(s) == pytest.approx(COMPLETE_VOLUME, abs=1e-12)
    assert volume(s) == pytest.approx(16 * LAMBDA_PI_4, abs=1e-12)


@pytest.mark.unit
def test_regular_ideal_tetrahedron():
    z = complex(0.5, math.sqrt(3) / 2)
    assert simplex_volume(shape_triple(z)) == pytest.approx(1.0149416064096536, abs=1e-13)


@pytest.mark.unit
def test_signed_simplex_volume():
    assert simplex_volume(shape_triple(2.0)) == pytest.approx(0, abs=1e-15)
    assert simplex_volume(shape_triple(-1j)) == pytest.approx(-2 * LAMBDA_PI_4, abs=1e-14)


@pytest.mark.unit
def test_half_volume_on_the_circle(centre, top_arc_midpoint):
    s = shapes_from_params(ParamPoint(centre, top_arc_midpoint))

    assert volume(s) == pytest.approx(COMPLETE_VOLUME / 2, abs=1e-10)


def _beta_volume(beta: complex) -> float:
    return volume(shapes_from_params(ParamPoint(0.5 + 0.5j, beta)))


@pytest.mark.unit
def test_volume_is_lipschitz_in_beta():
    step = 0.05
    coords = np.arange(0.2, 0.8 + step / 2, step)
    grid = np.array([[_beta_volume(complex(x, y)) for y in coords] for x in coords])

    assert np.all(np.isfinite(grid))
    assert grid.max() == pytest.approx(COMPLETE_VOLUME, abs=1e-12)
    slopes = np.concatenate([np.abs(np.diff(grid, axis=0)).ravel(), np.abs(np.diff(grid, axis=1)).ravel()]) / step
    bound = 2 * slopes.max() + 1e-9

    rng = np.random.default_rng(3)
    for _ in range(200):
        a = complex(*rng.uniform(0.2, 0.8, size=2))
        b = a + complex(*rng.uniform(-0.02, 0.02, size=2))
        assert abs(_beta_volume(a) - _beta_volume(b)) <= bound * abs(a - b)


@pytest.mark.unit
@given(beta=interior_points(margin=0.05))
def test_volume_finite_inside_the_square(beta):
    assert math.isfinite(_beta_volume(beta))
