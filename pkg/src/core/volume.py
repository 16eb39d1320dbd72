"""
Hyperbolic volume from simplex shapes via the Lobachevsky function.
"""

import math
from typing import Union

import numpy as np
from scipy.special import zeta

from ..models.shapes import ShapeVector, SimplexShape

SERIES_TERMS = 40

_K = np.arange(1, SERIES_TERMS + 1)
# Clausen series coefficients zeta(2k) / (k (2k + 1)) for Cl2(x) on |x| <= pi.
_CLAUSEN_COEFFS = zeta(2 * _K) / (_K * (2 * _K + 1))

ArrayLike = Union[float, np.ndarray]


def clausen(x: ArrayLike) -> ArrayLike:
    """
    Clausen function Cl2 for |x| <= pi.

    Cl2(x) = x - x log|x| + sum_k zeta(2k) / (k (2k + 1)) x (x / 2 pi)^(2k).
    """
    x = np.asarray(x, dtype=float)
    abs_x = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(abs_x > 0, x - x * np.log(abs_x), 0.0)
    ratio = (x / (2 * math.pi))[..., np.newaxis] ** (2 * _K)
    tail = x * np.sum(_CLAUSEN_COEFFS * ratio, axis=-1)
    result = head + tail
    return float(result) if result.ndim == 0 else result


def lobachevsky(theta: ArrayLike) -> ArrayLike:
    """
    Lobachevsky function, minus the integral of log|2 sin t| from 0 to theta.

    Reduced to (-pi/2, pi/2] by pi-periodicity; Lambda(theta) = Cl2(2 theta) / 2.
    """
    theta = np.asarray(theta, dtype=float)
    reduced = np.mod(theta, math.pi)
    reduced = np.where(reduced > math.pi / 2, reduced - math.pi, reduced)
    result = clausen(2 * reduced) / 2
    return float(result) if np.ndim(result) == 0 else result


def simplex_volume(shape: SimplexShape) -> float:
    """Signed volume of one ideal simplex; zero when flat, negative when inverted."""
    return float(np.sum(lobachevsky(np.array(shape.dihedral_args()))))


def volume(s: ShapeVector) -> float:
    """Sum of the eight simplex volumes."""
    return float(sum(simplex_volume(shape) for _, shape in s.items()))
