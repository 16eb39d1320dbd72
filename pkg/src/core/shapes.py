"""
Shape algebra for the ideal triangulation of A*.

The eight simplex parameters are rational functions of two complex variables:
z1, z3, w2, w4 depend on alpha only and z2, z4, w1, w3 on beta only. At
alpha = beta = (1+i)/2 every shape equals i, the two regular ideal octahedra.
"""

from typing import Callable, Dict, Tuple

from ..errors import DegenerateShape
from ..models.shapes import (
    ALPHA_SHAPES,
    BETA_SHAPES,
    SHAPE_NAMES,
    Orientation,
    OrientationReport,
    ParamPoint,
    ShapeVector,
    SimplexShape,
)
from .config import DEGENERACY_EPS, FLAT_EPS

I = 1j

# (numerator, denominator) of each shape as a function of its own parameter.
Formula = Tuple[Callable[[complex], complex], Callable[[complex], complex]]

ALPHA_FORMULAS: Dict[str, Formula] = {
    "z1": (lambda a: a + a * I, lambda a: 2 - a + a * I),
    "z3": (lambda a: a * I + a - 2 * I, lambda a: a * I - a),
    "w2": (lambda a: a * I + a - 1 - I, lambda a: a * I - a + 1 + I),
    "w4": (lambda a: a * I + a + 1 - I, lambda a: a * I - a + 1 - I),
}

BETA_FORMULAS: Dict[str, Formula] = {
    "z2": (lambda b: I - 1 - b - b * I, lambda b: b - b * I + I - 1),
    "z4": (lambda b: 1 + I - b - b * I, lambda b: b - b * I - I - 1),
    "w1": (lambda b: 2 * I - b - b * I, lambda b: b - b * I),
    "w3": (lambda b: -b - b * I, lambda b: b - b * I - 2),
}

CONSISTENCY_RELATIONS: Tuple[str, ...] = (
    "w1 w2 w3 w4 = 1",
    "z1 z2 z3 z4 = 1",
    "w1'' w2' w3'' w4' z1' z2'' z3' z4'' = 1",
    "w1 w3 z1 z3 = 1",
    "w1 w3 = -1",
    "z2 z4 = -1",
    "w1'' w3'' z2'' z4'' = -1/4",
    "w2 w4 = -1",
    "z1 z3 = -1",
    "w2' w4' z1' z3' = -4",
)


def shape_triple(z: complex, eps: float = DEGENERACY_EPS, name: str = None) -> SimplexShape:
    """
    Build a SimplexShape with its companions z' = (z-1)/z and z'' = 1/(1-z).

    Args:
        z: Shape parameter
        eps: Radius of the rejected disks around 0 and 1
        name: Simplex name reported on failure

    Raises:
        DegenerateShape: If z is within eps of 0 or 1
    """
    z = complex(z)
    if abs(z) < eps or abs(z - 1) < eps:
        label = name or "simplex"
        raise DegenerateShape(f"{label} shape {z} is degenerate (within {eps:g} of 0 or 1)", simplex=name)
    return SimplexShape(z=z, z_prime=(z - 1) / z, z_doubleprime=1 / (1 - z))


def _evaluate(formulas: Dict[str, Formula], x: complex, eps: float) -> Dict[str, SimplexShape]:
    shapes = {}
    for name, (numerator, denominator) in formulas.items():
        den = denominator(x)
        if abs(den) < eps:
            raise DegenerateShape(f"denominator of {name} vanishes at {x}", simplex=name)
        shapes[name] = shape_triple(numerator(x) / den, eps=eps, name=name)
    return shapes


def alpha_shapes(alpha: complex, eps: float = DEGENERACY_EPS) -> Dict[str, SimplexShape]:
    """The four alpha-side shapes z1, z3, w2, w4."""
    return _evaluate(ALPHA_FORMULAS, complex(alpha), eps)


def beta_shapes(beta: complex, eps: float = DEGENERACY_EPS) -> Dict[str, SimplexShape]:
    """The four beta-side shapes z2, z4, w1, w3."""
    return _evaluate(BETA_FORMULAS, complex(beta), eps)


def shapes_from_params(p: ParamPoint, eps: float = DEGENERACY_EPS) -> ShapeVector:
    """
    Evaluate the eight simplex shapes at (alpha, beta).

    Args:
        p: Parameter point
        eps: Degeneracy tolerance for denominators and shapes near 0 or 1

    Returns:
        ShapeVector with companions precomputed

    Raises:
        DegenerateShape: Naming the first simplex (in storage order) whose
            denominator vanishes or whose shape is degenerate
    """
    formulas = {**ALPHA_FORMULAS, **BETA_FORMULAS}
    shapes = {}
    for name in SHAPE_NAMES:
        x = p.alpha if name in ALPHA_SHAPES else p.beta
        shapes.update(_evaluate({name: formulas[name]}, x, eps))
    return ShapeVector(source=p, **shapes)


def consistency_residuals(s: ShapeVector) -> Dict[str, complex]:
    """
    Residuals (lhs - rhs) of the gluing and octagon relations.

    The two chained relations w1w3 = z2z4 = -1 and w2w4 = z1z3 = -1 are split
    into their elementary equalities, giving ten residuals in the order of
    CONSISTENCY_RELATIONS.
    """
    z1, z2, z3, z4 = s.z1, s.z2, s.z3, s.z4
    w1, w2, w3, w4 = s.w1, s.w2, s.w3, s.w4

    values = (
        w1.z * w2.z * w3.z * w4.z - 1,
        z1.z * z2.z * z3.z * z4.z - 1,
        (
            w1.z_doubleprime * w2.z_prime * w3.z_doubleprime * w4.z_prime
            * z1.z_prime * z2.z_doubleprime * z3.z_prime * z4.z_doubleprime
        ) - 1,
        w1.z * w3.z * z1.z * z3.z - 1,
        w1.z * w3.z + 1,
        z2.z * z4.z + 1,
        w1.z_doubleprime * w3.z_doubleprime * z2.z_doubleprime * z4.z_doubleprime + 0.25,
        w2.z * w4.z + 1,
        z1.z * z3.z + 1,
        w2.z_prime * w4.z_prime * z1.z_prime * z3.z_prime + 4,
    )
    return dict(zip(CONSISTENCY_RELATIONS, values))


def classify(z: complex, eps: float = FLAT_EPS) -> Orientation:
    """Orientation class of a single shape parameter."""
    if z.imag > eps:
        return Orientation.POSITIVE
    if z.imag < -eps:
        return Orientation.NEGATIVE
    return Orientation.FLAT


def classify_orientation(s: ShapeVector, eps: float = FLAT_EPS) -> OrientationReport:
    """Classify every simplex as positive, flat or negative with band eps."""
    return OrientationReport(
        classes={name: classify(shape.z, eps) for name, shape in s.items()},
        epsilon=eps,
    )
