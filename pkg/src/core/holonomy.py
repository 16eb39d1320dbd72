"""
Cusp holonomies of A*.

Each holonomy is available two ways: as the product of simplex companions
read off the cusp triangulation, and as a closed rational function of one
parameter. The closed forms are products of (x - c)^s over the four corners c
of the unit square, which the continuation module reuses for its exact
cut-plane logarithms.
"""

import cmath
import logging
from typing import Dict, Tuple

from ..errors import DegenerateShape
from ..models.holonomy import CuspHolonomy, CuspId, CuspModulus, HolonomyValues, Side
from ..models.shapes import ParamPoint, ShapeVector
from .config import COMPLETE_POINT, DEGENERACY_EPS, PUNCTURES
from .shapes import shapes_from_params

logger = logging.getLogger(__name__)

CORNER_0, CORNER_1, CORNER_I, CORNER_A = PUNCTURES

# Word factors: (simplex, companion, exponent). "'" is z', "''" is z''.
Word = Tuple[Tuple[str, str, int], ...]

HOLONOMY_WORDS: Dict[CuspId, Dict[str, Word]] = {
    CuspId.W: {
        "l": (("w4", "''", 1), ("z2", "''", -1), ("z1", "'", -1), ("w1", "'", 1)),
        "m": (("z2", "'", 1), ("w4", "'", -1), ("w3", "''", -1), ("z3", "''", 1)),
    },
    CuspId.Z: {
        "l": (("w2", "''", 1), ("z2", "''", -1), ("z3", "'", -1), ("w1", "'", 1)),
        "m": (("z2", "'", 1), ("w2", "'", -1), ("w3", "''", -1), ("z1", "''", 1)),
    },
    CuspId.Y: {
        "l": (("z3", "''", 1), ("z2", "''", -1), ("w2", "'", -1), ("w3", "'", 1)),
        "m": (("z2", "'", 1), ("z3", "'", -1), ("w1", "''", -1), ("w4", "''", 1)),
    },
    CuspId.X: {
        "l": (("z3", "''", 1), ("z4", "''", -1), ("w2", "'", -1), ("w1", "'", 1)),
        "m": (("z4", "'", 1), ("z3", "'", -1), ("w3", "''", -1), ("w4", "''", 1)),
    },
}

# Closed forms as divisors on the corners of the unit square:
# holonomy(x) = prod (x - c)^s.
Divisor = Tuple[Tuple[complex, int], ...]

HOLONOMY_DIVISORS: Dict[Side, Dict[str, Divisor]] = {
    Side.BETA: {
        # l_W = b(b - i) / ((b - 1)(b - (1+i)))
        "l": ((CORNER_0, 1), (CORNER_I, 1), (CORNER_1, -1), (CORNER_A, -1)),
        # m_W = b(b - 1) / ((b - i)(b - (1+i)))
        "m": ((CORNER_0, 1), (CORNER_1, 1), (CORNER_I, -1), (CORNER_A, -1)),
    },
    Side.ALPHA: {
        # l_Y = a(a - 1) / ((a - i)(a - (1+i)))
        "l": ((CORNER_0, 1), (CORNER_1, 1), (CORNER_I, -1), (CORNER_A, -1)),
        # m_Y = (a - 1)(a - (1+i)) / (a(a - i))
        "m": ((CORNER_1, 1), (CORNER_A, 1), (CORNER_0, -1), (CORNER_I, -1)),
    },
}


def _factor(s: ShapeVector, simplex: str, companion: str, eps: float) -> complex:
    shape = s[simplex]
    value = shape.z_prime if companion == "'" else shape.z_doubleprime
    if not cmath.isfinite(value) or abs(value) < eps:
        raise DegenerateShape(f"{simplex}{companion} = {value} cannot appear in a holonomy word", simplex=simplex)
    return value


def evaluate_word(s: ShapeVector, word: Word, eps: float = DEGENERACY_EPS) -> complex:
    """Multiply out a holonomy word."""
    value = 1 + 0j
    for simplex, companion, exponent in word:
        factor = _factor(s, simplex, companion, eps)
        value = value * factor if exponent > 0 else value / factor
    return value


def holonomy_words(s: ShapeVector, eps: float = DEGENERACY_EPS) -> HolonomyValues:
    """
    Evaluate the eight longitude/meridian words on a shape vector.

    Raises:
        DegenerateShape: If a factor is zero or infinite
    """
    return HolonomyValues(
        cusps={
            cusp: CuspHolonomy(l=evaluate_word(s, words["l"], eps), m=evaluate_word(s, words["m"], eps))
            for cusp, words in HOLONOMY_WORDS.items()
        }
    )


def _check_puncture(x: complex, eps: float):
    for corner in PUNCTURES:
        if abs(x - corner) < eps:
            raise DegenerateShape(f"holonomy is singular at the puncture {corner}")


def evaluate_divisor(x: complex, divisor: Divisor) -> complex:
    value = 1 + 0j
    for corner, sign in divisor:
        value = value * (x - corner) if sign > 0 else value / (x - corner)
    return value


def side_holonomy(x: complex, side: Side, eps: float = DEGENERACY_EPS) -> Tuple[complex, complex]:
    """
    Closed-form (m, l) of the cusp pair deformed by x.

    Raises:
        DegenerateShape: At the four punctures
    """
    x = complex(x)
    _check_puncture(x, eps)
    divisors = HOLONOMY_DIVISORS[Side(side)]
    return evaluate_divisor(x, divisors["m"]), evaluate_divisor(x, divisors["l"])


def log_derivatives(x: complex, side: Side, eps: float = DEGENERACY_EPS) -> Tuple[complex, complex]:
    """Analytic (du/dx, dv/dx) as partial-fraction sums of the closed forms."""
    x = complex(x)
    _check_puncture(x, eps)
    divisors = HOLONOMY_DIVISORS[Side(side)]
    du = sum(sign / (x - corner) for corner, sign in divisors["m"])
    dv = sum(sign / (x - corner) for corner, sign in divisors["l"])
    return du, dv


def holonomy_closed_form(p: ParamPoint, eps: float = DEGENERACY_EPS) -> HolonomyValues:
    """
    Closed-form holonomies: W and Z from beta, Y and X from alpha.

    Raises:
        DegenerateShape: If either parameter is a puncture
    """
    m_w, l_w = side_holonomy(p.beta, Side.BETA, eps)
    m_y, l_y = side_holonomy(p.alpha, Side.ALPHA, eps)
    beta_pair = CuspHolonomy(l=l_w, m=m_w)
    alpha_pair = CuspHolonomy(l=l_y, m=m_y)
    return HolonomyValues(
        cusps={CuspId.W: beta_pair, CuspId.Z: beta_pair, CuspId.Y: alpha_pair, CuspId.X: alpha_pair}
    )


def cancellation_identities(p: ParamPoint, eps: float = DEGENERACY_EPS) -> Dict[str, complex]:
    """
    Residuals of the identities that make each cusp pair depend on one parameter.

    Covers w4''/z1' = 1/2, its consequence l_W = w1'/(2 z2''), the four
    cusp-pair equalities of the word products, and the mirror relations
    l_Y(x) = m_W(x), m_Y(x) = 1/l_W(x) with both parameters set to alpha.
    The mirror residuals are relative.
    """
    s = shapes_from_params(p, eps)
    words = holonomy_words(s, eps)
    mirror = holonomy_words(shapes_from_params(p.with_beta(p.alpha), eps), eps)
    return {
        "l_Y(x) = m_W(x)": mirror[CuspId.Y].l / mirror[CuspId.W].m - 1,
        "m_Y(x) = 1/l_W(x)": mirror[CuspId.Y].m * mirror[CuspId.W].l - 1,
        "w4''/z1' = 1/2": s.w4.z_doubleprime / s.z1.z_prime - 0.5,
        "l_W = w1'/(2 z2'')": words[CuspId.W].l - s.w1.z_prime / (2 * s.z2.z_doubleprime),
        "l_W = l_Z": words[CuspId.W].l - words[CuspId.Z].l,
        "m_W = m_Z": words[CuspId.W].m - words[CuspId.Z].m,
        "l_Y = l_X": words[CuspId.Y].l - words[CuspId.X].l,
        "m_Y = m_X": words[CuspId.Y].m - words[CuspId.X].m,
    }


def cusp_modulus(cusp: CuspId, x: complex = COMPLETE_POINT) -> CuspModulus:
    """
    Modulus (dv/dx)/(du/dx) of a cusp at parameter x.

    A result in the lower half plane is replaced by its negative and the
    flip is recorded.
    """
    cusp = CuspId(cusp)
    du, dv = log_derivatives(x, cusp.side)
    tau = dv / du
    flipped = tau.imag < 0
    if flipped:
        logger.debug("Cusp %s modulus %s has negative imaginary part; flipping", cusp.value, tau)
        tau = -tau
    return CuspModulus(cusp=cusp, tau=tau, flipped=flipped)


def cusp_modulus_complete(cusp: CuspId) -> complex:
    """Modulus of the cusp in the complete structure (both parameters at the centre)."""
    return cusp_modulus(cusp, COMPLETE_POINT).tau
