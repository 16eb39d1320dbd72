"""
Data models for the surgery-space solver.

This module contains:
- Frozen value types used in computation (shapes, holonomies, fillings)
- Pydantic models for settings and serialized output records
"""

from .shapes import (
    ALPHA_SHAPES,
    BETA_SHAPES,
    SHAPE_NAMES,
    Orientation,
    OrientationReport,
    ParamPoint,
    ShapeVector,
    SimplexShape,
)
from .holonomy import CuspHolonomy, CuspId, CuspModulus, HolonomyValues, LogHolonomy, Side
from .surgery import CoreGeodesic, FillingCoeffs, PathSpec, SolveResult
from .octagon import OctagonConfig
from .reports import ComplexValue, ScanRecord, SolveRecord, VerificationReport
from .settings import DEFAULT_SETTINGS, SolverSettings, load_settings

__all__ = [
    # Shapes
    "SHAPE_NAMES",
    "ALPHA_SHAPES",
    "BETA_SHAPES",
    "SimplexShape",
    "ParamPoint",
    "ShapeVector",
    "Orientation",
    "OrientationReport",
    # Holonomy
    "Side",
    "CuspId",
    "CuspHolonomy",
    "HolonomyValues",
    "LogHolonomy",
    "CuspModulus",
    # Surgery
    "FillingCoeffs",
    "PathSpec",
    "SolveResult",
    "CoreGeodesic",
    "OctagonConfig",
    # Records
    "ComplexValue",
    "SolveRecord",
    "ScanRecord",
    "VerificationReport",
    # Settings
    "SolverSettings",
    "DEFAULT_SETTINGS",
    "load_settings",
]
