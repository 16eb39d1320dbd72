"""
Core engine modules for the surgery-space solver.

This module contains the numerical engine for:
- Simplex shapes and their consistency relations
- Cusp holonomies and cusp moduli
- Branch-tracked continuation and Dehn filling equations
- Volume and core geodesics
- Theorem verifiers and grid scans
"""

from .shapes import classify_orientation, consistency_residuals, shape_triple, shapes_from_params
from .holonomy import (
    cancellation_identities,
    cusp_modulus,
    cusp_modulus_complete,
    holonomy_closed_form,
    holonomy_words,
)
from .continuation import continue_log, cut_plane_logs, default_path, rotate_quarter
from .surgery import (
    core_geodesic,
    filled_geodesic_length,
    filling_from_param,
    joint_solve,
    solve_filling,
)
from .volume import lobachevsky, volume
from .octagon import horoball_correspondence, octagon_construct, octagon_tiling_check
from .verifiers import (
    verify_consistency,
    verify_corollary,
    verify_cut_plane_logs,
    verify_isolation,
    verify_octagon,
    verify_theorem2,
    verify_theorem3,
)
from .scan import ScanConfig, ScanRunner, run_scan

__all__ = [
    # Shapes
    "shape_triple",
    "shapes_from_params",
    "consistency_residuals",
    "classify_orientation",
    # Holonomy
    "holonomy_words",
    "holonomy_closed_form",
    "cancellation_identities",
    "cusp_modulus",
    "cusp_modulus_complete",
    # Continuation and surgery
    "continue_log",
    "cut_plane_logs",
    "default_path",
    "rotate_quarter",
    "solve_filling",
    "filling_from_param",
    "joint_solve",
    "core_geodesic",
    "filled_geodesic_length",
    "lobachevsky",
    "volume",
    # Verifiers
    "octagon_construct",
    "octagon_tiling_check",
    "horoball_correspondence",
    "verify_consistency",
    "verify_isolation",
    "verify_theorem2",
    "verify_theorem3",
    "verify_corollary",
    "verify_octagon",
    "verify_cut_plane_logs",
    # Scans
    "ScanConfig",
    "ScanRunner",
    "run_scan",
]
