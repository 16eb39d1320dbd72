"""
Numerical settings for the surgery-space solver.

The defaults are the tolerances the solver is calibrated against; a YAML file
can override any subset of them.
"""

from pathlib import Path
from typing import Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError

from ..errors import SettingsLoadError


class SolverSettings(BaseModel):
    """Tolerances and limits shared by every solver component."""

    degeneracy_eps: float = Field(
        default=1e-13, gt=0, description="Radius of the rejected disks around 0, 1 and vanishing denominators"
    )
    flat_eps: float = Field(default=1e-9, gt=0, description="Half-width of the flat orientation band")
    newton_tol: float = Field(default=1e-12, gt=0, description="Residual |p u + q v - 2 pi i| accepted by Newton")
    max_iterations: int = Field(default=200, ge=1, description="Newton iteration limit")
    jacobian_floor: float = Field(default=1e-14, gt=0, description="Smallest |g'| accepted by Newton")
    min_step: float = Field(default=1e-12, gt=0, description="Shortest continuation step before StepCollapse")
    step_fraction: float = Field(
        default=0.25, gt=0, lt=1, description="Continuation step as a fraction of the distance to the nearest puncture"
    )
    max_step: Optional[float] = Field(default=None, gt=0, description="Absolute cap on a continuation step")
    detour_trigger: float = Field(default=0.05, gt=0, description="Straight paths passing closer than this detour")
    detour_clearance: float = Field(default=0.1, gt=0, description="Radius of the circular detour around a puncture")
    restart_radius: float = Field(default=0.2, gt=0, description="Radius of the Newton restart circle")
    restart_count: int = Field(default=8, ge=0, description="Number of Newton restart points")
    singular_floor: float = Field(default=1e-13, gt=0, description="Smallest Im(conj(u) v) for recovering (p, q)")
    coupling_tol: float = Field(default=1e-10, gt=0, description="Coupled versus decoupled solve agreement")

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "SolverSettings":
        """
        Load settings from a YAML file.

        Args:
            path: YAML file with a top-level mapping (optionally under a
                ``solver`` key)

        Returns:
            Validated SolverSettings

        Raises:
            SettingsLoadError: If the file is missing, unparsable or invalid
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise SettingsLoadError(f"YAML parsing error in {path}: {e}")
        except IOError as e:
            raise SettingsLoadError(f"Error reading {path}: {e}")

        if not isinstance(data, dict):
            raise SettingsLoadError(f"Settings file {path} must contain a mapping")
        data = data.get("solver", data)

        try:
            return cls(**data)
        except ValidationError as e:
            raise SettingsLoadError(f"Invalid settings in {path}: {e}")


DEFAULT_SETTINGS = SolverSettings()


def load_settings(path: Union[str, Path, None] = None) -> SolverSettings:
    """Load settings from ``path``, or return the built-in defaults."""
    if path is None:
        return DEFAULT_SETTINGS
    return SolverSettings.from_yaml(path)
