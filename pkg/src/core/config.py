"""
Centralized configuration for file paths, directories and numerical constants.
"""
import math
from pathlib import Path

# Base directories
ROOT_DIR = Path(__file__).resolve().parents[2]
RESULTS_DIR = Path("results")
SCANS_DIR = RESULTS_DIR / "scans"
REPORTS_DIR = RESULTS_DIR / "reports"
FIGURES_DIR = RESULTS_DIR / "figures"

# Shipped resources
DEFAULT_SETTINGS_FILE = ROOT_DIR / "config" / "solver.yaml"
FIGURE_TEMPLATES_DIR = ROOT_DIR / "templates" / "figures"

# Default output files
DEFAULT_SCAN_CSV = SCANS_DIR / "scan.csv"
DEFAULT_OCTAGON_SVG = FIGURES_DIR / "octagon.svg"

# Geometry of the parameter plane: the unit square and its centre, which is
# the complete structure for both parameters.
PUNCTURES = (0j, 1 + 0j, 1j, 1 + 1j)
COMPLETE_POINT = 0.5 + 0.5j
CIRCLE_RADIUS = 1.0 / math.sqrt(2.0)
TWO_PI_I = 2j * math.pi

# Defaults mirrored by SolverSettings
DEGENERACY_EPS = 1e-13
FLAT_EPS = 1e-9


def ensure_directories():
    """Create all necessary output directories if they don't exist."""
    SCANS_DIR.mkdir(parents=True, exist_ok=True)
    REPORTS_DIR.mkdir(parents=True, exist_ok=True)
    FIGURES_DIR.mkdir(parents=True, exist_ok=True)
