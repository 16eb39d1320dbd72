from pathlib import Path
import math
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

CENTRE = 0.5 + 0.5j
# Top-arc midpoint of the circle |beta - (1+i)/2| = 1/sqrt 2, where (p, q) = (0, 2).
TOP_ARC_MIDPOINT = CENTRE + 1j / math.sqrt(2)


@pytest.fixture
def centre() -> complex:
    return CENTRE


@pytest.fixture
def top_arc_midpoint() -> complex:
    return TOP_ARC_MIDPOINT
