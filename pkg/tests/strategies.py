"""Hypothesis strategies for parameter-plane points."""

from hypothesis import strategies as st

PUNCTURES = (0j, 1 + 0j, 1j, 1 + 1j)


def _cut_distance(z: complex) -> float:
    """Distance-like gap to the outward diagonal rays through the corners."""
    dx, dy = abs(z.real - 0.5), abs(z.imag - 0.5)
    if max(dx, dy) < 0.5:
        return float("inf")
    return abs(dx - dy)


def plane_points(low: float = -1.5, high: float = 2.5, clearance: float = 0.1, cut_clearance: float = 0.01):
    """Points of [low, high]^2 away from every corner of the unit square and its cut rays."""
    coord = st.floats(min_value=low, max_value=high, allow_nan=False, allow_infinity=False)
    return st.builds(complex, coord, coord).filter(
        lambda z: min(abs(z - c) for c in PUNCTURES) >= clearance and _cut_distance(z) >= cut_clearance
    )


def interior_points(margin: float = 0.01):
    """Points strictly inside the unit square, at least margin from its edges."""
    coord = st.floats(min_value=margin, max_value=1 - margin, allow_nan=False)
    return st.builds(complex, coord, coord)
