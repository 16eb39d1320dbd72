"""
Figure rendering for the surgery-space solver.

This module provides Jinja2-based SVG rendering of the octagon construction.
"""

from .figure_renderer import FigureRenderer, FigureRenderError

__all__ = [
    "FigureRenderer",
    "FigureRenderError",
]
