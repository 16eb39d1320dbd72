"""
Surgery Space

Solver and verifier for the hyperbolic Dehn surgery space of the 4-cusped
manifold A*, built on an explicit two-parameter family of shapes for its
eight-simplex ideal triangulation.
"""

__version__ = "1.0.0"
