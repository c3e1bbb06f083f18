"""
Toric K-stability

Exact certification of K-stability data for toric Sasakian cones and their
moment polygons: scalar curvature, Futaki invariants, the Zhou-Zhu test,
cone cross-sections, Minkowski deformation counts and torus polystability.
"""

__version__ = "0.3.0"
