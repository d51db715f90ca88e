"""Sparse implicitization through interpolation matrices.

Typical use::

    from spimplicit import parse_map, convex_hull, implicitize
    m = parse_map("x = 3*t/(1+t^3); y = 3*t^2/(1+t^3)")
    Q = convex_hull([(3, 0), (0, 3), (1, 1)])
    poly, info = implicitize(m, Q)
"""
from .config import RunConfig
from .errors import ImplicitError
from .implicit import ImplicitPolynomial, implicitize, sylvester_oracle
from .interp import build_matrix, corank, freeze_Mx, kernel_basis
from .kernels import BACKEND
from .param import ParametricMap, RationalFunction, half_angle, load_map, parse_map
from .poly import MultiPoly
from .predicates import (Membership, Ray, RayHit, SurfaceHandle, freeze_surface, membership,
                         ray_shoot, side_sign, sidedness)
from .support import (LatticePolytope, SupportSet, convex_hull, degree_bound_polytope,
                      lattice_points, load_polytope, minkowski_sum, translate_count)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ImplicitError", "ImplicitPolynomial", "LatticePolytope", "Membership",
    "MultiPoly", "ParametricMap", "RationalFunction", "Ray", "RayHit", "RunConfig",
    "SupportSet", "SurfaceHandle", "build_matrix", "convex_hull", "corank",
    "degree_bound_polytope", "freeze_Mx", "freeze_surface", "half_angle", "implicitize",
    "kernel_basis", "lattice_points", "load_map", "load_polytope", "membership",
    "minkowski_sum", "parse_map", "ray_shoot", "side_sign", "sidedness",
    "sylvester_oracle", "translate_count",
]
