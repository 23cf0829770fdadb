"""
Annular geometry: grids, fields, point evaluation and quadrature.
"""
from .domain import AnnularDomain, PolarGrid, build_grid
from .fields import (
    ExtendedField,
    Field,
    HoleFunction,
    combine_holes,
    eval_extended,
    sup_diff,
    sup_norm,
    zero_hole,
)
from .quadrature import QuadratureRule, build_quadrature, integrate_omega2

__all__ = [
    "AnnularDomain",
    "PolarGrid",
    "build_grid",
    "ExtendedField",
    "Field",
    "HoleFunction",
    "combine_holes",
    "eval_extended",
    "sup_diff",
    "sup_norm",
    "zero_hole",
    "QuadratureRule",
    "build_quadrature",
    "integrate_omega2",
]
