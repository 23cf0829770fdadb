"""
Discrete Dirichlet problems for the elliptic operator on the annulus.
"""
from .operator import EllipticOperator, sample_coefficient
from .system import DiscreteSystem, apply_operator, assemble, green_apply, solve_dirichlet
from .auxiliary import AuxSolutions, build_aux

__all__ = [
    "EllipticOperator",
    "sample_coefficient",
    "DiscreteSystem",
    "apply_operator",
    "assemble",
    "green_apply",
    "solve_dirichlet",
    "AuxSolutions",
    "build_aux",
]
