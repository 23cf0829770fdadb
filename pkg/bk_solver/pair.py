"""
Solution pairs (u_rho, lambda_rho) and their diagnostics.
"""
from dataclasses import dataclass
from typing import Any, Dict

from geometry import ExtendedField


@dataclass(frozen=True, eq=False)
class SolutionPair:
    """
    u = phi + lam * T(u) with sup |u - phi| = rho.

    Attributes:
        u: The solution on the closed disk; equals psi on the hole.
        lam: The parameter lambda_rho > 0.
        rho: Radius of the sphere in the affine cone.
        iterations: Applications of T performed.
        fp_residual: sup |u - phi - lam * T(u)|.
        cone_violation: max(0, -min(u - phi)).
        norm_deviation: |sup |u - phi| - rho|.
    """

    u: ExtendedField
    lam: float
    rho: float
    iterations: int
    fp_residual: float
    cone_violation: float
    norm_deviation: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rho": self.rho,
            "lambda": self.lam,
            "iterations": self.iterations,
            "fp_residual": self.fp_residual,
            "cone_violation": self.cone_violation,
            "norm_deviation": self.norm_deviation,
        }


@dataclass(frozen=True)
class ResidualReport:
    """Defects of a pair recomputed from scratch."""

    fp_residual: float
    cone_violation: float
    norm_deviation: float
    pde_defect: float
    boundary_defect: float
    hole_defect: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "fp_residual": self.fp_residual,
            "cone_violation": self.cone_violation,
            "norm_deviation": self.norm_deviation,
            "pde_defect": self.pde_defect,
            "boundary_defect": self.boundary_defect,
            "hole_defect": self.hole_defect,
        }
