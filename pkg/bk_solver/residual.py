"""
Independent recomputation of the defects of a solution pair.
"""
import numpy as np

from elliptic import AuxSolutions, apply_operator, sample_coefficient
from functional import ProblemSpec, apply_T, eval_B, nemytskii
from geometry import sup_diff, sup_norm
from utils.errors import ConfigurationError

from .pair import ResidualReport, SolutionPair


def residual_report(spec: ProblemSpec, aux: AuxSolutions, pair: SolutionPair) -> ResidualReport:
    """
    Recompute every defect of pair from scratch.

    pde_defect is sup |L_h u - lambda F(u)| over interior nodes. It scales with
    the matrix norm, so it is of order |A| * fp_residual rather than fp_residual.
    boundary_defect is sup |u - lambda zeta B[u]| on the outer ring and
    hole_defect is sup |u - psi| over hole quadrature points.
    """
    u = pair.u
    if u.grid != spec.grid:
        raise ConfigurationError("pair and problem live on different grids")
    lam = pair.lam
    v = u - aux.phi
    q = spec.quadrature

    fp_residual = sup_diff(v, apply_T(spec, aux, u).scale(lam), q)
    hole_v = np.asarray(v.hole_fn(q.hole_x1, q.hole_x2), dtype=np.float64)
    lowest = min(v.annulus.min(), float(np.min(hole_v)) if hole_v.size else 0.0)

    pde = apply_operator(aux.system, u) - lam * nemytskii(spec, u).values[1:-1]

    x1, x2 = spec.grid.coordinates
    zeta = sample_coefficient(spec.zeta, x1[-1], x2[-1])
    boundary = u.annulus.values[-1] - lam * zeta * eval_B(spec.B, u, q)

    return ResidualReport(
        fp_residual=fp_residual,
        cone_violation=max(0.0, -lowest),
        norm_deviation=abs(sup_norm(v, q) - pair.rho),
        pde_defect=float(np.max(np.abs(pde))),
        boundary_defect=float(np.max(np.abs(boundary))),
        hole_defect=float(np.max(np.abs(hole_v))) if hole_v.size else 0.0,
    )
