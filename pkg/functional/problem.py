"""
Complete data of a parametric functional boundary value problem on an annulus.
"""
from dataclasses import dataclass
from typing import Callable, Optional

from elliptic import EllipticOperator
from elliptic.operator import Coefficient
from geometry import AnnularDomain, PolarGrid, QuadratureRule, build_grid, build_quadrature
from utils.errors import ConfigurationError
from utils.logger import setup_logger

from .boundary import BoundaryFunctional
from .deviation import DeviationMap

log = setup_logger("functional.problem")


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """
    L u = lambda f(x, u, u_sigma) in the annulus, u = psi on the hole,
    u = lambda zeta B[u] on the outer circle.
    """

    domain: AnnularDomain
    grid: PolarGrid
    quadrature: QuadratureRule
    operator: EllipticOperator
    f: Callable
    sigma: DeviationMap
    psi: Coefficient
    zeta: Coefficient
    B: BoundaryFunctional

    @classmethod
    def build(
        cls,
        domain: AnnularDomain,
        n_r: int,
        n_theta: int,
        operator: EllipticOperator,
        f: Callable,
        sigma: DeviationMap,
        psi: Coefficient,
        zeta: Coefficient,
        B: BoundaryFunctional,
        n_r_hole: Optional[int] = None,
    ) -> "ProblemSpec":
        """
        Validate the data and lay out grid and quadrature.

        Raises:
            ConfigurationError: Bad counts or an f of the wrong arity.
            DomainViolationError: sigma or the point_eval location leaves the disk.
        """
        arity = getattr(f, "arity", 4)
        if arity != 4:
            raise ConfigurationError(f"f must take (x1, x2, u, v), got {arity} variable(s)")
        grid = build_grid(domain, n_r, n_theta)
        sigma.check_codomain(grid)
        B.validate(domain)
        quadrature = build_quadrature(grid, n_r_hole)
        log.info(
            f"Problem on ({domain.r_inner}, {domain.r_outer}) with {grid.n_r + 1}x{grid.n_theta} nodes, "
            f"sigma={sigma.kind}, B={B.kind}"
        )
        return cls(domain, grid, quadrature, operator, f, sigma, psi, zeta, B)
