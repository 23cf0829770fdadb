"""
Functionals B entering the outer boundary condition u = lambda * zeta * B[u].
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from elliptic import sample_coefficient
from elliptic.operator import Coefficient
from geometry import AnnularDomain, ExtendedField, QuadratureRule, eval_extended
from utils.errors import ConfigurationError, DomainViolationError

FUNCTIONAL_KINDS = ("power_integral", "point_eval", "linear_integral")


@dataclass(frozen=True)
class BoundaryFunctional:
    """
    One of
      power_integral:  integral over the disk of weight * |u|^exponent
      point_eval:      u(point)
      linear_integral: integral over the disk of weight * u
    """

    kind: str
    exponent: float = 1.0
    weight: Coefficient = 1.0
    point: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.kind not in FUNCTIONAL_KINDS:
            raise ConfigurationError(f"unknown functional kind {self.kind!r}; expected one of {FUNCTIONAL_KINDS}")
        if self.kind == "power_integral" and not (math.isfinite(self.exponent) and self.exponent >= 1.0):
            raise ConfigurationError(f"power_integral exponent must be >= 1, got {self.exponent}")
        if self.kind == "point_eval" and self.point is None:
            raise ConfigurationError("point_eval needs an evaluation point")

    @classmethod
    def power_integral(cls, exponent: float, weight: Coefficient = 1.0) -> "BoundaryFunctional":
        return cls("power_integral", exponent=float(exponent), weight=weight)

    @classmethod
    def point_eval(cls, eta: Tuple[float, float]) -> "BoundaryFunctional":
        return cls("point_eval", point=(float(eta[0]), float(eta[1])))

    @classmethod
    def linear_integral(cls, weight: Coefficient = 1.0) -> "BoundaryFunctional":
        return cls("linear_integral", weight=weight)

    @classmethod
    def zero(cls) -> "BoundaryFunctional":
        return cls("linear_integral", weight=0.0)

    def validate(self, domain: AnnularDomain) -> None:
        """Check that a point_eval location lies in the closed disk."""
        if self.kind == "point_eval":
            radius = math.hypot(*self.point)
            if radius > domain.r_outer + domain.geom_tol:
                raise DomainViolationError(
                    f"point_eval location {self.point} lies outside the disk of radius {domain.r_outer}"
                )

    def weights_on(self, q: QuadratureRule) -> Tuple[np.ndarray, np.ndarray]:
        """Weight function sampled on annulus nodes and hole points."""
        x1, x2 = q.grid.coordinates
        return (
            sample_coefficient(self.weight, x1, x2),
            sample_coefficient(self.weight, q.hole_x1, q.hole_x2),
        )

    def evaluate(self, u: ExtendedField, q: QuadratureRule) -> float:
        if self.kind == "point_eval":
            return eval_extended(u, self.point)
        if q.grid != u.grid:
            raise ConfigurationError("quadrature rule and field live on different grids")
        w_annulus, w_hole = self.weights_on(q)
        annulus = u.annulus.values
        hole = np.broadcast_to(
            np.asarray(u.hole_fn(q.hole_x1, q.hole_x2), dtype=np.float64), q.hole_x1.shape
        )
        if self.kind == "power_integral":
            return q.integrate(
                w_annulus * np.abs(annulus) ** self.exponent,
                w_hole * np.abs(hole) ** self.exponent,
            )
        return q.integrate(w_annulus * annulus, w_hole * hole)


def eval_B(B: BoundaryFunctional, u: ExtendedField, q: QuadratureRule) -> float:
    """Value of the boundary functional at u."""
    return B.evaluate(u, q)
