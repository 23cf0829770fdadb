"""
Sampled check of the existence hypotheses for a given radius rho.

  (a) f(x, u, v) >= ell(x) >= 0 whenever 0 <= u, max(u, |v|) <= rho + sup(phi)
  (b) B[u] >= b_rho on the sphere of the affine cone (b_rho is supplied)
  (c) d_rho = sup |G(ell) + b_rho * gamma| > 0

Condition (a) is checked by sampling a lattice of (u, v) values at every node;
a pass is evidence, not a proof.
"""
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from elliptic import AuxSolutions, green_apply, sample_coefficient
from geometry import Field, sup_norm
from utils.config import config
from utils.errors import InputError
from utils.logger import setup_logger

from .boundary import eval_B
from .problem import ProblemSpec

log = setup_logger("functional.hypotheses")

STRICT_TOL = 1e-14


@dataclass(frozen=True)
class LowerBoundViolation:
    node: Tuple[int, int]
    x: Tuple[float, float]
    u: float
    v: float
    f_value: float
    ell_value: float


@dataclass(frozen=True)
class HypothesisReport:
    rho: float
    ell: Callable
    b_rho: float
    d_rho: float
    satisfied: bool
    lower_bound_holds: bool
    first_violation: Optional[LowerBoundViolation]
    samples: int
    phi_sup: float

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to dictionary.

        Returns:
            Dict[str, Any]: Dictionary representation, without the ell function.
        """
        violation = None
        if self.first_violation is not None:
            v = self.first_violation
            violation = f"node={v.node} u={v.u!r} v={v.v!r} f={v.f_value!r} ell={v.ell_value!r}"
        return {
            "rho": self.rho,
            "b_rho": self.b_rho,
            "d_rho": self.d_rho,
            "satisfied": self.satisfied,
            "lower_bound_checked_by_sampling": True,
            "lower_bound_holds": self.lower_bound_holds,
            "first_violation": violation,
            "samples": self.samples,
            "phi_sup": self.phi_sup,
        }


def _sample_lower_bound(
    spec: ProblemSpec,
    ell_values: np.ndarray,
    bound: float,
    lattice: int,
) -> Tuple[int, Optional[LowerBoundViolation]]:
    x1, x2 = spec.grid.coordinates
    slack = 1e-12 * (1.0 + np.abs(ell_values))
    samples = 0
    for u in np.linspace(0.0, bound, lattice):
        for v in np.linspace(-bound, bound, lattice):
            values = np.broadcast_to(np.asarray(spec.f(x1, x2, u, v), dtype=np.float64), x1.shape)
            samples += values.size
            bad = ~(values >= ell_values - slack)
            if np.any(bad):
                i, j = (int(k) for k in np.argwhere(bad)[0])
                violation = LowerBoundViolation(
                    node=(i, j),
                    x=(float(x1[i, j]), float(x2[i, j])),
                    u=float(u),
                    v=float(v),
                    f_value=float(values[i, j]),
                    ell_value=float(ell_values[i, j]),
                )
                return samples, violation
    return samples, None


def check_hypotheses(
    spec: ProblemSpec,
    aux: AuxSolutions,
    rho: float,
    ell: Callable,
    b_rho: float,
    lattice: Optional[int] = None,
) -> HypothesisReport:
    """
    Compute d_rho and sample the lower-bound hypothesis.

    Args:
        spec: Problem data.
        aux: Auxiliary solutions for spec.
        rho: Radius of the sphere in the affine cone (> 0).
        ell: Lower bound ell_rho(x1, x2) >= 0.
        b_rho: Lower bound of B on the sphere (>= 0).
        lattice: Samples per axis of the (u, v) lattice (default from config).

    Returns:
        HypothesisReport: d_rho, the verdict and the sampling outcome.

    Raises:
        InputError: For rho <= 0, b_rho < 0 or ell negative at a node.
    """
    if not rho > 0:
        raise InputError(f"rho must be positive, got {rho}")
    if not b_rho >= 0:
        raise InputError(f"b_rho must be nonnegative, got {b_rho}")
    if lattice is None:
        lattice = config.SAMPLE_LATTICE
    grid = spec.grid
    x1, x2 = grid.coordinates
    ell_values = sample_coefficient(ell, x1, x2)
    negative = ~(ell_values >= 0.0)
    if np.any(negative):
        i, j = (int(k) for k in np.argwhere(negative)[0])
        raise InputError(f"ell = {ell_values[i, j]} < 0 at node ({i}, {j})")

    lower = green_apply(aux.system, Field(grid, ell_values))
    d_rho = float(np.max(np.abs(lower.annulus.values + b_rho * aux.gamma.values)))

    phi_sup = sup_norm(aux.phi, spec.quadrature)
    samples, violation = _sample_lower_bound(spec, ell_values, rho + phi_sup, lattice)
    if violation is not None:
        log.warning(f"Lower bound fails at node {violation.node}: f={violation.f_value:.6g} < ell={violation.ell_value:.6g}")

    report = HypothesisReport(
        rho=float(rho),
        ell=ell,
        b_rho=float(b_rho),
        d_rho=d_rho,
        satisfied=d_rho > STRICT_TOL,
        lower_bound_holds=violation is None,
        first_violation=violation,
        samples=samples,
        phi_sup=phi_sup,
    )
    log.info(f"rho={rho}: d_rho={d_rho:.6g}, satisfied={report.satisfied}")
    return report


def suggested_b_rho(spec: ProblemSpec, aux: AuxSolutions) -> float:
    """
    A valid b_rho when every u on the sphere satisfies u >= phi.

    For point evaluation and linear integrals with a nonnegative weight,
    B[u] >= B[phi]; for power integrals this also needs phi >= 0. Returns
    max(B[phi], 0) in those cases and 0 otherwise.
    """
    B = spec.B
    q = spec.quadrature
    if B.kind != "point_eval":
        w_annulus, w_hole = B.weights_on(q)
        if np.any(w_annulus < 0) or np.any(w_hole < 0):
            return 0.0
    if B.kind == "power_integral":
        hole = np.asarray(aux.phi.hole_fn(q.hole_x1, q.hole_x2))
        if aux.phi.annulus.min() < 0 or np.any(hole < 0):
            return 0.0
    return max(eval_B(B, aux.phi, q), 0.0)
