"""
Auxiliary Dirichlet solutions: the inner-data extension delta, the
outer-data solution gamma, the cone vertex phi and the zero extension of gamma.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from geometry import ExtendedField, Field, HoleFunction, PolarGrid, zero_hole
from utils.errors import ConfigurationError, NumericalSchemeError
from utils.logger import setup_logger

from .operator import Coefficient, EllipticOperator, sample_coefficient
from .system import DiscreteSystem, assemble, solve_dirichlet

log = setup_logger("elliptic.auxiliary")


def _as_hole(psi: Coefficient) -> HoleFunction:
    if callable(psi):
        return psi
    value = float(psi)
    if value == 0.0:
        return zero_hole
    return lambda x1, x2: np.full(np.broadcast(np.asarray(x1), np.asarray(x2)).shape, value)


@dataclass(frozen=True, eq=False)
class AuxSolutions:
    system: DiscreteSystem
    delta: Field
    gamma: Field
    phi: ExtendedField
    gamma_tilde: ExtendedField


def build_aux(
    op: EllipticOperator,
    grid: PolarGrid,
    psi: Coefficient,
    zeta: Coefficient,
    system: Optional[DiscreteSystem] = None,
) -> AuxSolutions:
    """
    Solve for delta (L u = 0, u = psi inside, 0 outside) and gamma
    (L u = 0, u = 0 inside, zeta outside), and glue phi = psi | delta.

    Args:
        op: Operator coefficients.
        grid: Polar grid.
        psi: Hole data; also the inner boundary data of delta.
        zeta: Outer boundary weight, nonnegative.
        system: Pre-assembled system for op on grid, if available.

    Returns:
        AuxSolutions: delta, gamma, phi, gamma_tilde and the system used.

    Raises:
        ConfigurationError: If zeta is negative at an outer node.
        NumericalSchemeError: If a maximum-principle check fails beyond mp_tol.
    """
    if system is None:
        system = assemble(op, grid)
    x1, x2 = grid.coordinates
    zeta_values = sample_coefficient(zeta, x1[-1], x2[-1])
    negative = ~(zeta_values >= 0.0)
    if np.any(negative):
        j = int(np.argmax(negative))
        raise ConfigurationError(f"zeta = {zeta_values[j]} < 0 at outer node ({grid.n_r}, {j})")
    psi_values = sample_coefficient(psi, x1[0], x2[0])

    zero = Field.zeros(grid)
    delta = solve_dirichlet(system, zero, psi, 0.0)
    gamma = solve_dirichlet(system, zero, 0.0, zeta)

    gamma_tol = 1e-10 * (1.0 + float(np.max(zeta_values)))
    if gamma.min() < -gamma_tol:
        log.error(f"gamma reached {gamma.min():.3e} below -{gamma_tol:.1e}")
        raise NumericalSchemeError(f"maximum principle violated: min gamma = {gamma.min():.3e}")
    gamma = Field(grid, np.maximum(gamma.values, 0.0))

    delta_tol = 1e-10 * (1.0 + float(np.max(np.abs(psi_values))))
    upper = max(0.0, float(np.max(psi_values))) + delta_tol
    lower = min(0.0, float(np.min(psi_values))) - delta_tol
    if delta.values.max() > upper or delta.values.min() < lower:
        raise NumericalSchemeError(
            f"maximum principle violated: delta spans [{delta.min():.3e}, {delta.values.max():.3e}] "
            f"outside the boundary data range"
        )

    phi = ExtendedField(delta, _as_hole(psi))
    gamma_tilde = ExtendedField(gamma)
    log.info(f"Auxiliary solutions ready: max delta={delta.max_abs():.6g}, max gamma={gamma.max_abs():.6g}")
    return AuxSolutions(system, delta, gamma, phi, gamma_tilde)
