"""
Nemytskii operator with deviated argument and the fixed-point operator

    T(u) = G(F(u)) + gamma_tilde * B[u].
"""
import math

import numpy as np

from elliptic import AuxSolutions, green_apply
from geometry import ExtendedField, Field
from utils.errors import ConfigurationError, NumericalError

from .boundary import eval_B
from .problem import ProblemSpec


def nemytskii(spec: ProblemSpec, u: ExtendedField) -> Field:
    """
    F(u)(x) = f(x, u(x), u(sigma(x))) at every annulus node.

    Raises:
        ConfigurationError: If u lives on another grid.
        DomainViolationError: If sigma leaves the disk.
        EvaluationDomainError: If f is evaluated outside its domain.
    """
    if u.grid != spec.grid:
        raise ConfigurationError("field and problem live on different grids")
    x1, x2 = spec.grid.coordinates
    y1, y2 = spec.sigma(x1, x2)
    deviated = u.evaluate(y1, y2)
    values = spec.f(x1, x2, u.annulus.values, deviated)
    return Field(spec.grid, np.broadcast_to(np.asarray(values, dtype=np.float64), spec.grid.shape))


def apply_T(spec: ProblemSpec, aux: AuxSolutions, u: ExtendedField) -> ExtendedField:
    """
    Apply the fixed-point operator; the result vanishes on the hole.

    Raises:
        NumericalError: If B[u] is not finite.
    """
    if aux.system.grid != spec.grid:
        raise ConfigurationError("auxiliary solutions and problem live on different grids")
    green_part = green_apply(aux.system, nemytskii(spec, u))
    b_value = eval_B(spec.B, u, spec.quadrature)
    if not math.isfinite(b_value):
        raise NumericalError(f"boundary functional returned {b_value}")
    return green_part + aux.gamma_tilde.scale(b_value)
