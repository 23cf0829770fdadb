"""
Coefficients of the elliptic operator

    L u = -mu(x) * Laplace(u) + drift(x) . grad(u) + potential(x) * u
"""
import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from exprlang import constant
from utils.errors import ConfigurationError

Coefficient = Union[float, Callable[[np.ndarray, np.ndarray], Union[float, np.ndarray]]]


def sample_coefficient(fn: Coefficient, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """Evaluate a coefficient (function or number) on node arrays."""
    value = fn(x1, x2) if callable(fn) else fn
    return np.array(np.broadcast_to(np.asarray(value, dtype=np.float64), np.shape(x1)))


@dataclass(frozen=True)
class EllipticOperator:
    """
    Isotropic diffusion, first-order drift and nonnegative potential.

    The matrix a_ij of the general operator is mu(x) times the identity.
    """

    mu: Coefficient
    drift: Tuple[Coefficient, Coefficient]
    potential: Coefficient
    mu_floor: float = 1e-8

    def __post_init__(self):
        if not (math.isfinite(self.mu_floor) and self.mu_floor > 0):
            raise ConfigurationError(f"mu_floor must be positive, got {self.mu_floor}")
        if len(self.drift) != 2:
            raise ConfigurationError("drift needs exactly two components")

    @classmethod
    def laplacian(cls) -> "EllipticOperator":
        """L = -Laplace."""
        return cls(
            mu=constant(1.0),
            drift=(constant(0.0), constant(0.0)),
            potential=constant(0.0),
            mu_floor=1.0,
        )
