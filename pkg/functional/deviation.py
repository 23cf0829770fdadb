"""
Deviation maps sigma: annulus -> closed disk, used as u_sigma(x) = u(sigma(x)).
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from geometry import PolarGrid
from utils.errors import ConfigurationError, DomainViolationError

DEVIATION_KINDS = ("identity", "scale", "rotate", "constant", "expression")


@dataclass(frozen=True)
class DeviationMap:
    kind: str
    factor: float = 1.0
    angle: float = 0.0
    point: Tuple[float, float] = (0.0, 0.0)
    components: Optional[Tuple[Callable, Callable]] = None

    def __post_init__(self):
        if self.kind not in DEVIATION_KINDS:
            raise ConfigurationError(f"unknown deviation kind {self.kind!r}; expected one of {DEVIATION_KINDS}")
        if self.kind == "scale" and not 0.0 < self.factor <= 1.0:
            raise ConfigurationError(f"scale factor must lie in (0, 1], got {self.factor}")
        if self.kind == "expression" and (self.components is None or len(self.components) != 2):
            raise ConfigurationError("expression deviation needs two component functions")

    @classmethod
    def identity(cls) -> "DeviationMap":
        return cls("identity")

    @classmethod
    def scaled(cls, factor: float) -> "DeviationMap":
        return cls("scale", factor=float(factor))

    @classmethod
    def rotation(cls, angle: float) -> "DeviationMap":
        return cls("rotate", angle=float(angle))

    @classmethod
    def constant_point(cls, eta: Tuple[float, float]) -> "DeviationMap":
        return cls("constant", point=(float(eta[0]), float(eta[1])))

    @classmethod
    def from_expressions(cls, sigma1: Callable, sigma2: Callable) -> "DeviationMap":
        return cls("expression", components=(sigma1, sigma2))

    def __call__(self, x1: np.ndarray, x2: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x1 = np.asarray(x1, dtype=np.float64)
        x2 = np.asarray(x2, dtype=np.float64)
        shape = np.broadcast(x1, x2).shape
        if self.kind == "identity":
            y1, y2 = x1, x2
        elif self.kind == "scale":
            y1, y2 = self.factor * x1, self.factor * x2
        elif self.kind == "rotate":
            c, s = math.cos(self.angle), math.sin(self.angle)
            y1, y2 = c * x1 - s * x2, s * x1 + c * x2
        elif self.kind == "constant":
            y1, y2 = np.full(shape, self.point[0]), np.full(shape, self.point[1])
        else:
            sigma1, sigma2 = self.components
            y1, y2 = sigma1(x1, x2), sigma2(x1, x2)
        return (
            np.array(np.broadcast_to(y1, shape), dtype=np.float64),
            np.array(np.broadcast_to(y2, shape), dtype=np.float64),
        )

    def check_codomain(self, grid: PolarGrid) -> None:
        """
        Require sigma(x) in the closed outer disk for every grid node.

        Raises:
            DomainViolationError: Naming the first offending node.
        """
        x1, x2 = grid.coordinates
        y1, y2 = self(x1, x2)
        domain = grid.domain
        outside = ~(np.hypot(y1, y2) <= domain.r_outer + domain.geom_tol)
        if np.any(outside):
            i, j = (int(k) for k in np.argwhere(outside)[0])
            raise DomainViolationError(
                f"deviation maps node ({i}, {j}) to ({y1[i, j]}, {y2[i, j]}), "
                f"outside the disk of radius {domain.r_outer}"
            )
