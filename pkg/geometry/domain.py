"""
Annular domains and polar tensor grids.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from utils.errors import ConfigurationError
from utils.logger import setup_logger

log = setup_logger("geometry.domain")


@dataclass(frozen=True)
class AnnularDomain:
    """Concentric annulus r_inner < |x| < r_outer; the hole is the disk |x| <= r_inner."""

    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not (math.isfinite(self.r_inner) and math.isfinite(self.r_outer)):
            raise ConfigurationError("annulus radii must be finite")
        if not 0 < self.r_inner < self.r_outer:
            raise ConfigurationError(
                f"annulus radii must satisfy 0 < r_inner < r_outer, got ({self.r_inner}, {self.r_outer})"
            )

    @property
    def geom_tol(self) -> float:
        return 1e-12 * self.r_outer

    @property
    def annulus_area(self) -> float:
        return math.pi * (self.r_outer ** 2 - self.r_inner ** 2)

    @property
    def hole_area(self) -> float:
        return math.pi * self.r_inner ** 2


@dataclass(frozen=True)
class PolarGrid:
    """
    Tensor grid on the closed annulus.

    Rings i = 0..n_r sit at r_i = r_inner + i*dr, angles j = 0..n_theta-1 at
    theta_j = j*dtheta and wrap periodically. Rings 0 and n_r carry the inner
    and outer boundary.
    """

    domain: AnnularDomain
    n_r: int
    n_theta: int

    @property
    def dr(self) -> float:
        return (self.domain.r_outer - self.domain.r_inner) / self.n_r

    @property
    def dtheta(self) -> float:
        return 2.0 * math.pi / self.n_theta

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_r + 1, self.n_theta)

    @property
    def size(self) -> int:
        return (self.n_r + 1) * self.n_theta

    @cached_property
    def r(self) -> np.ndarray:
        radii = self.domain.r_inner + np.arange(self.n_r + 1) * self.dr
        radii[-1] = self.domain.r_outer
        radii.setflags(write=False)
        return radii

    @cached_property
    def theta(self) -> np.ndarray:
        angles = np.arange(self.n_theta) * self.dtheta
        angles.setflags(write=False)
        return angles

    @cached_property
    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Cartesian node coordinates, each of shape (n_r+1, n_theta)."""
        x1 = self.r[:, None] * np.cos(self.theta)[None, :]
        x2 = self.r[:, None] * np.sin(self.theta)[None, :]
        x1.setflags(write=False)
        x2.setflags(write=False)
        return x1, x2

    def node_position(self, i: int, j: int) -> Tuple[float, float]:
        """Cartesian position of node (i, j); j wraps modulo n_theta."""
        if not 0 <= i <= self.n_r:
            raise ConfigurationError(f"ring index {i} outside 0..{self.n_r}")
        j = j % self.n_theta
        radius = float(self.r[i])
        angle = float(self.theta[j])
        return (radius * math.cos(angle), radius * math.sin(angle))


def build_grid(domain: AnnularDomain, n_r: int, n_theta: int) -> PolarGrid:
    """
    Build the polar tensor grid on an annulus.

    Args:
        domain: The annulus.
        n_r: Number of ring intervals (at least 2).
        n_theta: Number of angular nodes (at least 8).

    Returns:
        PolarGrid: The grid.

    Raises:
        ConfigurationError: If a count is out of range.
    """
    if isinstance(n_r, bool) or not isinstance(n_r, (int, np.integer)) or n_r < 2:
        raise ConfigurationError(f"n_r must be an integer >= 2, got {n_r!r}")
    if isinstance(n_theta, bool) or not isinstance(n_theta, (int, np.integer)) or n_theta < 8:
        raise ConfigurationError(f"n_theta must be an integer >= 8, got {n_theta!r}")
    grid = PolarGrid(domain, int(n_r), int(n_theta))
    log.debug(f"Built {grid.n_r + 1}x{grid.n_theta} polar grid on ({domain.r_inner}, {domain.r_outer})")
    return grid
