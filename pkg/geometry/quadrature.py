"""
Quadrature over the annulus and the full disk.

Annulus weights are exact areas of the node cells (half cells on the boundary
rings); the hole uses a polar product rule with radial midpoints, so the
origin is never sampled.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from utils.config import config
from utils.errors import ConfigurationError

from .domain import PolarGrid
from .fields import ExtendedField


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    grid: PolarGrid
    weights: np.ndarray
    n_r_hole: int
    hole_x1: np.ndarray
    hole_x2: np.ndarray
    hole_weights: np.ndarray

    @property
    def hole_radii(self) -> np.ndarray:
        return np.hypot(self.hole_x1, self.hole_x2)

    def integrate(self, annulus_values: np.ndarray, hole_values: np.ndarray) -> float:
        """Weighted sum of annulus node values and hole point values."""
        annulus_part = float(np.sum(self.weights * annulus_values))
        hole_part = float(np.sum(self.hole_weights * hole_values))
        return annulus_part + hole_part


def _ring_areas(edges: np.ndarray, dtheta: float) -> np.ndarray:
    return 0.5 * dtheta * (edges[1:] ** 2 - edges[:-1] ** 2)


@lru_cache(maxsize=32)
def build_quadrature(grid: PolarGrid, n_r_hole: Optional[int] = None) -> QuadratureRule:
    """
    Build the quadrature rule for a grid.

    Args:
        grid: Annulus grid.
        n_r_hole: Radial rings of the hole rule; defaults to ANNULUS_HOLE_RINGS or n_r.

    Returns:
        QuadratureRule: Rule whose annulus and hole weights sum to the exact areas.
    """
    if n_r_hole is None:
        n_r_hole = config.HOLE_RINGS or grid.n_r
    if n_r_hole < 1:
        raise ConfigurationError(f"hole rule needs at least one ring, got {n_r_hole}")
    domain = grid.domain
    dtheta = grid.dtheta

    midpoints = domain.r_inner + (np.arange(grid.n_r) + 0.5) * grid.dr
    edges = np.concatenate(([domain.r_inner], midpoints, [domain.r_outer]))
    weights = np.repeat(_ring_areas(edges, dtheta)[:, None], grid.n_theta, axis=1)

    h = domain.r_inner / n_r_hole
    hole_edges = np.arange(n_r_hole + 1) * h
    hole_edges[-1] = domain.r_inner
    hole_r = (np.arange(n_r_hole) + 0.5) * h
    hole_ring_areas = _ring_areas(hole_edges, dtheta)
    hole_x1 = (hole_r[:, None] * np.cos(grid.theta)[None, :]).ravel()
    hole_x2 = (hole_r[:, None] * np.sin(grid.theta)[None, :]).ravel()
    hole_weights = np.repeat(hole_ring_areas, grid.n_theta)

    for array in (weights, hole_x1, hole_x2, hole_weights):
        array.setflags(write=False)
    return QuadratureRule(grid, weights, int(n_r_hole), hole_x1, hole_x2, hole_weights)


def integrate_omega2(u: ExtendedField, q: QuadratureRule) -> float:
    """
    Integral of an extended field over the full disk.

    Raises:
        ConfigurationError: If the rule was built for another grid.
    """
    if q.grid != u.grid:
        raise ConfigurationError("quadrature rule and field live on different grids")
    hole_values = np.broadcast_to(
        np.asarray(u.hole_fn(q.hole_x1, q.hole_x2), dtype=np.float64), q.hole_x1.shape
    )
    return q.integrate(u.annulus.values, hole_values)
