"""
Grid fields on the annulus and their extensions to the closed disk.
"""
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Optional, Tuple, Union

import numpy as np

from utils.errors import ConfigurationError, DomainViolationError, FieldError

from .domain import PolarGrid

if TYPE_CHECKING:
    from .quadrature import QuadratureRule

HoleFunction = Callable[[np.ndarray, np.ndarray], Union[float, np.ndarray]]


def zero_hole(x1, x2) -> np.ndarray:
    """The identically zero hole function."""
    return np.zeros(np.broadcast(np.asarray(x1), np.asarray(x2)).shape)


class HoleCombination:
    """Linear combination of hole functions; identical functions are merged."""

    def __init__(self, terms: Tuple[Tuple[float, HoleFunction], ...]):
        self.terms = terms

    def __call__(self, x1, x2) -> np.ndarray:
        total = zero_hole(x1, x2)
        for coef, fn in self.terms:
            total = total + coef * np.asarray(fn(x1, x2), dtype=np.float64)
        return total


def _expand(coef: float, fn: HoleFunction):
    if fn is zero_hole or coef == 0.0:
        return []
    if isinstance(fn, HoleCombination):
        return [(coef * c, f) for c, f in fn.terms]
    return [(coef, fn)]


def combine_holes(a: HoleFunction, ca: float, b: HoleFunction, cb: float) -> HoleFunction:
    """Hole function of ca*a + cb*b, simplified so that a - a is exactly zero_hole."""
    merged = []
    for coef, fn in _expand(ca, a) + _expand(cb, b):
        for index, (existing_coef, existing_fn) in enumerate(merged):
            if existing_fn is fn:
                merged[index] = (existing_coef + coef, fn)
                break
        else:
            merged.append((coef, fn))
    merged = [(c, f) for c, f in merged if c != 0.0]
    if not merged:
        return zero_hole
    if len(merged) == 1 and merged[0][0] == 1.0:
        return merged[0][1]
    return HoleCombination(tuple(merged))


@dataclass(frozen=True, eq=False)
class Field:
    """Real values on every annulus node, stored as an (n_r+1, n_theta) array."""

    grid: PolarGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.size != self.grid.size:
            raise FieldError(
                f"field has {values.size} values, grid needs {self.grid.size}"
            )
        values = values.reshape(self.grid.shape)
        if not np.all(np.isfinite(values)):
            i, j = np.argwhere(~np.isfinite(values))[0]
            raise FieldError(f"non-finite field value at node ({i}, {j})")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: PolarGrid) -> "Field":
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid: PolarGrid, value: float) -> "Field":
        return cls(grid, np.full(grid.shape, float(value)))

    @classmethod
    def from_function(cls, grid: PolarGrid, fn: Callable) -> "Field":
        """Sample fn(x1, x2) at every node."""
        x1, x2 = grid.coordinates
        return cls(grid, np.broadcast_to(np.asarray(fn(x1, x2), dtype=np.float64), grid.shape))

    def _check_grid(self, other: "Field") -> None:
        if self.grid != other.grid:
            raise ConfigurationError("fields live on different grids")

    def __add__(self, other: "Field") -> "Field":
        self._check_grid(other)
        return Field(self.grid, self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        self._check_grid(other)
        return Field(self.grid, self.values - other.values)

    def scale(self, factor: float) -> "Field":
        return Field(self.grid, factor * self.values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def min(self) -> float:
        return float(np.min(self.values))

    def interpolate(self, r: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """
        Bilinear interpolation in (r, theta) with periodic wrap in theta.

        Radii are clamped into [r_inner, r_outer].
        """
        grid = self.grid
        domain = grid.domain
        rc = np.clip(r, domain.r_inner, domain.r_outer)
        s = (rc - domain.r_inner) / grid.dr
        i0 = np.clip(np.floor(s).astype(np.int64), 0, grid.n_r - 1)
        tr = s - i0
        t = np.mod(theta, 2.0 * math.pi) / grid.dtheta
        jf = np.floor(t)
        tj = t - jf
        j0 = jf.astype(np.int64) % grid.n_theta
        j1 = (j0 + 1) % grid.n_theta
        v = self.values
        return (
            (1.0 - tr) * (1.0 - tj) * v[i0, j0]
            + (1.0 - tr) * tj * v[i0, j1]
            + tr * (1.0 - tj) * v[i0 + 1, j0]
            + tr * tj * v[i0 + 1, j1]
        )


@dataclass(frozen=True, eq=False)
class ExtendedField:
    """
    A function on the closed disk: grid values on the annulus, an analytic
    function on the hole. The two must agree on the inner ring.
    """

    annulus: Field
    hole_fn: HoleFunction = zero_hole

    def __post_init__(self):
        grid = self.annulus.grid
        x1, x2 = grid.coordinates
        ring = self.annulus.values[0]
        hole_values = np.broadcast_to(
            np.asarray(self.hole_fn(x1[0], x2[0]), dtype=np.float64), ring.shape
        )
        compat_tol = 1e-8 * (1.0 + float(np.max(np.abs(self.annulus.values))))
        mismatch = np.abs(ring - hole_values)
        if not np.all(mismatch <= compat_tol):
            j = int(np.argmax(np.where(np.isfinite(mismatch), mismatch, np.inf)))
            raise FieldError(
                f"hole function and annulus disagree on the inner ring at j={j} "
                f"(|difference| = {mismatch[j]:.3e} > {compat_tol:.3e})"
            )

    @property
    def grid(self) -> PolarGrid:
        return self.annulus.grid

    @property
    def hole_is_zero(self) -> bool:
        return self.hole_fn is zero_hole

    def evaluate(self, x1, x2):
        """
        Evaluate at Cartesian points (scalars or arrays).

        Raises:
            DomainViolationError: For points beyond the outer circle plus geom_tol.
        """
        x1b, x2b = np.broadcast_arrays(np.asarray(x1, dtype=np.float64), np.asarray(x2, dtype=np.float64))
        px = x1b.ravel()
        py = x2b.ravel()
        domain = self.grid.domain
        rr = np.hypot(px, py)
        outside = rr > domain.r_outer + domain.geom_tol
        if np.any(outside):
            k = int(np.argmax(outside))
            raise DomainViolationError(
                f"point ({px[k]}, {py[k]}) lies outside the disk of radius {domain.r_outer}"
            )
        out = np.empty_like(rr)
        hole = rr <= domain.r_inner
        if np.any(hole):
            out[hole] = np.broadcast_to(
                np.asarray(self.hole_fn(px[hole], py[hole]), dtype=np.float64), px[hole].shape
            )
        ring = ~hole
        if np.any(ring):
            out[ring] = self.annulus.interpolate(rr[ring], np.arctan2(py[ring], px[ring]))
        if x1b.ndim == 0:
            return float(out[0])
        return out.reshape(x1b.shape)

    def __add__(self, other: "ExtendedField") -> "ExtendedField":
        return ExtendedField(
            self.annulus + other.annulus, combine_holes(self.hole_fn, 1.0, other.hole_fn, 1.0)
        )

    def __sub__(self, other: "ExtendedField") -> "ExtendedField":
        return ExtendedField(
            self.annulus - other.annulus, combine_holes(self.hole_fn, 1.0, other.hole_fn, -1.0)
        )

    def scale(self, factor: float) -> "ExtendedField":
        return ExtendedField(
            self.annulus.scale(factor), combine_holes(self.hole_fn, factor, zero_hole, 0.0)
        )

    @classmethod
    def zeros(cls, grid: PolarGrid) -> "ExtendedField":
        return cls(Field.zeros(grid))


def eval_extended(u: ExtendedField, p: Tuple[float, float]) -> float:
    """Value of an extended field at one Cartesian point."""
    return u.evaluate(float(p[0]), float(p[1]))


def sup_diff(u: ExtendedField, v: ExtendedField, quadrature: Optional["QuadratureRule"] = None) -> float:
    """
    Discrete sup norm of u - v over annulus nodes and hole quadrature points.

    Args:
        u: First field.
        v: Second field, on the same grid.
        quadrature: Rule whose hole points are sampled; defaults to build_quadrature(u.grid).

    Raises:
        ConfigurationError: If the fields or the rule live on different grids.
    """
    from .quadrature import build_quadrature

    if u.grid != v.grid:
        raise ConfigurationError("sup_diff needs fields on the same grid")
    rule = quadrature if quadrature is not None else build_quadrature(u.grid)
    if rule.grid != u.grid:
        raise ConfigurationError("sup_diff needs a quadrature rule on the fields' grid")
    annulus_sup = float(np.max(np.abs(u.annulus.values - v.annulus.values)))
    hole_u = np.asarray(u.hole_fn(rule.hole_x1, rule.hole_x2), dtype=np.float64)
    hole_v = np.asarray(v.hole_fn(rule.hole_x1, rule.hole_x2), dtype=np.float64)
    hole_sup = float(np.max(np.abs(hole_u - hole_v))) if rule.hole_x1.size else 0.0
    return max(annulus_sup, hole_sup)


def sup_norm(u: ExtendedField, quadrature: Optional["QuadratureRule"] = None) -> float:
    """Discrete sup norm of an extended field."""
    return sup_diff(u, ExtendedField.zeros(u.grid), quadrature)
