"""
One-dimensional finite differences for -u'' - u'/r = load on [R1, R2].

The conservative form -(r u')'/r is discretised with the same radial
stencil as the two-dimensional assembly, giving a tridiagonal system.
"""
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from utils.errors import ConfigurationError, LinearSolverError

from .profiles import _check_interval

RadialLoad = Union[float, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True, eq=False)
class RadialSamples:
    """Values of a radial solution on n+1 uniform nodes."""

    r: np.ndarray
    values: np.ndarray

    def max_error(self, exact: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.max(np.abs(self.values - exact(self.r))))


def radial_fd_solve(
    r_inner: float,
    r_outer: float,
    load: RadialLoad,
    bc: Tuple[float, float],
    n: int,
) -> RadialSamples:
    """
    Second-order solve with Dirichlet values bc = (u(R1), u(R2)).

    Args:
        r_inner: R1 > 0.
        r_outer: R2 > R1.
        load: Constant right-hand side or a function of r.
        bc: Boundary values at R1 and R2.
        n: Number of intervals, at least 4.

    Returns:
        RadialSamples: Radii and solution values, boundary values included.

    Raises:
        ConfigurationError: Bad interval or n < 4.
        LinearSolverError: If the tridiagonal system is singular.
    """
    _check_interval(r_inner, r_outer)
    if not isinstance(n, int) or n < 4:
        raise ConfigurationError(f"need at least 4 intervals, got {n}")
    h = (r_outer - r_inner) / n
    r = r_inner + h * np.arange(n + 1)
    r[-1] = r_outer
    interior = r[1:-1]
    alpha, beta = float(bc[0]), float(bc[1])

    lower = (interior - h / 2.0) / (interior * h * h)
    upper = (interior + h / 2.0) / (interior * h * h)
    diagonal = lower + upper

    rhs = np.array(np.broadcast_to(
        np.asarray(load(interior) if callable(load) else load, dtype=np.float64), interior.shape
    ))
    rhs[0] += lower[0] * alpha
    rhs[-1] += upper[-1] * beta

    banded = np.zeros((3, n - 1))
    banded[0, 1:] = -upper[:-1]
    banded[1] = diagonal
    banded[2, :-1] = -lower[1:]
    try:
        solution = solve_banded((1, 1), banded, rhs)
    except (LinAlgError, ValueError) as e:
        raise LinearSolverError(f"radial system could not be solved: {e}", float("nan")) from e
    if not np.all(np.isfinite(solution)):
        raise LinearSolverError("radial system produced non-finite values", float("nan"))

    values = np.concatenate(([alpha], solution, [beta]))
    return RadialSamples(r, values)
