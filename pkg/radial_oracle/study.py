"""
Cross-checks of the two-dimensional solver against radial ground truth.
"""
import math
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd

from elliptic import EllipticOperator, assemble, solve_dirichlet
from geometry import AnnularDomain, Field, PolarGrid, build_grid
from utils.errors import ConfigurationError
from utils.logger import setup_logger

from .fd import RadialLoad, radial_fd_solve
from .profiles import RadialProfile, harmonic_closed_form, radial_sup, torsion_closed_form

log = setup_logger("radial_oracle.study")

CASES = ("torsion", "gamma", "delta")


def closed_form_case(case: str, domain: AnnularDomain) -> Tuple[RadialProfile, float, Tuple[float, float]]:
    """
    Profile, load and boundary values of a named radial case.

    torsion: -Laplace u = 1 with zero data; gamma: harmonic, 0 inside and 1
    outside; delta: harmonic, 1 inside and 0 outside.
    """
    r1, r2 = domain.r_inner, domain.r_outer
    if case == "torsion":
        return torsion_closed_form(r1, r2, 1.0), 1.0, (0.0, 0.0)
    if case == "gamma":
        return harmonic_closed_form(r1, r2, 0.0, 1.0), 0.0, (0.0, 1.0)
    if case == "delta":
        return harmonic_closed_form(r1, r2, 1.0, 0.0), 0.0, (1.0, 0.0)
    raise ConfigurationError(f"unknown oracle case {case!r}; expected one of {CASES}")


def _grid_solution(grid: PolarGrid, load: RadialLoad, bc: Tuple[float, float]) -> Field:
    system = assemble(EllipticOperator.laplacian(), grid)
    if callable(load):
        x1, x2 = grid.coordinates
        rhs = Field(grid, np.asarray(load(np.hypot(x1, x2)), dtype=np.float64))
    else:
        rhs = Field.constant(grid, load)
    return solve_dirichlet(system, rhs, bc[0], bc[1])


def compare_with_grid(grid: PolarGrid, load: RadialLoad, bc: Tuple[float, float]) -> float:
    """
    Max difference between the 2D solution for a radial problem and the 1D
    solve at matching radial resolution.
    """
    solution = _grid_solution(grid, load, bc)
    radial = radial_fd_solve(grid.domain.r_inner, grid.domain.r_outer, load, bc, grid.n_r)
    return float(np.max(np.abs(solution.values - radial.values[:, None])))


def convergence_study(
    domain: AnnularDomain,
    case: str,
    resolutions: Iterable[Tuple[int, int]],
) -> pd.DataFrame:
    """
    Errors of the 2D solver against the closed form at several resolutions.

    Args:
        domain: The annulus.
        case: One of CASES.
        resolutions: (n_r, n_theta) pairs, coarse to fine.

    Returns:
        pd.DataFrame: Columns n_r, n_theta, max_error, ratio, discrete_sup,
            exact_sup. ratio is the previous error over this one (NaN first).
    """
    profile, load, bc = closed_form_case(case, domain)
    _, exact_sup = radial_sup(profile)
    rows = []
    previous: Optional[float] = None
    for n_r, n_theta in resolutions:
        grid = build_grid(domain, n_r, n_theta)
        solution = _grid_solution(grid, load, bc)
        error = float(np.max(np.abs(solution.values - profile(grid.r)[:, None])))
        ratio = previous / error if previous is not None and error > 0 else math.nan
        rows.append({
            "n_r": n_r,
            "n_theta": n_theta,
            "max_error": error,
            "ratio": ratio,
            "discrete_sup": solution.max_abs(),
            "exact_sup": exact_sup,
        })
        log.info(f"{case} at {n_r}x{n_theta}: max error {error:.3e}")
        previous = error
    return pd.DataFrame(rows, columns=["n_r", "n_theta", "max_error", "ratio", "discrete_sup", "exact_sup"])
