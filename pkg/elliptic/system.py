"""
Finite-difference assembly and Dirichlet solves on the polar grid.

Interior rows discretise L in polar form: conservative centred differences for
the diffusion, first-order upwinding for the drift. Rows on the two boundary
rings are identity rows. With mu > 0 and potential >= 0 the matrix is an
M-matrix, so the discrete maximum principle holds.
"""
import math
import threading
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from geometry import ExtendedField, Field, PolarGrid
from utils.config import config
from utils.errors import AssemblyError, ConfigurationError, LinearSolverError
from utils.logger import setup_logger

from .operator import Coefficient, EllipticOperator, sample_coefficient

log = setup_logger("elliptic.system")


class DiscreteSystem:
    """Assembled sparse matrix plus its LU factorisation; immutable after assembly."""

    def __init__(self, grid: PolarGrid, matrix: sp.csr_matrix, lin_tol: float):
        self.grid = grid
        self.matrix = matrix
        self.lin_tol = lin_tol
        self.norm = float(abs(matrix).sum(axis=1).max())
        self._lu = splu(matrix.tocsc())
        # SuperLU objects are not documented as thread-safe
        self._lock = threading.Lock()

    def _lu_solve(self, b: np.ndarray) -> np.ndarray:
        with self._lock:
            return self._lu.solve(b)

    def backward_error(self, x: np.ndarray, b: np.ndarray) -> float:
        """Normwise backward error max|b - A x| / (||A|| max|x| + max|b|)."""
        residual = b - self.matrix @ x
        scale = self.norm * float(np.max(np.abs(x))) + float(np.max(np.abs(b)))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(residual))) / scale

    def relative_residual(self, x: np.ndarray, b: np.ndarray) -> float:
        """max|A x - b| / max|b|; 0 for b = 0 and x = 0, inf for b = 0 and x != 0."""
        residual = float(np.max(np.abs(self.matrix @ x - b)))
        scale = float(np.max(np.abs(b)))
        if scale == 0.0:
            return 0.0 if residual == 0.0 else math.inf
        return residual / scale

    def solve(self, b: np.ndarray) -> np.ndarray:
        """
        Solve A x = b to the residual contract.

        The contract bounds the backward error; the relative residual is
        reported alongside it.

        Raises:
            LinearSolverError: If one refinement step cannot meet lin_tol.
        """
        x = self._lu_solve(b)
        error = self.backward_error(x, b)
        if not error <= self.lin_tol:
            x = x + self._lu_solve(b - self.matrix @ x)
            error = self.backward_error(x, b)
        relative = self.relative_residual(x, b)
        if not (np.all(np.isfinite(x)) and error <= self.lin_tol):
            log.error(
                f"Dirichlet solve missed lin_tol={self.lin_tol:.1e}: "
                f"backward error {error:.3e}, relative residual {relative:.3e}"
            )
            raise LinearSolverError("linear solve did not reach the requested tolerance", error, relative)
        log.debug(f"Dirichlet solve: backward error {error:.3e}, relative residual {relative:.3e}")
        return x

    def is_m_matrix(self) -> bool:
        """Nonpositive off-diagonals and weak row dominance on interior rows."""
        coo = self.matrix.tocoo()
        off = coo.row != coo.col
        if np.any(coo.data[off] > 0):
            return False
        diag = self.matrix.diagonal()
        off_sum = np.zeros(self.matrix.shape[0])
        np.add.at(off_sum, coo.row[off], np.abs(coo.data[off]))
        slack = 1e-12 * np.maximum(diag, 1.0)
        return bool(np.all(diag + slack >= off_sum))


def assemble(op: EllipticOperator, grid: PolarGrid, lin_tol: Optional[float] = None) -> DiscreteSystem:
    """
    Assemble the discrete Dirichlet problem for L on a grid.

    Args:
        op: Operator coefficients.
        grid: Polar grid.
        lin_tol: Residual contract of later solves (default from config).

    Returns:
        DiscreteSystem: Matrix and factorisation.

    Raises:
        AssemblyError: If mu < mu_floor or potential < 0 at some node.
    """
    if lin_tol is None:
        lin_tol = config.LIN_TOL
    x1, x2 = grid.coordinates

    mu_all = sample_coefficient(op.mu, x1, x2)
    bad = ~(mu_all >= op.mu_floor)
    if np.any(bad):
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise AssemblyError(
            f"diffusion coefficient {mu_all[i, j]} below mu_floor {op.mu_floor} at node ({i}, {j})",
            (i, j),
        )
    a_all = sample_coefficient(op.potential, x1, x2)
    bad = ~(a_all >= 0.0)
    if np.any(bad):
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise AssemblyError(f"negative potential {a_all[i, j]} at node ({i}, {j})", (i, j))

    n_r, n_t = grid.n_r, grid.n_theta
    dr, dth = grid.dr, grid.dtheta
    r = grid.r[1:-1][:, None]
    cos_t = np.cos(grid.theta)[None, :]
    sin_t = np.sin(grid.theta)[None, :]
    mu = mu_all[1:-1]
    a = a_all[1:-1]
    b1 = sample_coefficient(op.drift[0], x1[1:-1], x2[1:-1])
    b2 = sample_coefficient(op.drift[1], x1[1:-1], x2[1:-1])
    b_r = b1 * cos_t + b2 * sin_t
    b_t = -b1 * sin_t + b2 * cos_t

    c_in = -mu * (r - 0.5 * dr) / (r * dr ** 2) - np.maximum(b_r, 0.0) / dr
    c_out = -mu * (r + 0.5 * dr) / (r * dr ** 2) + np.minimum(b_r, 0.0) / dr
    c_ang = mu / (r ** 2 * dth ** 2)
    c_prev = -c_ang - np.maximum(b_t, 0.0) / (r * dth)
    c_next = -c_ang + np.minimum(b_t, 0.0) / (r * dth)
    c_diag = -(c_in + c_out + c_prev + c_next) + a

    shape = (n_r - 1, n_t)
    ii = np.broadcast_to(np.arange(1, n_r)[:, None], shape)
    jj = np.broadcast_to(np.arange(n_t)[None, :], shape)
    rows = ii * n_t + jj
    neighbours = (
        (c_diag, rows),
        (c_in, (ii - 1) * n_t + jj),
        (c_out, (ii + 1) * n_t + jj),
        (c_prev, ii * n_t + (jj - 1) % n_t),
        (c_next, ii * n_t + (jj + 1) % n_t),
    )
    boundary = np.concatenate((np.arange(n_t), n_r * n_t + np.arange(n_t)))

    data = np.concatenate([np.broadcast_to(c, shape).ravel() for c, _ in neighbours] + [np.ones(boundary.size)])
    row_idx = np.concatenate([rows.ravel()] * len(neighbours) + [boundary])
    col_idx = np.concatenate([cols.ravel() for _, cols in neighbours] + [boundary])

    matrix = sp.coo_matrix((data, (row_idx, col_idx)), shape=(grid.size, grid.size)).tocsr()
    log.info(f"Assembled {grid.size} unknowns with {matrix.nnz} nonzeros on a {n_r + 1}x{n_t} grid")
    return DiscreteSystem(grid, matrix, lin_tol)


def _boundary_values(g: Coefficient, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    return sample_coefficient(g, x1, x2)


def solve_dirichlet(
    system: DiscreteSystem,
    rhs: Field,
    g_inner: Coefficient,
    g_outer: Coefficient,
) -> Field:
    """
    Solve L u = rhs in the annulus with u = g_inner on the inner ring and u = g_outer on the outer ring.

    Raises:
        ConfigurationError: If rhs lives on another grid.
        LinearSolverError: If the residual contract is missed.
    """
    grid = system.grid
    if rhs.grid != grid:
        raise ConfigurationError("right-hand side and system live on different grids")
    x1, x2 = grid.coordinates
    inner = _boundary_values(g_inner, x1[0], x2[0])
    outer = _boundary_values(g_outer, x1[-1], x2[-1])
    b = np.array(rhs.values)
    b[0] = inner
    b[-1] = outer
    x = system.solve(b.ravel()).reshape(grid.shape)
    # identity rows: pin boundary rings to the data exactly
    x[0] = inner
    x[-1] = outer
    return Field(grid, x)


def green_apply(system: DiscreteSystem, rhs: Field) -> ExtendedField:
    """Discrete Green operator: zero Dirichlet data, extended by zero into the hole."""
    return ExtendedField(solve_dirichlet(system, rhs, 0.0, 0.0))


def apply_operator(system: DiscreteSystem, u: Union[Field, ExtendedField]) -> np.ndarray:
    """L_h u on interior nodes, shape (n_r-1, n_theta)."""
    field = u.annulus if isinstance(u, ExtendedField) else u
    if field.grid != system.grid:
        raise ConfigurationError("field and system live on different grids")
    product = (system.matrix @ field.values.ravel()).reshape(system.grid.shape)
    return product[1:-1]
