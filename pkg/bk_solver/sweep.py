"""
Sweeps over rho producing the lambda(rho) curve.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from elliptic import AuxSolutions
from functional import ProblemSpec
from utils.errors import AnnulusError, InputError
from utils.logger import setup_logger

from .iteration import solve_pair
from .options import SolverOptions
from .pair import SolutionPair

log = setup_logger("bk_solver.sweep")


@dataclass(frozen=True)
class SweepResult:
    """Outcome for one rho: a pair, or the error that stopped it."""

    rho: float
    pair: Optional[SolutionPair] = None
    error: Optional[str] = None

    @property
    def converged(self) -> bool:
        return self.pair is not None

    def to_dict(self) -> Dict[str, Any]:
        if self.pair is None:
            return {
                "rho": self.rho,
                "lambda": float("nan"),
                "iterations": 0,
                "fp_residual": float("nan"),
                "status": "failed",
                "error": self.error,
            }
        row = self.pair.to_dict()
        row["status"] = "converged"
        row["error"] = None
        return row


def _check_rhos(rho_values: Sequence[float]) -> List[float]:
    rhos = [float(rho) for rho in rho_values]
    if not rhos:
        raise InputError("rho list is empty")
    if not all(rho > 0 for rho in rhos):
        raise InputError(f"rho values must be positive, got {rhos}")
    if any(b <= a for a, b in zip(rhos, rhos[1:])):
        raise InputError(f"rho values must be strictly increasing, got {rhos}")
    return rhos


def _solve_one(spec: ProblemSpec, aux: AuxSolutions, rho: float, opts: SolverOptions) -> SweepResult:
    try:
        return SweepResult(rho, pair=solve_pair(spec, aux, rho, opts))
    except AnnulusError as e:
        log.warning(f"rho={rho} failed: {e}")
        return SweepResult(rho, error=f"{type(e).__name__}: {e}")


def sweep(
    spec: ProblemSpec,
    aux: AuxSolutions,
    rho_values: Sequence[float],
    opts: Optional[SolverOptions] = None,
    jobs: int = 1,
) -> List[SweepResult]:
    """
    Solve for each rho in turn; failures are recorded and the sweep continues.

    With warm starting (the default) each rho starts from the previous
    converged u - phi, rescaled by solve_pair to the new radius. Setting
    opts.warm_start=False lets jobs > 1 solve the radii concurrently.

    Args:
        spec: Problem data.
        aux: Auxiliary solutions for spec.
        rho_values: Positive, strictly increasing radii.
        opts: Iteration options.
        jobs: Worker threads; only used without warm starting.

    Returns:
        List[SweepResult]: One result per rho, in input order.

    Raises:
        InputError: If rho_values is empty, not positive or not increasing.
    """
    rhos = _check_rhos(rho_values)
    if opts is None:
        opts = SolverOptions()
    if jobs < 1:
        raise InputError(f"jobs must be at least 1, got {jobs}")

    if not opts.warm_start:
        if jobs == 1:
            return [_solve_one(spec, aux, rho, opts) for rho in rhos]
        log.info(f"Sweeping {len(rhos)} radii on {jobs} threads")
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(lambda rho: _solve_one(spec, aux, rho, opts), rhos))

    if jobs > 1:
        log.warning("Warm starting is sequential; ignoring jobs > 1")
    results = []
    current = opts
    for rho in rhos:
        result = _solve_one(spec, aux, rho, current)
        if result.converged:
            current = opts.with_initial_guess(result.pair.u - aux.phi)
        results.append(result)
    return results
