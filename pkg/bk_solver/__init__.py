"""
Pairs (u_rho, lambda_rho) on the sphere of the affine cone and rho-sweeps.
"""
from .options import INITIAL_GUESSES, SolverOptions
from .pair import ResidualReport, SolutionPair
from .iteration import cone_tolerance, initial_guess, solve_pair
from .sweep import SweepResult, sweep
from .residual import residual_report

__all__ = [
    "INITIAL_GUESSES",
    "SolverOptions",
    "ResidualReport",
    "SolutionPair",
    "cone_tolerance",
    "initial_guess",
    "solve_pair",
    "SweepResult",
    "sweep",
    "residual_report",
]
