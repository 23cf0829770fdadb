"""
Options of the normalised fixed-point iteration.
"""
import math
from dataclasses import dataclass, field
from typing import Union

from geometry import ExtendedField
from utils.config import config
from utils.errors import ConfigurationError

INITIAL_GUESSES = ("gamma_tilde_scaled", "constant_shell")


@dataclass(frozen=True, eq=False)
class SolverOptions:
    """
    Attributes:
        tol: Stop when the sup-norm step is at most tol * rho.
        max_iter: Iteration budget per solve.
        damping: Relaxation weight in (0, 1].
        initial_guess: A named strategy or a field v0 (zero on the hole, >= 0),
            rescaled to sup norm rho.
        warm_start: In sweeps, start each rho from the previous solution.
    """

    tol: float = field(default_factory=lambda: config.SOLVER_TOL)
    max_iter: int = field(default_factory=lambda: config.MAX_ITER)
    damping: float = 1.0
    initial_guess: Union[str, ExtendedField] = "gamma_tilde_scaled"
    warm_start: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise ConfigurationError(f"tol must be positive, got {self.tol}")
        if not 0.0 < self.damping <= 1.0:
            raise ConfigurationError(f"damping must lie in (0, 1], got {self.damping}")
        if self.max_iter < 1:
            raise ConfigurationError(f"max_iter must be at least 1, got {self.max_iter}")
        if isinstance(self.initial_guess, str) and self.initial_guess not in INITIAL_GUESSES:
            raise ConfigurationError(
                f"unknown initial guess {self.initial_guess!r}; expected one of {INITIAL_GUESSES} or a field"
            )

    def with_initial_guess(self, guess: Union[str, ExtendedField]) -> "SolverOptions":
        return SolverOptions(self.tol, self.max_iter, self.damping, guess, self.warm_start)
