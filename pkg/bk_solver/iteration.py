"""
Normalised fixed-point iteration for pairs (u_rho, lambda_rho):

    w = T(phi + v_k),  lambda_k = rho / |w|,
    v_{k+1} = rescale_rho((1 - damping) v_k + damping * lambda_k * w).

A fixed point v satisfies v = lambda T(phi + v) with |v| = rho.
"""
import math
from typing import Optional

import numpy as np

from elliptic import AuxSolutions
from functional import ProblemSpec, apply_T
from geometry import ExtendedField, Field, QuadratureRule, sup_diff, sup_norm
from utils.errors import (
    DegenerateOperatorError,
    FieldError,
    InputError,
    NonConvergenceError,
    NumericalSchemeError,
)
from utils.logger import setup_logger

from .options import SolverOptions
from .pair import SolutionPair

log = setup_logger("bk_solver.iteration")


def cone_tolerance(rho: float) -> float:
    return 1e-10 * (1.0 + rho)


def _rescaled(v: ExtendedField, rho: float, quadrature: QuadratureRule) -> ExtendedField:
    norm = sup_norm(v, quadrature)
    if not (math.isfinite(norm) and norm > 0):
        raise DegenerateOperatorError(f"cannot rescale a field of sup norm {norm} to rho={rho}")
    return v.scale(rho / norm)


def _constant_shell(spec: ProblemSpec, rho: float) -> ExtendedField:
    # rho away from the inner ring, linear down to 0 across the first ring interval
    grid = spec.grid
    ramp = np.minimum(1.0, (grid.r - grid.domain.r_inner) / grid.dr)
    values = rho * np.broadcast_to(ramp[:, None], grid.shape)
    return ExtendedField(Field(grid, values))


def initial_guess(spec: ProblemSpec, aux: AuxSolutions, rho: float, opts: SolverOptions) -> ExtendedField:
    """
    Starting point v0 with sup norm rho, zero on the hole and nonnegative.

    Raises:
        InputError: If a user-supplied guess is on another grid, nonzero on the
            hole, negative or identically zero.
    """
    guess = opts.initial_guess
    if isinstance(guess, ExtendedField):
        if guess.grid != spec.grid:
            raise InputError("initial guess lives on another grid")
        if not guess.hole_is_zero:
            raise InputError("initial guess must vanish on the hole")
        if guess.annulus.min() < -cone_tolerance(rho):
            raise InputError(f"initial guess is negative (min {guess.annulus.min():.3e})")
        if sup_norm(guess, spec.quadrature) == 0.0:
            raise InputError("initial guess is identically zero")
        clipped = ExtendedField(Field(spec.grid, np.maximum(guess.annulus.values, 0.0)))
        return _rescaled(clipped, rho, spec.quadrature)
    if guess == "gamma_tilde_scaled" and sup_norm(aux.gamma_tilde, spec.quadrature) > 0.0:
        return _rescaled(aux.gamma_tilde, rho, spec.quadrature)
    return _constant_shell(spec, rho)


def _clamp_to_cone(v: ExtendedField, rho: float, iteration: int) -> ExtendedField:
    lowest = v.annulus.min()
    if lowest >= 0.0:
        return v
    if lowest < -cone_tolerance(rho):
        raise NumericalSchemeError(
            f"iterate {iteration} leaves the cone: min(u - phi) = {lowest:.3e} < -{cone_tolerance(rho):.1e}"
        )
    return ExtendedField(Field(v.grid, np.maximum(v.annulus.values, 0.0)), v.hole_fn)


def solve_pair(
    spec: ProblemSpec,
    aux: AuxSolutions,
    rho: float,
    opts: Optional[SolverOptions] = None,
) -> SolutionPair:
    """
    Find u on the sphere |u - phi| = rho of the affine cone and lambda > 0
    with u = phi + lambda T(u).

    The returned u is the last iterate T was applied to, so fp_residual is
    exact for the reported pair. Several fixed points may exist; which one is
    found depends on the initial guess.

    Args:
        spec: Problem data.
        aux: Auxiliary solutions for spec.
        rho: Sphere radius, > 0.
        opts: Iteration options (defaults from config).

    Returns:
        SolutionPair: The pair with its diagnostics.

    Raises:
        InputError: For rho <= 0 or a bad user initial guess.
        DegenerateOperatorError: If T vanishes at an iterate.
        NonConvergenceError: If max_iter is exhausted; carries the last diagnostics.
        NumericalSchemeError: If an iterate leaves the cone beyond cone_tol.
    """
    if not (math.isfinite(rho) and rho > 0):
        raise InputError(f"rho must be positive, got {rho}")
    if opts is None:
        opts = SolverOptions()
    phi = aux.phi
    v = initial_guess(spec, aux, rho, opts)
    step = math.inf
    lam = math.nan
    fp_residual = math.nan

    for iteration in range(1, opts.max_iter + 1):
        u = phi + v
        w = apply_T(spec, aux, u)
        w_norm = sup_norm(w, spec.quadrature)
        if not w_norm > 0.0:
            raise DegenerateOperatorError(
                f"T(u) vanishes at iteration {iteration}; d_rho is numerically zero"
            )
        lam = rho / w_norm
        target = w.scale(lam)
        fp_residual = sup_diff(v, target, spec.quadrature)

        if opts.damping == 1.0:
            proposal = target
        else:
            proposal = v.scale(1.0 - opts.damping) + target.scale(opts.damping)
        try:
            next_v = _clamp_to_cone(_rescaled(proposal, rho, spec.quadrature), rho, iteration)
        except FieldError as e:
            raise NumericalSchemeError(f"iterate {iteration} is not a valid field: {e}") from e
        step = sup_diff(next_v, v, spec.quadrature)
        log.debug(f"rho={rho} iteration {iteration}: lambda={lam:.12g} step={step:.3e} fp={fp_residual:.3e}")

        if step <= opts.tol * rho:
            pair = SolutionPair(
                u=u,
                lam=lam,
                rho=float(rho),
                iterations=iteration,
                fp_residual=fp_residual,
                cone_violation=max(0.0, -v.annulus.min()),
                norm_deviation=abs(sup_norm(v, spec.quadrature) - rho),
            )
            log.info(f"rho={rho}: lambda={lam:.12g} after {iteration} iterations (fp_residual={fp_residual:.3e})")
            return pair
        v = next_v

    raise NonConvergenceError(
        f"no convergence for rho={rho} within {opts.max_iter} iterations (last step {step:.3e})",
        diagnostics={
            "rho": float(rho),
            "iterations": opts.max_iter,
            "lambda": lam,
            "step": step,
            "fp_residual": fp_residual,
        },
    )
