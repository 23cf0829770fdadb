"""
Turn a validated RunConfig into problem objects.
"""
from typing import Optional, Sequence

from bk_solver import SolverOptions
from elliptic import AuxSolutions, EllipticOperator, build_aux
from elliptic.operator import Coefficient
from exprlang import ScalarFunc, compile_expr
from functional import BoundaryFunctional, DeviationMap, ProblemSpec, suggested_b_rho
from geometry import AnnularDomain
from utils.errors import ConfigurationError

from .settings import ELL_VARIABLES, F_VARIABLES, XY, OperatorSection, ProblemSection, RunConfig


def coefficient(source: str, variables: Sequence[str] = XY) -> Coefficient:
    """Compile a coefficient; constant expressions become plain numbers."""
    func = compile_expr(source, variables)
    if func.is_constant:
        return func(*([0.0] * func.arity))
    return func


def build_domain(cfg: RunConfig) -> AnnularDomain:
    return AnnularDomain(cfg.domain.r_inner, cfg.domain.r_outer)


def build_operator(section: OperatorSection) -> EllipticOperator:
    return EllipticOperator(
        mu=coefficient(section.mu),
        drift=(coefficient(section.drift1), coefficient(section.drift2)),
        potential=coefficient(section.potential),
        mu_floor=section.mu_floor,
    )


def build_sigma(section: ProblemSection) -> DeviationMap:
    if section.sigma == "scale":
        return DeviationMap.scaled(section.sigma_factor)
    if section.sigma == "rotate":
        return DeviationMap.rotation(section.sigma_angle)
    if section.sigma == "constant":
        return DeviationMap.constant_point(section.sigma_point)
    if section.sigma == "expression":
        return DeviationMap.from_expressions(compile_expr(section.sigma1, XY), compile_expr(section.sigma2, XY))
    return DeviationMap.identity()


def build_functional(section: ProblemSection) -> BoundaryFunctional:
    if section.B == "power_integral":
        return BoundaryFunctional.power_integral(section.B_exponent, coefficient(section.B_weight))
    if section.B == "point_eval":
        return BoundaryFunctional.point_eval(section.B_point)
    if section.B == "linear_integral":
        return BoundaryFunctional.linear_integral(coefficient(section.B_weight))
    return BoundaryFunctional.zero()


def build_problem(cfg: RunConfig) -> ProblemSpec:
    problem = cfg.problem
    return ProblemSpec.build(
        domain=build_domain(cfg),
        n_r=cfg.grid.n_r,
        n_theta=cfg.grid.n_theta,
        operator=build_operator(cfg.operator),
        f=compile_expr(problem.f, F_VARIABLES),
        sigma=build_sigma(problem),
        psi=coefficient(problem.psi),
        zeta=coefficient(problem.zeta),
        B=build_functional(problem),
        n_r_hole=cfg.grid.n_r_hole,
    )


def build_auxiliary(spec: ProblemSpec) -> AuxSolutions:
    return build_aux(spec.operator, spec.grid, spec.psi, spec.zeta)


def solver_options(cfg: RunConfig, warm_start: Optional[bool] = None) -> SolverOptions:
    solver = cfg.solver
    return SolverOptions(
        tol=solver.tol,
        max_iter=solver.max_iter,
        damping=solver.damping,
        initial_guess=solver.initial_guess,
        warm_start=solver.warm_start if warm_start is None else warm_start,
    )


def lower_bound_for(cfg: RunConfig, rho: float) -> ScalarFunc:
    """ell with rho bound, as a function of (x1, x2)."""
    if cfg.hypotheses.ell is None:
        raise ConfigurationError("[hypotheses] ell is required for the hypothesis check")
    return compile_expr(cfg.hypotheses.ell, ELL_VARIABLES).bind(rho=rho)


def resolve_b_rho(cfg: RunConfig, spec: ProblemSpec, aux: AuxSolutions) -> float:
    if cfg.hypotheses.b_rho == "auto":
        return suggested_b_rho(spec, aux)
    return float(cfg.hypotheses.b_rho)
