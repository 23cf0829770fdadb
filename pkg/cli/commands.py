"""
Subcommand handlers. Each returns the process exit status.
"""
import argparse
import sys
from pathlib import Path

from bk_solver import residual_report, solve_pair, sweep
from functional import check_hypotheses
from radial_oracle import convergence_study
from utils.errors import UsageError
from utils.logger import setup_logger

from .builders import (
    build_auxiliary,
    build_domain,
    build_problem,
    lower_bound_for,
    resolve_b_rho,
    solver_options,
)
from .output import field_frame, format_value, print_report, sweep_frame, write_csv
from .settings import RunConfig, parse_rho_list

log = setup_logger("cli.commands")


def _single_rho(args: argparse.Namespace, cfg: RunConfig) -> float:
    if args.rho is not None:
        if not args.rho > 0:
            raise UsageError(f"--rho must be positive, got {args.rho}")
        return args.rho
    if cfg.solver.rho is None:
        raise UsageError("no rho given: pass --rho or set [solver] rho")
    return cfg.solver.rho


def solve_command(args: argparse.Namespace, cfg: RunConfig) -> int:
    """One pair: summary line on standard output, field dump to --output."""
    rho = _single_rho(args, cfg)
    spec = build_problem(cfg)
    aux = build_auxiliary(spec)
    pair = solve_pair(spec, aux, rho, solver_options(cfg))
    report = residual_report(spec, aux, pair)

    summary = {**pair.to_dict(), "pde_defect": report.pde_defect, "boundary_defect": report.boundary_defect}
    print(" ".join(f"{key}={format_value(value)}" for key, value in summary.items()))
    write_csv(field_frame(pair.u, spec.quadrature), args.output)
    log.info(f"Wrote solution field to {args.output}")
    return 0


def sweep_command(args: argparse.Namespace, cfg: RunConfig) -> int:
    """lambda(rho) table; exit status 2 when any rho failed."""
    if args.rhos is not None:
        try:
            rhos = parse_rho_list(args.rhos)
        except ValueError as e:
            raise UsageError(f"--rhos: {e}") from None
    elif cfg.solver.rhos is not None:
        rhos = cfg.solver.rhos
    else:
        raise UsageError("no rho list given: pass --rhos or set [solver] rhos")
    if args.jobs < 1:
        raise UsageError(f"--jobs must be at least 1, got {args.jobs}")

    spec = build_problem(cfg)
    aux = build_auxiliary(spec)
    # concurrent solves cannot warm-start from each other
    opts = solver_options(cfg, warm_start=False if args.jobs > 1 else None)
    results = sweep(spec, aux, rhos, opts, jobs=args.jobs)

    write_csv(sweep_frame(result.to_dict() for result in results), args.output)
    failed = [result for result in results if not result.converged]
    for result in failed:
        print(f"rho={format_value(result.rho)} failed: {result.error}", file=sys.stderr)
    return 2 if failed else 0


def check_command(args: argparse.Namespace, cfg: RunConfig) -> int:
    """Hypothesis report as key=value lines."""
    rho = _single_rho(args, cfg)
    spec = build_problem(cfg)
    aux = build_auxiliary(spec)
    ell = lower_bound_for(cfg, rho)
    report = check_hypotheses(spec, aux, rho, ell, resolve_b_rho(cfg, spec, aux), lattice=cfg.hypotheses.lattice)
    print_report({"ell": ell.to_source(), **report.to_dict()})
    return 0


def aux_command(args: argparse.Namespace, cfg: RunConfig) -> int:
    """Dump delta, gamma, phi and gamma_tilde into --out-dir."""
    spec = build_problem(cfg)
    aux = build_auxiliary(spec)
    out_dir = Path(args.out_dir)
    fields = {
        "delta": aux.delta,
        "gamma": aux.gamma,
        "phi": aux.phi,
        "gamma_tilde": aux.gamma_tilde,
    }
    for name, values in fields.items():
        path = out_dir / f"{name}.csv"
        write_csv(field_frame(values, spec.quadrature), path)
        print(f"{name}={path}")
    return 0


def oracle_command(args: argparse.Namespace, cfg: RunConfig) -> int:
    """Closed form against the 2D solver on successively doubled grids."""
    if args.levels < 2:
        raise UsageError(f"--levels must be at least 2, got {args.levels}")
    resolutions = [
        (cfg.grid.n_r * 2 ** level, cfg.grid.n_theta * 2 ** level) for level in range(args.levels)
    ]
    table = convergence_study(build_domain(cfg), args.case, resolutions)
    write_csv(table, args.output)
    return 0
