"""
Argument parsing and dispatch for the annulus-bk command line.
"""
import argparse
import sys
from typing import List, Optional

from radial_oracle import CASES
from utils.config import config
from utils.errors import NonConvergenceError, NumericalError, UsageError
from utils.logger import setup_logger

from .commands import aux_command, check_command, oracle_command, solve_command, sweep_command
from .output import format_value
from .settings import load_run_config

log = setup_logger("cli.main")


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as exceptions instead of exiting with status 2."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="annulus-bk",
        description="Parameter-dependent elliptic problems with functional boundary conditions on annuli.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, help="Command to run.")

    def add(name: str, handler, help_text: str) -> ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, help="Run configuration file.")
        sub.set_defaults(handler=handler)
        return sub

    solve = add("solve", solve_command, "Find one pair (u_rho, lambda_rho).")
    solve.add_argument("--rho", type=float, default=None, help="Sphere radius (default from [solver] rho).")
    solve.add_argument("--output", default="solution.csv", help="Field dump destination.")

    sweep = add("sweep", sweep_command, "Solve for a list of radii.")
    sweep.add_argument("--rhos", default=None, help="Comma-separated increasing radii.")
    sweep.add_argument("--jobs", type=int, default=1, help="Concurrent solves (disables warm starting).")
    sweep.add_argument("--output", default=None, help="CSV destination (default: standard output).")

    check = add("check", check_command, "Check the existence hypotheses for one radius.")
    check.add_argument("--rho", type=float, default=None, help="Sphere radius (default from [solver] rho).")

    aux = add("aux", aux_command, "Dump the auxiliary fields delta, gamma, phi and gamma_tilde.")
    aux.add_argument("--out-dir", default="aux_fields", help="Output directory.")

    oracle = add("oracle", oracle_command, "Compare the grid solver with radial closed forms.")
    oracle.add_argument("--case", choices=CASES, required=True, help="Radial case.")
    oracle.add_argument("--levels", type=int, default=2, help="Number of grid doublings.")
    oracle.add_argument("--output", default=None, help="CSV destination (default: standard output).")

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:]).

    Returns:
        int: 0 on success, 1 for usage or configuration errors, 2 for numerical failures.
    """
    problem = config.validate()
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return 1

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    try:
        cfg = load_run_config(args.config)
        return args.handler(args, cfg)
    except NumericalError as e:
        log.error(f"{args.command} failed: {e}")
        if config.DEBUG:
            log.exception("Traceback")
        print(f"numerical failure: {e}", file=sys.stderr)
        if isinstance(e, NonConvergenceError):
            for key, value in e.diagnostics.items():
                print(f"{key}={format_value(value)}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        if config.DEBUG:
            log.exception("Traceback")
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
