"""
Command-line interface: configuration files, subcommands and CSV output.
"""
from .settings import RunConfig, load_run_config, parse_rho_list, parse_run_config
from .builders import build_auxiliary, build_problem, solver_options
from .output import FIELD_COLUMNS, SWEEP_COLUMNS, field_frame, format_value, write_csv
from .main import build_parser, main, run

__all__ = [
    "RunConfig",
    "load_run_config",
    "parse_rho_list",
    "parse_run_config",
    "build_auxiliary",
    "build_problem",
    "solver_options",
    "FIELD_COLUMNS",
    "SWEEP_COLUMNS",
    "field_frame",
    "format_value",
    "write_csv",
    "build_parser",
    "main",
    "run",
]
