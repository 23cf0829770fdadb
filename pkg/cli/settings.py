"""
Run configuration files.

A configuration is a line-based file of ``[section]`` headers and
``key = value`` pairs; ``#`` starts a comment. Expressions may be quoted.
Numeric fields accept a number or a constant expression such as ``exp(1)``.

    [domain]     r_inner, r_outer
    [grid]       n_r, n_theta, n_r_hole (optional)
    [operator]   mu, drift1, drift2, potential (over x1, x2), mu_floor
    [problem]    f (over x1, x2, u, v), psi, zeta,
                 sigma = identity | scale | rotate | constant | expression
                   with sigma_factor | sigma_angle | sigma_point | sigma1, sigma2,
                 B = power_integral | point_eval | linear_integral | zero
                   with B_exponent, B_weight, B_point
    [solver]     rho, rhos, tol, max_iter, damping, initial_guess, warm_start
    [hypotheses] ell (over x1, x2, rho), b_rho (number or auto), lattice
"""
import configparser
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from exprlang import compile_expr
from utils.config import config
from utils.errors import ConfigurationError, ExprError

XY = ("x1", "x2")
F_VARIABLES = ("x1", "x2", "u", "v")
ELL_VARIABLES = ("x1", "x2", "rho")


def _unquote(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1].strip()
    return text


def _number(value: Any) -> Any:
    """A number, or the value of a constant expression."""
    if not isinstance(value, str):
        return value
    text = _unquote(value)
    try:
        return float(text)
    except ValueError:
        pass
    try:
        result = compile_expr(text, ())()
    except ExprError as e:
        raise ValueError(f"not a number or constant expression: {text!r} ({e})") from e
    if not math.isfinite(result):
        raise ValueError(f"{text!r} evaluates to {result}")
    return result


def _expression(value: Any, variables: Sequence[str]) -> Any:
    if not isinstance(value, str):
        return value
    text = _unquote(value)
    try:
        compile_expr(text, variables)
    except ExprError as e:
        raise ValueError(str(e)) from e
    return text


def _point(value: Any) -> Any:
    if not isinstance(value, str):
        return value
    parts = _unquote(value).split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated coordinates, got {value!r}")
    return tuple(_number(part) for part in parts)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DomainSection(_Section):
    r_inner: float
    r_outer: float

    @field_validator("r_inner", "r_outer", mode="before")
    @classmethod
    def _constant(cls, value):
        return _number(value)

    @model_validator(mode="after")
    def _ordered(self):
        if not (math.isfinite(self.r_outer) and 0.0 < self.r_inner < self.r_outer):
            raise ValueError(f"need 0 < r_inner < r_outer, got {self.r_inner} and {self.r_outer}")
        return self


class GridSection(_Section):
    n_r: int = Field(ge=2)
    n_theta: int = Field(ge=8)
    n_r_hole: Optional[int] = Field(default=None, ge=1)


class OperatorSection(_Section):
    mu: str = "1"
    drift1: str = "0"
    drift2: str = "0"
    potential: str = "0"
    mu_floor: float = Field(default=1e-8, gt=0)

    @field_validator("mu", "drift1", "drift2", "potential", mode="before")
    @classmethod
    def _compiles(cls, value):
        return _expression(value, XY)


SigmaKind = Literal["identity", "scale", "rotate", "constant", "expression"]
FunctionalKind = Literal["power_integral", "point_eval", "linear_integral", "zero"]


class ProblemSection(_Section):
    f: str
    psi: str = "0"
    zeta: str = "1"
    sigma: SigmaKind = "identity"
    sigma_factor: Optional[float] = None
    sigma_angle: Optional[float] = None
    sigma_point: Optional[Tuple[float, float]] = None
    sigma1: Optional[str] = None
    sigma2: Optional[str] = None
    B: FunctionalKind = "zero"
    B_exponent: float = 1.0
    B_weight: str = "1"
    B_point: Optional[Tuple[float, float]] = None

    @field_validator("f", mode="before")
    @classmethod
    def _f_compiles(cls, value):
        return _expression(value, F_VARIABLES)

    @field_validator("psi", "zeta", "sigma1", "sigma2", "B_weight", mode="before")
    @classmethod
    def _xy_compiles(cls, value):
        return _expression(value, XY)

    @field_validator("sigma", "B", mode="before")
    @classmethod
    def _kind(cls, value):
        return _unquote(value) if isinstance(value, str) else value

    @field_validator("sigma_factor", "sigma_angle", "B_exponent", mode="before")
    @classmethod
    def _constant(cls, value):
        return _number(value)

    @field_validator("sigma_point", "B_point", mode="before")
    @classmethod
    def _coordinates(cls, value):
        return _point(value)

    @model_validator(mode="after")
    def _parameters_present(self):
        required = {
            "scale": ("sigma_factor",),
            "rotate": ("sigma_angle",),
            "constant": ("sigma_point",),
            "expression": ("sigma1", "sigma2"),
        }.get(self.sigma, ())
        missing = [name for name in required if getattr(self, name) is None]
        if self.B == "point_eval" and self.B_point is None:
            missing.append("B_point")
        if missing:
            raise ValueError(f"sigma={self.sigma}, B={self.B} also need {', '.join(missing)}")
        return self


class SolverSection(_Section):
    rho: Optional[float] = Field(default=None, gt=0)
    rhos: Optional[List[float]] = None
    tol: float = Field(default_factory=lambda: config.SOLVER_TOL, gt=0)
    max_iter: int = Field(default_factory=lambda: config.MAX_ITER, ge=1)
    damping: float = Field(default=1.0, gt=0, le=1)
    initial_guess: Literal["gamma_tilde_scaled", "constant_shell"] = "gamma_tilde_scaled"
    warm_start: bool = True

    @field_validator("rho", mode="before")
    @classmethod
    def _constant(cls, value):
        return _number(value)

    @field_validator("rhos", mode="before")
    @classmethod
    def _split(cls, value):
        return parse_rho_list(value) if isinstance(value, str) else value

    @field_validator("rhos")
    @classmethod
    def _increasing(cls, value):
        if value is not None:
            _check_increasing(value)
        return value


class HypothesesSection(_Section):
    ell: Optional[str] = None
    b_rho: Union[Literal["auto"], float] = 0.0
    lattice: Optional[int] = Field(default=None, ge=2)

    @field_validator("ell", mode="before")
    @classmethod
    def _compiles(cls, value):
        return _expression(value, ELL_VARIABLES)

    @field_validator("b_rho", mode="before")
    @classmethod
    def _auto_or_number(cls, value):
        if isinstance(value, str) and _unquote(value).lower() == "auto":
            return "auto"
        value = _number(value)
        if isinstance(value, (int, float)) and not value >= 0:
            raise ValueError(f"b_rho must be nonnegative, got {value}")
        return value


class RunConfig(_Section):
    domain: DomainSection
    grid: GridSection
    operator: OperatorSection = Field(default_factory=OperatorSection)
    problem: ProblemSection
    solver: SolverSection = Field(default_factory=SolverSection)
    hypotheses: HypothesesSection = Field(default_factory=HypothesesSection)


def _check_increasing(values: Sequence[float]) -> None:
    if not values:
        raise ValueError("rho list is empty")
    if not all(value > 0 for value in values):
        raise ValueError(f"rho values must be positive, got {list(values)}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"rho values must be strictly increasing, got {list(values)}")


def parse_rho_list(text: str) -> List[float]:
    """Parse "0.5, 1, 2" into a positive, strictly increasing list."""
    values = [_number(part) for part in _unquote(text).split(",") if part.strip()]
    _check_increasing(values)
    return [float(value) for value in values]


def _describe(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        loc = [str(part) for part in item["loc"]]
        section = f"[{loc[0]}]" if loc else "[config]"
        key = ".".join(loc[1:])
        message = item["msg"]
        lines.append(f"{section} {key}: {message}" if key else f"{section} {message}")
    return "; ".join(lines)


def parse_run_config(sections: Dict[str, Dict[str, str]], source: str = "<config>") -> RunConfig:
    """
    Validate raw section dictionaries.

    Raises:
        ConfigurationError: Naming every offending section and key.
    """
    try:
        return RunConfig.model_validate(sections)
    except ValidationError as e:
        raise ConfigurationError(f"{source}: {_describe(e)}") from None


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Read and validate a configuration file.

    Args:
        path: Configuration file.

    Returns:
        RunConfig: The validated configuration.

    Raises:
        ConfigurationError: If the file cannot be read, parsed or validated.
    """
    parser = configparser.ConfigParser(
        interpolation=None,
        comment_prefixes=("#", ";"),
        inline_comment_prefixes=("#",),
        default_section="__defaults__",
    )
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle, source=str(path))
    except OSError as e:
        raise ConfigurationError(f"cannot read config {path}: {e}") from None
    except (configparser.Error, UnicodeDecodeError) as e:
        raise ConfigurationError(f"{path}: {e}") from None
    sections = {
        name: {key: value for key, value in parser[name].items()}
        for name in parser.sections()
    }
    return parse_run_config(sections, source=str(path))
