"""
Exception hierarchy for the annulus-bk solver.

Input-family errors derive from ValueError and map to CLI exit status 1;
numerical-family errors derive from RuntimeError and map to exit status 2.
"""
from typing import Any, Dict, Optional, Tuple


class AnnulusError(Exception):
    """Base class for every error raised by this project."""


class ConfigurationError(AnnulusError, ValueError):
    """Invalid configuration: grid counts, mismatched grids, bad config files."""


class DomainViolationError(AnnulusError, ValueError):
    """A point lies outside the closed disk on which fields are defined."""


class FieldError(AnnulusError, ValueError):
    """A field violates its shape, finiteness or continuity invariants."""


class InputError(AnnulusError, ValueError):
    """An operation received data outside its documented range."""


class UsageError(AnnulusError, ValueError):
    """Bad command-line usage."""


class AssemblyError(AnnulusError, ValueError):
    """Coefficient invariant violated at a grid node during assembly."""

    def __init__(self, message: str, node: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.node = node


class ExprError(AnnulusError):
    """Base class for expression-language errors."""


class ExprSyntaxError(ExprError, ValueError):
    """Malformed expression source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message


class UnknownIdentifierError(ExprError, ValueError):
    """An identifier is neither a declared variable nor a known function."""

    def __init__(self, name: str, offset: int = -1):
        super().__init__(f"unknown identifier '{name}'")
        self.name = name
        self.offset = offset


class ArityError(ExprError, ValueError):
    """Wrong number of arguments in a call or an evaluation."""


class NumericalError(AnnulusError, RuntimeError):
    """Base class for numerical failures."""


class EvaluationDomainError(ExprError, NumericalError):
    """ln, sqrt or ^ evaluated outside their real domain."""


class LinearSolverError(NumericalError):
    """The sparse Dirichlet solve missed its residual contract."""

    def __init__(self, message: str, residual: float, relative_residual: Optional[float] = None):
        detail = f"residual {residual:.3e}"
        if relative_residual is not None:
            detail += f", relative residual {relative_residual:.3e}"
        super().__init__(f"{message} ({detail})")
        self.residual = residual
        self.relative_residual = relative_residual


class NumericalSchemeError(NumericalError):
    """A discrete maximum-principle or cone check failed beyond tolerance."""


class DegenerateOperatorError(NumericalError):
    """The fixed-point operator returned a zero iterate."""


class NonConvergenceError(NumericalError):
    """An iteration exhausted its budget; carries the last diagnostics."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
