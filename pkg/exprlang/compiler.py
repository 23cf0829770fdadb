"""
Compilation of syntax trees into evaluable scalar functions.

Compiled functions evaluate on Python floats or numpy arrays alike. Domain
violations (ln, sqrt, division by zero, zero to a negative power) and
overflow raise EvaluationDomainError instead of producing NaN or inf.
"""
from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from utils.errors import ArityError, EvaluationDomainError, UnknownIdentifierError

from .nodes import BinaryOp, Call, Expr, Negate, Number, Variable, substitute, variables_of
from .parser import parse

ArrayLike = Union[float, np.ndarray]
Kernel = Callable[[Tuple[np.ndarray, ...]], np.ndarray]


def _ln(x: np.ndarray) -> np.ndarray:
    if np.any(x <= 0):
        raise EvaluationDomainError("ln of a nonpositive argument")
    return np.log(x)


def _sqrt(x: np.ndarray) -> np.ndarray:
    if np.any(x < 0):
        raise EvaluationDomainError("sqrt of a negative argument")
    return np.sqrt(x)


def _divide(numerator: np.ndarray, divisor: np.ndarray) -> np.ndarray:
    if np.any(divisor == 0):
        raise EvaluationDomainError("division by zero")
    return np.divide(numerator, divisor)


def _power(base: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    if np.any((base < 0) & (np.floor(exponent) != exponent)):
        raise EvaluationDomainError("negative base raised to a non-integer power")
    if np.any((base == 0) & (exponent < 0)):
        raise EvaluationDomainError("zero raised to a negative power")
    return np.power(base, exponent)


def _finite(label: str, value: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise EvaluationDomainError(f"{label} overflows to a non-finite value")
    return value


_UNARY = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "ln": _ln,
    "sqrt": _sqrt,
    "abs": np.abs,
}

_BINARY_CALLS = {
    "min": np.minimum,
    "max": np.maximum,
}

_OPERATORS = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": _divide,
    "^": _power,
}


def _build_kernel(node: Expr, slots: dict) -> Kernel:
    """Turn a tree into nested closures reading arguments by slot index."""
    if isinstance(node, Number):
        value = np.float64(node.value)
        return lambda env: value
    if isinstance(node, Variable):
        index = slots[node.name]
        return lambda env: env[index]
    if isinstance(node, Negate):
        inner = _build_kernel(node.operand, slots)
        return lambda env: np.negative(inner(env))
    if isinstance(node, BinaryOp):
        op = _OPERATORS[node.op]
        left = _build_kernel(node.left, slots)
        right = _build_kernel(node.right, slots)
        label = f"'{node.op}'"
        return lambda env: _finite(label, op(left(env), right(env)))
    if isinstance(node, Call):
        args = [_build_kernel(arg, slots) for arg in node.args]
        if node.name in _UNARY:
            fn = _UNARY[node.name]
            (arg,) = args
            label = f"{node.name}()"
            return lambda env: _finite(label, fn(arg(env)))
        fn = _BINARY_CALLS[node.name]
        first, second = args
        return lambda env: fn(first(env), second(env))
    raise TypeError(f"Unsupported node: {node!r}")


@dataclass(frozen=True)
class ScalarFunc:
    """
    A compiled expression together with its ordered variable list.

    Calling it with scalars returns a float; calling it with arrays broadcasts
    and returns a float64 array of the broadcast shape.
    """

    tree: Expr
    variables: Tuple[str, ...]
    source: str = ""
    _kernel: Kernel = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        unknown = variables_of(self.tree) - set(self.variables)
        if unknown:
            raise UnknownIdentifierError(sorted(unknown)[0])
        slots = {name: index for index, name in enumerate(self.variables)}
        object.__setattr__(self, "_kernel", _build_kernel(self.tree, slots))

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def is_constant(self) -> bool:
        return not variables_of(self.tree)

    def __call__(self, *args: ArrayLike) -> ArrayLike:
        if len(args) != self.arity:
            raise ArityError(
                f"expression over {self.variables} expects {self.arity} argument(s), got {len(args)}"
            )
        arrays = tuple(np.asarray(arg, dtype=np.float64) for arg in args)
        for name, array in zip(self.variables, arrays):
            if not np.all(np.isfinite(array)):
                raise EvaluationDomainError(f"non-finite value for variable {name}")
        try:
            with np.errstate(divide="ignore", over="ignore", invalid="ignore", under="ignore"):
                value = self._kernel(arrays)
        except EvaluationDomainError as e:
            raise EvaluationDomainError(f"{e} in {self.to_source()}") from None
        shape = np.broadcast_shapes(*(a.shape for a in arrays)) if arrays else ()
        if shape == ():
            return float(value)
        return np.array(np.broadcast_to(value, shape), dtype=np.float64)

    def bind(self, **values: float) -> "ScalarFunc":
        """
        Fix some variables to constants.

        Args:
            **values: Variable name to value.

        Returns:
            ScalarFunc: Function over the remaining variables, in their original order.
        """
        for name in values:
            if name not in self.variables:
                raise UnknownIdentifierError(name)
        remaining = tuple(name for name in self.variables if name not in values)
        tree = substitute(self.tree, values)
        return ScalarFunc(tree, remaining, tree.to_source())

    def to_source(self) -> str:
        return self.tree.to_source()


def compile_expr(source: str, variables: Sequence[str]) -> ScalarFunc:
    """
    Parse and compile an expression.

    Args:
        source: Expression text, e.g. ``"(1+x1^2)*exp(-u-v)"``.
        variables: Declared variable names in argument order.

    Returns:
        ScalarFunc: The evaluable function.

    Raises:
        ExprSyntaxError: Malformed source (carries the offset).
        UnknownIdentifierError: Undeclared variable or unknown function.
        ArityError: Function called with the wrong number of arguments.
    """
    tree = parse(source, variables)
    return ScalarFunc(tree, tuple(variables), source)


def constant(value: float, variables: Sequence[str] = ("x1", "x2")) -> ScalarFunc:
    """Constant function over the given variables."""
    tree = substitute(Variable("c"), {"c": value})
    return ScalarFunc(tree, tuple(variables), tree.to_source())


def evaluate(func: ScalarFunc, args: Sequence[ArrayLike]) -> ArrayLike:
    """Evaluate a compiled function on an argument list."""
    return func(*args)
