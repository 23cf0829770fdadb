"""
Arithmetic expression language for problem configuration.
"""
from .nodes import BinaryOp, Call, Expr, Negate, Number, Variable
from .parser import FUNCTIONS, parse, tokenize
from .compiler import ScalarFunc, compile_expr, constant, evaluate

__all__ = [
    "BinaryOp",
    "Call",
    "Expr",
    "Negate",
    "Number",
    "Variable",
    "FUNCTIONS",
    "parse",
    "tokenize",
    "ScalarFunc",
    "compile_expr",
    "constant",
    "evaluate",
]
