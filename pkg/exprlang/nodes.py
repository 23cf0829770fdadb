"""
Syntax tree of the expression language.

Every node is an immutable dataclass, so structural equality is plain ``==``.
``to_source`` prints the fewest parentheses the parser needs to rebuild an
equal tree.
"""
import math
from dataclasses import dataclass
from typing import Tuple, Union

# Binding powers shared by the parser and the printer
INFIX_BP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
PREFIX_MINUS_BP = 25
ATOM_BP = 100


def binding_power(node: "Expr") -> int:
    if isinstance(node, BinaryOp):
        return INFIX_BP[node.op]
    if isinstance(node, Negate):
        return PREFIX_MINUS_BP
    return ATOM_BP


def _operand(node: "Expr", parenthesise: bool) -> str:
    text = node.to_source()
    return f"({text})" if parenthesise else text


@dataclass(frozen=True)
class Number:
    value: float

    def to_source(self) -> str:
        return repr(float(self.value))


@dataclass(frozen=True)
class Variable:
    name: str

    def to_source(self) -> str:
        return self.name


@dataclass(frozen=True)
class Negate:
    operand: "Expr"

    def to_source(self) -> str:
        inner = self.operand
        wrap = binding_power(inner) < PREFIX_MINUS_BP or isinstance(inner, Negate)
        return f"-{_operand(inner, wrap)}"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expr"
    right: "Expr"

    def to_source(self) -> str:
        bp = INFIX_BP[self.op]
        left_bp, right_bp = binding_power(self.left), binding_power(self.right)
        if self.op == "^":
            # right-associative
            wrap_left, wrap_right = left_bp <= bp, right_bp < bp
        else:
            wrap_left, wrap_right = left_bp < bp, right_bp <= bp
        # a negated right operand is always parenthesised
        wrap_right = wrap_right or isinstance(self.right, Negate)
        return f"{_operand(self.left, wrap_left)} {self.op} {_operand(self.right, wrap_right)}"


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Expr", ...]

    def to_source(self) -> str:
        inner = ", ".join(arg.to_source() for arg in self.args)
        return f"{self.name}({inner})"


Expr = Union[Number, Variable, Negate, BinaryOp, Call]


def variables_of(node: Expr) -> set:
    """Collect the variable names referenced by a tree."""
    if isinstance(node, Variable):
        return {node.name}
    if isinstance(node, Negate):
        return variables_of(node.operand)
    if isinstance(node, BinaryOp):
        return variables_of(node.left) | variables_of(node.right)
    if isinstance(node, Call):
        names = set()
        for arg in node.args:
            names |= variables_of(arg)
        return names
    return set()


def substitute(node: Expr, values: dict) -> Expr:
    """Replace variables by numeric literals; negative values become negations."""
    if isinstance(node, Variable):
        if node.name not in values:
            return node
        value = float(values[node.name])
        if math.copysign(1.0, value) < 0:
            return Negate(Number(-value))
        return Number(value)
    if isinstance(node, Negate):
        return Negate(substitute(node.operand, values))
    if isinstance(node, BinaryOp):
        return BinaryOp(node.op, substitute(node.left, values), substitute(node.right, values))
    if isinstance(node, Call):
        return Call(node.name, tuple(substitute(arg, values) for arg in node.args))
    return node
