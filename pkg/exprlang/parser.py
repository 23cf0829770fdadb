"""
Tokenizer and Pratt parser for the expression language.

Precedence, loosest first: ``+ -``, ``* /``, unary minus, ``^`` (right-associative).
"""
import math
import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence

from utils.errors import ArityError, ExprSyntaxError, UnknownIdentifierError
from utils.logger import setup_logger

from .nodes import INFIX_BP, PREFIX_MINUS_BP, BinaryOp, Call, Expr, Negate, Number, Variable

log = setup_logger("exprlang.parser")

# name -> number of arguments
FUNCTIONS = {
    "sin": 1,
    "cos": 1,
    "exp": 1,
    "ln": 1,
    "sqrt": 1,
    "abs": 1,
    "min": 2,
    "max": 2,
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", "op" or "end"
    text: str
    offset: int


def tokenize(source: str) -> List[Token]:
    """
    Split source text into tokens.

    Args:
        source: Expression text.

    Returns:
        List[Token]: Tokens terminated by an ``end`` token.

    Raises:
        ExprSyntaxError: On a character that starts no token.
    """
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class Parser:
    """Pratt parser over a token list, validating identifiers as it goes."""

    def __init__(self, tokens: Sequence[Token], variables: Iterable[str]):
        self._tokens = list(tokens)
        self._index = 0
        self._variables = frozenset(variables)

    @property
    def token(self) -> Token:
        return self._tokens[self._index]

    def advance(self) -> Token:
        token = self.token
        if token.kind != "end":
            self._index += 1
        return token

    def parse(self) -> Expr:
        tree = self.expression(0)
        if self.token.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.token.text!r}", self.token.offset)
        return tree

    def expression(self, rbp: int) -> Expr:
        left = self._prefix(self.advance())
        while self.token.kind == "op" and INFIX_BP.get(self.token.text, 0) > rbp:
            op = self.advance().text
            bp = INFIX_BP[op]
            # ^ binds to the right: parse its operand one notch looser
            right = self.expression(bp - 1 if op == "^" else bp)
            left = BinaryOp(op, left, right)
        return left

    def _prefix(self, token: Token) -> Expr:
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                raise ExprSyntaxError(f"number {token.text!r} is out of range", token.offset)
            return Number(value)
        if token.kind == "name":
            return self._name(token)
        if token.kind == "op" and token.text == "-":
            return Negate(self.expression(PREFIX_MINUS_BP))
        if token.kind == "op" and token.text == "(":
            inner = self.expression(0)
            self._expect(")")
            return inner
        if token.kind == "end":
            raise ExprSyntaxError("unexpected end of input", token.offset)
        raise ExprSyntaxError(f"unexpected {token.text!r}", token.offset)

    def _name(self, token: Token) -> Expr:
        is_call = self.token.kind == "op" and self.token.text == "("
        if is_call:
            if token.text not in FUNCTIONS:
                raise UnknownIdentifierError(token.text, token.offset)
            self.advance()
            args = [self.expression(0)]
            while self.token.kind == "op" and self.token.text == ",":
                self.advance()
                args.append(self.expression(0))
            self._expect(")")
            expected = FUNCTIONS[token.text]
            if len(args) != expected:
                raise ArityError(
                    f"{token.text}() takes {expected} argument(s), got {len(args)} "
                    f"at offset {token.offset}"
                )
            return Call(token.text, tuple(args))
        if token.text in FUNCTIONS:
            raise ExprSyntaxError(f"expected '(' after function {token.text!r}", self.token.offset)
        if token.text not in self._variables:
            raise UnknownIdentifierError(token.text, token.offset)
        return Variable(token.text)

    def _expect(self, text: str) -> None:
        if self.token.kind == "op" and self.token.text == text:
            self.advance()
            return
        found = self.token.text or "end of input"
        raise ExprSyntaxError(f"expected {text!r}, found {found!r}", self.token.offset)


def parse(source: str, variables: Iterable[str]) -> Expr:
    """Parse source text into a syntax tree over the declared variables."""
    tree = Parser(tokenize(source), variables).parse()
    log.debug(f"Parsed {source!r} -> {tree.to_source()}")
    return tree
