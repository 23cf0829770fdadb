"""
Tests for the expression language.
"""
import math
import unittest

import numpy as np

from exprlang import (
    BinaryOp,
    Call,
    FUNCTIONS,
    Negate,
    Number,
    Variable,
    compile_expr,
    constant,
    evaluate,
    parse,
)
from utils.errors import (
    ArityError,
    EvaluationDomainError,
    ExprError,
    ExprSyntaxError,
    NumericalError,
    UnknownIdentifierError,
)

XY = ("x1", "x2")
F_VARS = ("x1", "x2", "u", "v")


def random_tree(rng: np.random.Generator, depth: int):
    """Random syntax tree over F_VARS with nonnegative literals."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Variable(F_VARS[rng.integers(len(F_VARS))])
        if rng.random() < 0.5:
            return Number(float(rng.integers(0, 100)))
        return Number(float(rng.random() * 10.0 ** rng.integers(-6, 6)))
    choice = rng.integers(3)
    if choice == 0:
        return Negate(random_tree(rng, depth - 1))
    if choice == 1:
        op = "+-*/^"[rng.integers(5)]
        return BinaryOp(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    name = sorted(FUNCTIONS)[rng.integers(len(FUNCTIONS))]
    return Call(name, tuple(random_tree(rng, depth - 1) for _ in range(FUNCTIONS[name])))


class TestCompile(unittest.TestCase):
    """Tests for parsing and compilation."""

    def test_example_nonlinearity(self):
        """The exponential nonlinearity compiles over (x1, x2, u, v)."""
        f = compile_expr("(1+x1^2)*exp(-u-v)", F_VARS)
        self.assertEqual(f.arity, 4)
        self.assertEqual(evaluate(f, [0.0, 0.0, 0.0, 0.0]), 1.0)
        self.assertAlmostEqual(f(1.0, 0.0, 0.5, 0.5), 2.0 * math.exp(-1.0), places=15)

    def test_syntax_error_offset(self):
        """A dangling operator reports its offset."""
        with self.assertRaises(ExprSyntaxError) as ctx:
            compile_expr("1+*2", XY)
        self.assertEqual(ctx.exception.offset, 2)
        self.assertIn("offset 2", str(ctx.exception))

    def test_unknown_identifier(self):
        """Undeclared variables are named in the error."""
        with self.assertRaises(UnknownIdentifierError) as ctx:
            compile_expr("x3+1", XY)
        self.assertEqual(ctx.exception.name, "x3")
        self.assertEqual(ctx.exception.offset, 0)

    def test_unknown_function(self):
        with self.assertRaises(UnknownIdentifierError):
            compile_expr("tan(x1)", XY)

    def test_wrong_arity(self):
        """Calls with the wrong number of arguments are rejected."""
        with self.assertRaises(ArityError):
            compile_expr("min(x1)", XY)
        with self.assertRaises(ArityError):
            compile_expr("exp(x1, x2)", XY)

    def test_malformed_inputs(self):
        """Each malformed source raises a syntax error."""
        for source in ["", "(x1", "x1)", "2 3", "exp", "x1 $ 2", "1e", "max(x1,)"]:
            with self.subTest(source=source):
                with self.assertRaises(ExprError):
                    compile_expr(source, XY)

    def test_overflowing_literal(self):
        with self.assertRaises(ExprSyntaxError) as ctx:
            compile_expr("1 + 1e400", XY)
        self.assertEqual(ctx.exception.offset, 4)

    def test_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            compile_expr("1+", XY)


class TestEvaluate(unittest.TestCase):
    """Tests for evaluation."""

    def test_precedence(self):
        """Standard precedence with right-associative powers."""
        self.assertEqual(compile_expr("2+3*4", [])(), 14.0)
        self.assertEqual(compile_expr("-2^2", [])(), -4.0)
        self.assertEqual(compile_expr("2^3^2", [])(), 512.0)
        self.assertEqual(compile_expr("8/2/2", [])(), 2.0)
        self.assertEqual(compile_expr("2*-3", [])(), -6.0)
        self.assertEqual(compile_expr("-(1-3)", [])(), 2.0)

    def test_harmonic_profile(self):
        """ln(r^2)/2 equals 1 on the circle of radius e."""
        gamma = compile_expr("ln(x1^2+x2^2)/2", XY)
        self.assertAlmostEqual(evaluate(gamma, [math.e, 0.0]), 1.0, places=15)

    def test_arithmetic(self):
        self.assertAlmostEqual(compile_expr("x1^2+x2^2", XY)(0.6, 0.8), 1.0, places=15)

    def test_functions(self):
        """Every built-in function evaluates like its math counterpart."""
        x = 0.7
        cases = {
            "sin(x1)": math.sin(x),
            "cos(x1)": math.cos(x),
            "exp(x1)": math.exp(x),
            "ln(x1)": math.log(x),
            "sqrt(x1)": math.sqrt(x),
            "abs(-x1)": x,
            "min(x1, x2)": x,
            "max(x1, x2)": 2.0,
        }
        for source, expected in cases.items():
            with self.subTest(source=source):
                self.assertAlmostEqual(compile_expr(source, XY)(x, 2.0), expected, places=15)

    def test_domain_errors(self):
        """ln, sqrt and fractional powers of negatives raise instead of returning NaN."""
        with self.assertRaises(EvaluationDomainError):
            compile_expr("ln(x1)", XY)(0.0, 1.0)
        with self.assertRaises(EvaluationDomainError):
            compile_expr("sqrt(x1)", XY)(-1.0, 1.0)
        with self.assertRaises(EvaluationDomainError):
            compile_expr("x1^0.5", XY)(-4.0, 1.0)
        self.assertEqual(compile_expr("x1^3", XY)(-2.0, 0.0), -8.0)

    def test_non_finite_results(self):
        """Division by zero, zero to a negative power and overflow raise, naming the operator."""
        cases = [
            ("x1/x2", (0.0, 0.0), "division by zero"),
            ("1/x1", (0.0, 1.0), "division by zero"),
            ("x1^(-1)", (0.0, 1.0), "zero raised to a negative power"),
            ("exp(1000)", (0.0, 0.0), "exp()"),
            ("x1 * 1e300", (1e300, 0.0), "'*'"),
        ]
        for source, args, reason in cases:
            with self.subTest(source=source):
                with self.assertRaises(EvaluationDomainError) as ctx:
                    compile_expr(source, XY)(*args)
                self.assertIn(reason, str(ctx.exception))
                self.assertIsInstance(ctx.exception, NumericalError)
        self.assertEqual(compile_expr("1/x1", XY)(4.0, 0.0), 0.25)

    def test_non_finite_arguments(self):
        f = compile_expr("x1 + x2", XY)
        with self.assertRaises(EvaluationDomainError):
            f(math.inf, 0.0)
        with self.assertRaises(EvaluationDomainError):
            f(np.array([0.0, math.nan]), 0.0)

    def test_domain_error_on_arrays(self):
        """One bad entry in an array fails the whole evaluation."""
        f = compile_expr("ln(x1)", XY)
        with self.assertRaises(EvaluationDomainError):
            f(np.array([1.0, 2.0, -1.0]), np.zeros(3))

    def test_arity_mismatch(self):
        f = compile_expr("x1+x2", XY)
        with self.assertRaises(ArityError):
            f(1.0)
        with self.assertRaises(ArityError):
            evaluate(f, [1.0, 2.0, 3.0])

    def test_vectorised_matches_scalar(self):
        """Array evaluation agrees with scalar evaluation element by element."""
        f = compile_expr("(1+x1^2)*exp(-u-v) + sin(x2)*max(u, v)", F_VARS)
        rng = np.random.default_rng(7)
        args = [rng.uniform(-2.0, 2.0, size=50) for _ in range(4)]
        vector = f(*args)
        self.assertEqual(vector.shape, (50,))
        scalars = [f(*(float(a[k]) for a in args)) for k in range(50)]
        np.testing.assert_allclose(vector, scalars, rtol=1e-14, atol=0.0)

    def test_broadcasting(self):
        """Scalars broadcast against arrays; constants fill the broadcast shape."""
        grid = np.ones((3, 4))
        self.assertEqual(compile_expr("x1 + 1", XY)(grid, 0.0).shape, (3, 4))
        self.assertEqual(compile_expr("2", XY)(grid, grid).shape, (3, 4))
        self.assertTrue(np.all(constant(5.0)(grid, grid) == 5.0))

    def test_deterministic(self):
        """Repeated evaluation is bit-identical."""
        f = compile_expr("exp(sin(x1)*x2)/(1+x1^2)", XY)
        first = f(0.123, 4.56)
        for _ in range(10):
            self.assertEqual(f(0.123, 4.56), first)


class TestBindAndPrint(unittest.TestCase):
    """Tests for binding and pretty-printing."""

    def test_bind(self):
        """Binding rho leaves a function of (x1, x2)."""
        ell = compile_expr("exp(-2*(rho+1))", ("x1", "x2", "rho"))
        bound = ell.bind(rho=1.0)
        self.assertEqual(bound.variables, XY)
        self.assertAlmostEqual(bound(0.0, 0.0), math.exp(-4.0), places=15)
        self.assertTrue(bound.is_constant)

    def test_bind_negative_value(self):
        """Negative constants survive the round trip through source text."""
        bound = compile_expr("x1*c", ("x1", "c")).bind(c=-2.5)
        self.assertEqual(bound(2.0), -5.0)
        self.assertEqual(parse(bound.to_source(), ["x1"]), bound.tree)

    def test_bind_unknown(self):
        with self.assertRaises(UnknownIdentifierError):
            compile_expr("x1", XY).bind(rho=1.0)

    def test_minimal_parentheses(self):
        """Only the parentheses the parser needs are printed."""
        cases = {
            "exp(-2*(rho+1))": "exp(-2.0 * (rho + 1.0))",
            "(1+x1^2)*exp(-u-v)": "(1.0 + x1 ^ 2.0) * exp(-u - v)",
            "2^3^2": "2.0 ^ 3.0 ^ 2.0",
            "(2^3)^2": "(2.0 ^ 3.0) ^ 2.0",
            "a-(b-c)": "a - (b - c)",
            "(a-b)-c": "a - b - c",
            "-(a+b)": "-(a + b)",
            "(-a)^2": "(-a) ^ 2.0",
            "-a^2": "-a ^ 2.0",
            "a*-b": "a * (-b)",
        }
        names = ("a", "b", "c", "u", "v", "x1", "rho")
        for source, expected in cases.items():
            with self.subTest(source=source):
                tree = parse(source, names)
                self.assertEqual(tree.to_source(), expected)
                self.assertEqual(parse(expected, names), tree)
        bound = compile_expr("exp(-2*(rho+1))", ("x1", "x2", "rho")).bind(rho=1.0)
        self.assertEqual(bound.to_source(), "exp(-2.0 * (1.0 + 1.0))")

    def test_round_trip_random(self):
        """Printing and re-parsing reproduces random trees exactly."""
        rng = np.random.default_rng(20240601)
        for _ in range(1200):
            tree = random_tree(rng, 5)
            source = tree.to_source()
            self.assertEqual(parse(source, F_VARS), tree, source)

    def test_round_trip_parsed(self):
        """Parsed sources survive a second print/parse cycle."""
        for source in ["(1+x1^2)*exp(-u-v)", "-2^2", "2^3^2", "min(u, -v) / sqrt(x1^2 + x2^2)"]:
            tree = parse(source, F_VARS)
            self.assertEqual(parse(tree.to_source(), F_VARS), tree)


if __name__ == "__main__":
    unittest.main()
