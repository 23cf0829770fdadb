"""
Tests for deviations, boundary functionals, the fixed-point operator and the
hypothesis check.
"""
import math
import unittest

import numpy as np

from elliptic import EllipticOperator, build_aux, green_apply
from exprlang import compile_expr
from functional import (
    BoundaryFunctional,
    DeviationMap,
    ProblemSpec,
    apply_T,
    check_hypotheses,
    eval_B,
    nemytskii,
    suggested_b_rho,
)
from geometry import AnnularDomain, ExtendedField, Field, sup_diff, sup_norm
from utils.errors import ConfigurationError, DomainViolationError, InputError

E = math.e
XY = ("x1", "x2")
F_VARS = ("x1", "x2", "u", "v")
SUP_U0 = ((E ** 2 - 1.0) * math.log((E ** 2 - 1.0) / 2.0) + 3.0 - E ** 2) / 8.0


def exponential_problem(n_r=32, n_theta=64, B=None, sigma=None, f="(1+x1^2)*exp(-u-v)"):
    return ProblemSpec.build(
        domain=AnnularDomain(1.0, E),
        n_r=n_r,
        n_theta=n_theta,
        operator=EllipticOperator.laplacian(),
        f=compile_expr(f, F_VARS),
        sigma=sigma or DeviationMap.scaled(0.5),
        psi=compile_expr("x1^2 + x2^2", XY),
        zeta=1.0,
        B=B or BoundaryFunctional.power_integral(2.0, 1.0),
    )


class TestDeviation(unittest.TestCase):
    """Tests for deviation maps."""

    def test_kinds(self):
        x1, x2 = np.array([2.0]), np.array([0.0])
        self.assertEqual(DeviationMap.identity()(x1, x2)[0][0], 2.0)
        self.assertEqual(DeviationMap.scaled(0.5)(x1, x2)[0][0], 1.0)
        y1, y2 = DeviationMap.rotation(math.pi / 2.0)(x1, x2)
        self.assertAlmostEqual(y1[0], 0.0, places=15)
        self.assertAlmostEqual(y2[0], 2.0, places=15)
        y1, y2 = DeviationMap.constant_point((0.3, -0.4))(x1, x2)
        self.assertEqual((y1[0], y2[0]), (0.3, -0.4))
        sigma = DeviationMap.from_expressions(compile_expr("x2", XY), compile_expr("-x1", XY))
        y1, y2 = sigma(x1, x2)
        self.assertEqual((y1[0], y2[0]), (0.0, -2.0))

    def test_invalid(self):
        with self.assertRaises(ConfigurationError):
            DeviationMap.scaled(1.5)
        with self.assertRaises(ConfigurationError):
            DeviationMap("mirror")

    def test_codomain_checked_at_setup(self):
        """A deviation leaving the disk is rejected when the problem is built."""
        with self.assertRaises(DomainViolationError):
            exponential_problem(sigma=DeviationMap.constant_point((5.0, 0.0)))
        with self.assertRaises(DomainViolationError):
            exponential_problem(
                sigma=DeviationMap.from_expressions(compile_expr("2*x1", XY), compile_expr("x2", XY))
            )


class TestProblem(unittest.TestCase):
    """Tests for problem validation."""

    def test_f_arity(self):
        with self.assertRaises(ConfigurationError):
            ProblemSpec.build(
                AnnularDomain(1.0, E), 8, 16, EllipticOperator.laplacian(),
                compile_expr("x1", XY), DeviationMap.identity(), 0.0, 1.0, BoundaryFunctional.zero(),
            )

    def test_point_eval_outside(self):
        with self.assertRaises(DomainViolationError):
            exponential_problem(B=BoundaryFunctional.point_eval((3.0, 0.0)))

    def test_power_exponent(self):
        with self.assertRaises(ConfigurationError):
            BoundaryFunctional.power_integral(0.5)


class TestOperators(unittest.TestCase):
    """Tests for the Nemytskii operator, B and T."""

    def setUp(self):
        self.spec = exponential_problem()
        self.aux = build_aux(self.spec.operator, self.spec.grid, self.spec.psi, self.spec.zeta)
        self.grid = self.spec.grid
        self.closed_phi = ExtendedField(
            Field.from_function(self.grid, lambda x1, x2: 1.0 - 0.5 * np.log(x1 ** 2 + x2 ** 2)),
            self.spec.psi,
        )

    def test_nemytskii_reads_deviated_point(self):
        """At nodes with r <= 2 the deviated argument falls in the hole."""
        values = nemytskii(self.spec, self.closed_phi).values
        r = self.grid.r
        x1, x2 = self.grid.coordinates
        for i in range(self.grid.n_r + 1):
            if r[i] > 2.0:
                continue
            expected = self.spec.f(x1[i, 0], x2[i, 0], 1.0 - math.log(r[i]), (r[i] / 2.0) ** 2)
            self.assertAlmostEqual(values[i, 0], expected, places=12)

    def test_nemytskii_formula_at_sample_point(self):
        """f((1.5, 0), 1 - ln 1.5, 0.5625) is about 1.022."""
        value = self.spec.f(1.5, 0.0, 1.0 - math.log(1.5), 0.5625)
        self.assertAlmostEqual(value, 3.25 * math.exp(-(1.0 - math.log(1.5)) - 0.5625), places=14)
        self.assertAlmostEqual(value, 1.022, places=3)

    def test_nemytskii_constant_field(self):
        """u = c everywhere gives (1 + x1^2) exp(-2c)."""
        c = 0.3
        u = ExtendedField(Field.constant(self.grid, c), lambda x1, x2: np.full(np.shape(x1), c))
        x1, _ = self.grid.coordinates
        np.testing.assert_allclose(nemytskii(self.spec, u).values, (1.0 + x1 ** 2) * math.exp(-2.0 * c), rtol=1e-14)

    def test_nemytskii_ignores_far_hole(self):
        """With sigma = identity the hole interior away from the rim is never read."""
        spec = exponential_problem(sigma=DeviationMap.identity())
        near = self.closed_phi
        far = ExtendedField(
            near.annulus,
            lambda x1, x2: np.where(x1 ** 2 + x2 ** 2 < 0.8, 17.0, spec.psi(x1, x2)),
        )
        np.testing.assert_array_equal(nemytskii(spec, near).values, nemytskii(spec, far).values)

    def test_eval_B(self):
        """Area, point evaluation and the square integral of phi."""
        one = ExtendedField(Field.constant(self.grid, 1.0), lambda x1, x2: np.ones(np.shape(x1)))
        q = self.spec.quadrature
        self.assertAlmostEqual(eval_B(BoundaryFunctional.power_integral(2.0), one, q), math.pi * E ** 2, places=11)
        point = BoundaryFunctional.point_eval((1.5, 0.0))
        self.assertAlmostEqual(eval_B(point, self.aux.phi, q), 1.0 - math.log(1.5), delta=1e-3)
        expected = math.pi / 3.0 + math.pi * (E ** 2 - 5.0) / 2.0
        value = eval_B(self.spec.B, self.aux.phi, q)
        self.assertLess(abs(value - expected) / expected, 1e-3)
        self.assertEqual(eval_B(BoundaryFunctional.zero(), self.aux.phi, q), 0.0)

    def test_power_integral_nonnegative(self):
        rng = np.random.default_rng(2)
        u = ExtendedField(Field(self.grid, np.vstack([np.zeros((1, self.grid.n_theta)), rng.normal(size=(self.grid.n_r, self.grid.n_theta))])))
        self.assertGreater(eval_B(self.spec.B, u, self.spec.quadrature), 0.0)
        self.assertEqual(eval_B(self.spec.B, ExtendedField.zeros(self.grid), self.spec.quadrature), 0.0)

    def test_T_of_constant_load(self):
        """f = 1 and B = 0 make T the torsion solution for every argument."""
        spec = exponential_problem(f="1", B=BoundaryFunctional.zero())
        aux = build_aux(spec.operator, spec.grid, spec.psi, spec.zeta)
        u0 = green_apply(aux.system, Field.constant(spec.grid, 1.0))
        self.assertEqual(sup_diff(apply_T(spec, aux, aux.phi), u0), 0.0)
        self.assertEqual(sup_diff(apply_T(spec, aux, ExtendedField.zeros(spec.grid) + aux.phi.scale(2.0)), u0), 0.0)

    def test_T_of_zero_load(self):
        """f = 0 with point evaluation gives gamma_tilde times u(eta)."""
        spec = exponential_problem(f="0", B=BoundaryFunctional.point_eval((1.5, 0.0)))
        aux = build_aux(spec.operator, spec.grid, spec.psi, spec.zeta)
        t = apply_T(spec, aux, aux.phi)
        scale = aux.phi.evaluate(1.5, 0.0)
        self.assertLess(sup_diff(t, aux.gamma_tilde.scale(scale)), 1e-12)

    def test_T_is_positive(self):
        """T(phi) is strictly positive inside and vanishes on the hole."""
        t = apply_T(self.spec, self.aux, self.aux.phi)
        self.assertTrue(t.hole_is_zero)
        self.assertGreater(t.annulus.values[1:-1].min(), 0.0)
        self.assertGreaterEqual(t.annulus.min(), -1e-10 * sup_norm(t))


class TestHypotheses(unittest.TestCase):
    """Tests for the existence-hypothesis check."""

    def setUp(self):
        self.spec = exponential_problem()
        self.aux = build_aux(self.spec.operator, self.spec.grid, self.spec.psi, self.spec.zeta)
        self.ell = compile_expr("exp(-2*(rho+1))", ("x1", "x2", "rho"))

    def test_example_d_rho(self):
        """d_rho = exp(-2 (rho + 1)) sup u0, about 6.94e-3 at rho = 1."""
        report = check_hypotheses(self.spec, self.aux, 1.0, self.ell.bind(rho=1.0), 0.0, lattice=8)
        self.assertAlmostEqual(report.d_rho, math.exp(-4.0) * SUP_U0, delta=1e-5)
        self.assertAlmostEqual(report.d_rho, 6.94e-3, delta=1e-5)
        self.assertTrue(report.satisfied)
        self.assertTrue(report.lower_bound_holds)
        self.assertIsNone(report.first_violation)
        self.assertEqual(report.samples, 64 * self.spec.grid.size)
        self.assertAlmostEqual(report.phi_sup, 1.0, places=12)

    def test_zero_bound(self):
        report = check_hypotheses(self.spec, self.aux, 1.0, 0.0, 0.0, lattice=4)
        self.assertEqual(report.d_rho, 0.0)
        self.assertFalse(report.satisfied)

    def test_monotone_in_b_rho(self):
        ell = self.ell.bind(rho=2.0)
        low = check_hypotheses(self.spec, self.aux, 2.0, ell, 0.0, lattice=4).d_rho
        high = check_hypotheses(self.spec, self.aux, 2.0, ell, 0.5, lattice=4).d_rho
        self.assertLessEqual(low, high)

    def test_violation_reported(self):
        """A lower bound above f is caught by sampling."""
        report = check_hypotheses(self.spec, self.aux, 1.0, 1.0, 0.0, lattice=4)
        self.assertFalse(report.lower_bound_holds)
        self.assertIsNotNone(report.first_violation)
        self.assertLess(report.first_violation.f_value, 1.0)
        self.assertIn("first_violation", report.to_dict())

    def test_invalid_input(self):
        with self.assertRaises(InputError):
            check_hypotheses(self.spec, self.aux, 0.0, 0.1, 0.0)
        with self.assertRaises(InputError):
            check_hypotheses(self.spec, self.aux, 1.0, 0.1, -1.0)
        with self.assertRaises(InputError):
            check_hypotheses(self.spec, self.aux, 1.0, compile_expr("x1", XY), 0.0)

    def test_suggested_b_rho(self):
        """For the square integral and phi >= 0 the bound is B[phi]."""
        suggestion = suggested_b_rho(self.spec, self.aux)
        self.assertAlmostEqual(suggestion, eval_B(self.spec.B, self.aux.phi, self.spec.quadrature), places=14)
        self.assertGreater(suggestion, 4.7)


if __name__ == "__main__":
    unittest.main()
