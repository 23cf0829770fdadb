"""
Tests for the annulus-bk command line: configuration parsing, subcommands,
output files and exit statuses.
"""
import io
import logging
import math
import os
import shutil
import sys
import tempfile
import textwrap
import unittest
from pathlib import Path
from unittest.mock import patch

import pandas as pd

import utils
from cli import FIELD_COLUMNS, SWEEP_COLUMNS, load_run_config, parse_rho_list, run
from utils.config import Config
from utils.errors import ConfigurationError
from utils.logger import setup_logger

E = math.e
SUP_U0 = ((E ** 2 - 1.0) * math.log((E ** 2 - 1.0) / 2.0) + 3.0 - E ** 2) / 8.0
CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

LINEAR_CONFIG = """
[domain]
r_inner = 1
r_outer = "exp(1)"

[grid]
n_r = 16
n_theta = 32

[problem]
f = 1
psi = 0
zeta = 1
B = zero

[solver]
rho = 1
rhos = 0.5, 1, 2
{solver_extra}

[hypotheses]
ell = 1
"""

EXPONENTIAL_CONFIG = """
[domain]
r_inner = 1
r_outer = "exp(1)"

[grid]
n_r = 16
n_theta = 32

[problem]
f = "(1 + x1^2) * exp(-u - v)"
psi = "x1^2 + x2^2"
sigma = scale
sigma_factor = 0.5
B = power_integral
B_exponent = 2
"""


def parse_summary(line):
    return dict(token.split("=", 1) for token in line.split())


class CliTestCase(unittest.TestCase):
    """Temporary directory plus helpers to run the command line."""

    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def write_config(self, text, name="run.ini"):
        path = self.tmp / name
        path.write_text(textwrap.dedent(text))
        return str(path)

    def linear_config(self, solver_extra=""):
        return self.write_config(LINEAR_CONFIG.format(solver_extra=solver_extra))

    def run_cli(self, *argv):
        with patch("sys.stdout", new_callable=io.StringIO) as out, \
                patch("sys.stderr", new_callable=io.StringIO) as err:
            status = run(list(argv))
        return status, out.getvalue(), err.getvalue()


class TestConfiguration(CliTestCase):
    """Tests for reading run configurations."""

    def test_shipped_configs_load(self):
        for path in sorted(CONFIG_DIR.glob("*.ini")):
            with self.subTest(config=path.name):
                cfg = load_run_config(path)
                self.assertGreater(cfg.domain.r_outer, cfg.domain.r_inner)

    def test_constant_expressions(self):
        cfg = load_run_config(self.linear_config())
        self.assertAlmostEqual(cfg.domain.r_outer, E, places=15)
        self.assertEqual(cfg.solver.rhos, [0.5, 1.0, 2.0])
        self.assertEqual(cfg.problem.B, "zero")

    def test_rho_list(self):
        self.assertEqual(parse_rho_list("0.5, 1,2"), [0.5, 1.0, 2.0])
        for text in ("", "1, 1", "2, 1", "-1, 1", "a, b"):
            with self.assertRaises(ValueError):
                parse_rho_list(text)

    def test_invalid_values_name_section_and_key(self):
        cases = {
            "[grid] n_r": LINEAR_CONFIG.format(solver_extra="").replace("n_r = 16", "n_r = 1"),
            "[problem] f": LINEAR_CONFIG.format(solver_extra="").replace("f = 1", "f = \"u +\""),
            "[solver] rhos": LINEAR_CONFIG.format(solver_extra="").replace("0.5, 1, 2", "2, 1"),
            "[solver] colour": LINEAR_CONFIG.format(solver_extra="colour = red"),
        }
        for expected, text in cases.items():
            with self.subTest(expected=expected):
                with self.assertRaises(ConfigurationError) as ctx:
                    load_run_config(self.write_config(text))
                self.assertIn(expected, str(ctx.exception))

    def test_missing_parameters(self):
        """sigma = scale needs sigma_factor; point evaluation needs B_point."""
        text = EXPONENTIAL_CONFIG.replace("sigma_factor = 0.5\n", "")
        with self.assertRaises(ConfigurationError):
            load_run_config(self.write_config(text))
        text = LINEAR_CONFIG.format(solver_extra="").replace("B = zero", "B = point_eval")
        with self.assertRaises(ConfigurationError):
            load_run_config(self.write_config(text))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_run_config(self.tmp / "absent.ini")


class TestCommands(CliTestCase):
    """Tests for the subcommands."""

    def test_solve_linear(self):
        """lambda_rho = rho / sup u0 for the torsion load."""
        output = self.tmp / "out" / "solution.csv"
        status, out, _ = self.run_cli(
            "solve", "--config", str(CONFIG_DIR / "torsion_linear.ini"), "--output", str(output)
        )
        self.assertEqual(status, 0)
        summary = parse_summary(out.strip())
        self.assertAlmostEqual(float(summary["lambda"]), 1.0 / SUP_U0, delta=5e-3)
        self.assertLessEqual(int(summary["iterations"]), 2)
        self.assertLessEqual(float(summary["fp_residual"]), 1e-12)
        self.assertIn("pde_defect", summary)

        frame = pd.read_csv(output)
        self.assertEqual(list(frame.columns), FIELD_COLUMNS)
        self.assertEqual(int((frame["i"] >= 0).sum()), 65 * 128)
        hole = frame[frame["i"] == -1]
        self.assertGreater(len(hole), 0)
        self.assertTrue((hole["r"] < 1.0 + 1e-12).all())
        self.assertTrue((hole["value"] == 0.0).all())

    def test_solve_is_deterministic(self):
        config_path = self.write_config(EXPONENTIAL_CONFIG)
        first, second = self.tmp / "a.csv", self.tmp / "b.csv"
        status_a, out_a, _ = self.run_cli("solve", "--config", config_path, "--rho", "1", "--output", str(first))
        status_b, out_b, _ = self.run_cli("solve", "--config", config_path, "--rho", "1", "--output", str(second))
        self.assertEqual((status_a, status_b), (0, 0))
        self.assertEqual(out_a, out_b)
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_sweep(self):
        status, out, _ = self.run_cli("sweep", "--config", self.linear_config())
        self.assertEqual(status, 0)
        frame = pd.read_csv(io.StringIO(out))
        self.assertEqual(list(frame.columns), SWEEP_COLUMNS)
        self.assertEqual(frame["rho"].tolist(), [0.5, 1.0, 2.0])
        self.assertTrue((frame["status"] == "converged").all())
        slopes = frame["lambda"] / frame["rho"]
        self.assertLess(slopes.max() - slopes.min(), 1e-9)

    def test_sweep_with_jobs(self):
        """Threads keep the input order."""
        output = self.tmp / "sweep.csv"
        status, _, _ = self.run_cli(
            "sweep", "--config", self.write_config(EXPONENTIAL_CONFIG),
            "--rhos", "0.5,1,2", "--jobs", "2", "--output", str(output),
        )
        self.assertEqual(status, 0)
        frame = pd.read_csv(output)
        self.assertEqual(frame["rho"].tolist(), [0.5, 1.0, 2.0])
        self.assertTrue((frame["lambda"] > 0).all())

    def test_sweep_failures_exit_two(self):
        status, out, err = self.run_cli("sweep", "--config", self.linear_config("max_iter = 1"))
        self.assertEqual(status, 2)
        frame = pd.read_csv(io.StringIO(out))
        self.assertTrue((frame["status"] == "failed").all())
        self.assertIn("failed", err)

    def test_check_exponential(self):
        """d_rho = e^-2(rho + 1) sup u0 for ell = exp(-2 (rho + 1)), at every radius."""
        config_path = str(CONFIG_DIR / "annulus_exponential.ini")
        for rho in (0.5, 1.0, 2.0):
            with self.subTest(rho=rho):
                status, out, _ = self.run_cli("check", "--config", config_path, "--rho", str(rho))
                self.assertEqual(status, 0)
                report = dict(line.split("=", 1) for line in out.strip().splitlines())
                expected = math.exp(-2.0 * (rho + 1.0)) * SUP_U0
                self.assertLess(abs(float(report["d_rho"]) - expected) / expected, 1e-3)
                self.assertEqual(report["satisfied"], "true")
                self.assertEqual(report["lower_bound_holds"], "true")
                self.assertEqual(report["first_violation"], "none")
                if rho == 1.0:
                    self.assertAlmostEqual(float(report["d_rho"]), 6.94e-3, delta=1e-5)

    def test_check_automatic_b_rho(self):
        """b_rho = auto adds B[phi] gamma to the lower solution, raising d_rho from about 7e-3 to about B[phi]."""
        results = {}
        for b_rho in ("0", "auto"):
            text = EXPONENTIAL_CONFIG + f'\n[hypotheses]\nell = "exp(-2*(rho + 1))"\nb_rho = {b_rho}\n'
            status, out, _ = self.run_cli("check", "--config", self.write_config(text), "--rho", "1")
            self.assertEqual(status, 0)
            report = dict(line.split("=", 1) for line in out.strip().splitlines())
            results[b_rho] = float(report["d_rho"])
        self.assertLess(results["0"], 1e-2)
        self.assertGreater(results["auto"], 4.0)

    def test_check_needs_lower_bound(self):
        text = EXPONENTIAL_CONFIG + "\n[solver]\nrho = 1\n"
        status, _, err = self.run_cli("check", "--config", self.write_config(text))
        self.assertEqual(status, 1)
        self.assertIn("ell", err)

    def test_aux(self):
        out_dir = self.tmp / "aux"
        status, out, _ = self.run_cli("aux", "--config", self.write_config(EXPONENTIAL_CONFIG), "--out-dir", str(out_dir))
        self.assertEqual(status, 0)
        self.assertEqual(sorted(p.name for p in out_dir.iterdir()),
                         ["delta.csv", "gamma.csv", "gamma_tilde.csv", "phi.csv"])
        self.assertEqual(len(out.strip().splitlines()), 4)
        gamma = pd.read_csv(out_dir / "gamma.csv")
        outer = gamma[gamma["i"] == 16]
        self.assertTrue((outer["value"] == 1.0).all())

    def test_oracle(self):
        status, out, _ = self.run_cli("oracle", "--config", self.linear_config(), "--case", "torsion")
        self.assertEqual(status, 0)
        table = pd.read_csv(io.StringIO(out))
        self.assertEqual(table["n_r"].tolist(), [16, 32])
        self.assertAlmostEqual(table["exact_sup"].iloc[0], SUP_U0, places=12)
        self.assertTrue(3.0 <= table["ratio"].iloc[1] <= 5.0)


class TestExitStatus(CliTestCase):
    """Tests for usage, configuration and numerical failures."""

    def test_usage_errors(self):
        config_path = self.linear_config()
        for argv in ([], ["solve"], ["frobnicate", "--config", config_path],
                     ["solve", "--config", config_path, "--rho", "-1"],
                     ["oracle", "--config", config_path, "--case", "bessel"],
                     ["oracle", "--config", config_path, "--case", "gamma", "--levels", "1"],
                     ["sweep", "--config", config_path, "--rhos", "2,1"]):
            with self.subTest(argv=argv):
                status, out, err = self.run_cli(*argv)
                self.assertEqual(status, 1)
                self.assertEqual(out, "")
                self.assertIn("error", err)

    def test_bad_config(self):
        text = LINEAR_CONFIG.format(solver_extra="").replace("n_r = 16", "n_r = 1")
        status, _, err = self.run_cli("solve", "--config", self.write_config(text))
        self.assertEqual(status, 1)
        self.assertIn("[grid] n_r", err)

    def test_non_convergence(self):
        status, _, err = self.run_cli(
            "solve", "--config", self.linear_config("max_iter = 1"), "--output", str(self.tmp / "u.csv")
        )
        self.assertEqual(status, 2)
        self.assertIn("iterations=1", err)
        self.assertFalse(os.path.exists(self.tmp / "u.csv"))

    def test_expression_domain_error_exits_two(self):
        text = LINEAR_CONFIG.format(solver_extra="").replace("f = 1", 'f = "1/(u - v)"')
        status, out, err = self.run_cli("solve", "--config", self.write_config(text))
        self.assertEqual(status, 2)
        self.assertEqual(out, "")
        self.assertIn("division by zero", err)

    def test_invalid_environment(self):
        with patch.object(Config, "MAX_ITER", 0):
            status, _, err = self.run_cli("solve", "--config", self.linear_config())
        self.assertEqual(status, 1)
        self.assertIn("ANNULUS_MAX_ITER", err)

    def test_help(self):
        status, out, _ = self.run_cli("--help")
        self.assertEqual(status, 0)
        self.assertIn("solve", out)


class TestLogging(unittest.TestCase):
    """Tests for the shared logger setup."""

    def test_setup_logger(self):
        """Repeated setup keeps a single stderr handler at the requested level."""
        first = setup_logger("annulus_bk.test_logging", "DEBUG")
        second = setup_logger("annulus_bk.test_logging", "WARNING")
        self.assertIs(first, second)
        self.assertEqual(len(second.handlers), 1)
        self.assertIs(second.handlers[0].stream, sys.stderr)
        self.assertEqual(second.level, logging.WARNING)
        self.assertFalse(second.propagate)

    def test_package_exports(self):
        self.assertEqual(utils.__all__, ["config", "setup_logger"])
        self.assertIs(utils.setup_logger, setup_logger)


if __name__ == "__main__":
    unittest.main()
