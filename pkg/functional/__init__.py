"""
Nonlocal machinery: deviated arguments, boundary functionals, the fixed-point
operator and the hypothesis check.
"""
from .deviation import DEVIATION_KINDS, DeviationMap
from .boundary import FUNCTIONAL_KINDS, BoundaryFunctional, eval_B
from .problem import ProblemSpec
from .operators import apply_T, nemytskii
from .hypotheses import (
    STRICT_TOL,
    HypothesisReport,
    LowerBoundViolation,
    check_hypotheses,
    suggested_b_rho,
)

__all__ = [
    "DEVIATION_KINDS",
    "DeviationMap",
    "FUNCTIONAL_KINDS",
    "BoundaryFunctional",
    "eval_B",
    "ProblemSpec",
    "apply_T",
    "nemytskii",
    "STRICT_TOL",
    "HypothesisReport",
    "LowerBoundViolation",
    "check_hypotheses",
    "suggested_b_rho",
]
