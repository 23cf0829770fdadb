"""
Radial ground truth: closed-form harmonic and torsion profiles, their
suprema and a one-dimensional finite-difference cross-check.
"""
from .profiles import RadialProfile, harmonic_closed_form, radial_sup, torsion_closed_form
from .fd import RadialSamples, radial_fd_solve
from .study import CASES, closed_form_case, compare_with_grid, convergence_study

__all__ = [
    "RadialProfile",
    "harmonic_closed_form",
    "radial_sup",
    "torsion_closed_form",
    "RadialSamples",
    "radial_fd_solve",
    "CASES",
    "closed_form_case",
    "compare_with_grid",
    "convergence_study",
]
