"""
Closed-form radial solutions of -u'' - u'/r = c on [R1, R2]:

    u(r) = -c r^2 / 4 + A ln r + B.

c = 0 gives the harmonic profiles A ln r + B.
"""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from utils.errors import ConfigurationError


def _check_interval(r_inner: float, r_outer: float) -> None:
    if not (math.isfinite(r_inner) and math.isfinite(r_outer) and 0.0 < r_inner < r_outer):
        raise ConfigurationError(f"need 0 < R1 < R2, got R1={r_inner}, R2={r_outer}")


@dataclass(frozen=True)
class RadialProfile:
    """
    Attributes:
        kind: "harmonic" or "torsion".
        r_inner: R1 > 0.
        r_outer: R2 > R1.
        load: Constant c of the torsion kind (0 for harmonic).
        log_coeff: Coefficient A of ln r.
        constant: Additive constant B.
    """

    kind: str
    r_inner: float
    r_outer: float
    load: float
    log_coeff: float
    constant: float

    def __post_init__(self):
        _check_interval(self.r_inner, self.r_outer)
        if self.kind not in ("harmonic", "torsion"):
            raise ConfigurationError(f"unknown profile kind {self.kind!r}")
        if self.kind == "harmonic" and self.load != 0.0:
            raise ConfigurationError("harmonic profiles carry no load")

    def __call__(self, r):
        r = np.asarray(r, dtype=np.float64)
        value = -self.load * r * r / 4.0 + self.log_coeff * np.log(r) + self.constant
        return float(value) if value.ndim == 0 else value

    def derivative(self, r):
        r = np.asarray(r, dtype=np.float64)
        value = -self.load * r / 2.0 + self.log_coeff / r
        return float(value) if value.ndim == 0 else value

    def second_derivative(self, r):
        r = np.asarray(r, dtype=np.float64)
        value = -self.load / 2.0 - self.log_coeff / (r * r)
        return float(value) if value.ndim == 0 else value

    def radial_operator(self, r):
        """-u'' - u'/r evaluated symbolically; equals the load for every r."""
        r = np.asarray(r, dtype=np.float64)
        # -(-c/2 - A/r^2) - (-c/2 + A/r^2) collapses term by term
        second = -self.load / 2.0 - self.log_coeff / (r * r)
        first_over_r = -self.load / 2.0 + self.log_coeff / (r * r)
        value = -second - first_over_r
        return float(value) if value.ndim == 0 else value


def harmonic_closed_form(r_inner: float, r_outer: float, alpha: float, beta: float) -> RadialProfile:
    """A + B ln r with value alpha at R1 and beta at R2."""
    _check_interval(r_inner, r_outer)
    if alpha == beta:
        return RadialProfile("harmonic", r_inner, r_outer, 0.0, 0.0, float(alpha))
    slope = (beta - alpha) / math.log(r_outer / r_inner)
    return RadialProfile("harmonic", r_inner, r_outer, 0.0, slope, alpha - slope * math.log(r_inner))


def torsion_closed_form(r_inner: float, r_outer: float, load: float) -> RadialProfile:
    """Solution of -u'' - u'/r = load with u(R1) = u(R2) = 0."""
    _check_interval(r_inner, r_outer)
    a = load * (r_outer ** 2 - r_inner ** 2) / (4.0 * math.log(r_outer / r_inner))
    b = load * r_inner ** 2 / 4.0 - a * math.log(r_inner)
    return RadialProfile("torsion", r_inner, r_outer, float(load), a, b)


def radial_sup(profile: RadialProfile) -> Tuple[float, float]:
    """
    Maximum of |profile| on [R1, R2] and where it is attained.

    Candidates are the endpoints and, for a loaded profile, the stationary
    point r*^2 = 2A/c when it falls inside the interval.

    Returns:
        Tuple[float, float]: (r_star, max |u|).
    """
    candidates = [
        (profile.r_inner, abs(profile(profile.r_inner))),
        (profile.r_outer, abs(profile(profile.r_outer))),
    ]
    if profile.load != 0.0:
        r_squared = 2.0 * profile.log_coeff / profile.load
        if profile.r_inner ** 2 < r_squared < profile.r_outer ** 2:
            # u(r*) = -A/2 + (A/2) ln r*^2 + B, avoiding the square root
            value = profile.log_coeff * (math.log(r_squared) - 1.0) / 2.0 + profile.constant
            candidates.append((math.sqrt(r_squared), abs(value)))
    return max(candidates, key=lambda item: item[1])
