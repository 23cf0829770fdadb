"""
CSV output: field dumps, sweep tables and key=value reports.

Floats are written in their shortest round-trip form, so reruns with the
same configuration produce identical files.
"""
import math
import sys
from pathlib import Path
from typing import Any, Dict, IO, Iterable, Optional, Union

import numpy as np
import pandas as pd

from geometry import ExtendedField, Field, QuadratureRule

FIELD_COLUMNS = ["i", "j", "r", "theta", "x1", "x2", "value"]
SWEEP_COLUMNS = ["rho", "lambda", "iterations", "fp_residual", "status"]


def field_frame(u: Union[Field, ExtendedField], quadrature: Optional[QuadratureRule] = None) -> pd.DataFrame:
    """
    One row per annulus node, then (for extended fields with a quadrature
    rule) one row per hole point with i = -1 and j its flat index.
    """
    annulus = u.annulus if isinstance(u, ExtendedField) else u
    grid = annulus.grid
    x1, x2 = grid.coordinates
    i, j = np.meshgrid(np.arange(grid.n_r + 1), np.arange(grid.n_theta), indexing="ij")
    frame = pd.DataFrame({
        "i": i.ravel(),
        "j": j.ravel(),
        "r": grid.r[i.ravel()],
        "theta": grid.theta[j.ravel()],
        "x1": x1.ravel(),
        "x2": x2.ravel(),
        "value": annulus.values.ravel(),
    })
    if isinstance(u, ExtendedField) and quadrature is not None and quadrature.hole_x1.size:
        hx1, hx2 = quadrature.hole_x1, quadrature.hole_x2
        hole_values = np.broadcast_to(np.asarray(u.hole_fn(hx1, hx2), dtype=np.float64), hx1.shape)
        hole = pd.DataFrame({
            "i": np.full(hx1.size, -1),
            "j": np.arange(hx1.size),
            "r": np.hypot(hx1, hx2),
            "theta": np.mod(np.arctan2(hx2, hx1), 2.0 * math.pi),
            "x1": hx1,
            "x2": hx2,
            "value": hole_values,
        })
        frame = pd.concat([frame, hole], ignore_index=True)
    return frame[FIELD_COLUMNS]


def sweep_frame(rows: Iterable[Dict[str, Any]]) -> pd.DataFrame:
    frame = pd.DataFrame(list(rows))
    frame["iterations"] = frame["iterations"].astype(int)
    return frame[SWEEP_COLUMNS]


def format_value(value: Any) -> str:
    """Shortest round-trip text for floats, lowercase booleans, 'none' for None."""
    if value is None:
        return "none"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(frame: pd.DataFrame, destination: Union[str, Path, IO[str], None] = None) -> None:
    """Write a frame with shortest round-trip floats; None means standard output."""
    text = frame.copy()
    for column in text.columns:
        if pd.api.types.is_float_dtype(text[column]):
            text[column] = text[column].map(format_value)
    if destination is None:
        destination = sys.stdout
    if isinstance(destination, (str, Path)):
        Path(destination).parent.mkdir(parents=True, exist_ok=True)
    text.to_csv(destination, index=False, lineterminator="\n")


def print_report(values: Dict[str, Any], stream: Optional[IO[str]] = None) -> None:
    """key=value lines."""
    stream = stream or sys.stdout
    for key, value in values.items():
        print(f"{key}={format_value(value)}", file=stream)
