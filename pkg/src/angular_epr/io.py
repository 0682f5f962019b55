"""Deterministic CSV and JSON writers for the pipeline outputs.

Every CSV starts with a single ``#`` comment line carrying the full parameter
record of the run; identical parameters always produce byte-identical files.
Reals are written with 12 significant digits.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .aperture import AngularDensity, phi_grid
from .criterion import CriterionReport
from .oam import OamSpectrum, VarianceSeries

__all__ = [
    "format_real",
    "params_header",
    "write_density_csv",
    "write_conditional_csv",
    "write_spectrum_csv",
    "write_series_csv",
    "write_criterion_json",
]


def format_real(x: float) -> str:
    return f"{float(x):.12g}"


def params_header(params: dict) -> str:
    parts = " ".join(f"{k}={params[k]}" for k in params)
    return f"# {parts}"


def _write(path, header: str, columns: str, rows) -> None:
    lines = [header, columns]
    lines.extend(",".join(format_real(v) if isinstance(v, float) else str(v) for v in row)
                 for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def write_density_csv(path, density: AngularDensity, params: dict) -> None:
    """Angle density: columns phi,p."""
    phi = phi_grid(density.n)
    rows = zip((float(x) for x in phi), (float(v) for v in density.values))
    _write(path, params_header(params), "phi,p", rows)


def write_conditional_csv(path, density: AngularDensity, psi: np.ndarray, params: dict) -> None:
    """Conditional density and wavefunction: columns phi,p,psi."""
    phi = phi_grid(density.n)
    rows = zip((float(x) for x in phi),
               (float(v) for v in density.values),
               (float(v) for v in psi))
    _write(path, params_header(params), "phi,p,psi", rows)


def write_spectrum_csv(path, spectrum: OamSpectrum, params: dict) -> None:
    """OAM spectrum: columns m,c,c_squared."""
    rows = ((int(m), float(c), float(c) ** 2) for m, c in zip(spectrum.ms, spectrum.amps))
    _write(path, params_header(params), "m,c,c_squared", rows)


def write_series_csv(path, series: VarianceSeries, params: dict) -> None:
    """Variance series: columns m_max,variance,classification."""
    rows = ((int(m), float(v), series.classification) for m, v in series.entries)
    _write(path, params_header(params), "m_max,variance,classification", rows)


def _round_reals(obj):
    if isinstance(obj, float):
        return float(format_real(obj))
    if isinstance(obj, dict):
        return {k: _round_reals(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_reals(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(format_real(float(obj)))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def write_criterion_json(path, report: CriterionReport) -> None:
    """Criterion report with stable key order and 12-significant-digit reals."""
    payload = {
        "lhs": report.lhs,
        "rhs": report.rhs,
        "verdict": report.verdict,
        "classification": report.classification,
        "inputs": report.inputs,
        "rhs_at_tau": [[tau, var] for tau, var in report.rhs_at_tau],
    }
    Path(path).write_text(json.dumps(_round_reals(payload), indent=2) + "\n")
