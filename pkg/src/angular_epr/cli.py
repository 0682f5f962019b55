"""Command-line surface emitting the CSV/JSON data behind the figures.

Widths accept a ``pi`` suffix (``0.25pi``) so the canonical pair w1 = pi/4,
w2 = pi/64 carries no decimal drift. Exit codes: 2 for usage errors, 1 for
numerical failures, 0 on success. Outputs are deterministic: identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import io as dataio
from .aperture import GAUSS, RECT, SHAPES, TSG, ApertureSpec, make_aperture, sample
from .correlate import conditional_density_for_pair, conditional_wavefunction
from .criterion import PERFECT, TABLE, OamCorrelationModel, evaluate
from .oam import (
    gauss_spectrum_approx,
    rect_spectrum_analytic,
    transform_numeric,
    variance_series,
    variance_series_from_spectrum,
)

_DEFAULT_W1 = "0.25pi"
_DEFAULT_W2 = "0.015625pi"  # pi/64


class PiFloat(click.ParamType):
    """Float with an optional pi-multiple suffix, e.g. 0.25pi."""

    name = "real[pi]"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        text = str(value).strip().lower()
        try:
            if text.endswith("pi"):
                return float(text[:-2] or "1") * math.pi
            return float(text)
        except ValueError:
            self.fail(f"{value!r} is not a number (use e.g. 0.25 or 0.25pi)", param, ctx)


PI_FLOAT = PiFloat()


def _power_ladder(limit: int, start: int = 1) -> list[int]:
    out = []
    m = start
    while m <= limit:
        out.append(m)
        m *= 2
    return out


def _build_spec(family: str, w: float, gamma: float) -> ApertureSpec:
    if family not in SHAPES:
        raise click.UsageError(f"family must be one of {SHAPES}, got {family!r}")
    try:
        return make_aperture(ApertureSpec(shape=family, w=w, gamma=gamma))
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _family_options(fn):
    for opt in reversed([
        click.option("--family1", default=GAUSS, show_default=True,
                     type=click.Choice(SHAPES), help="Conditioning aperture family."),
        click.option("--family2", default=GAUSS, show_default=True,
                     type=click.Choice(SHAPES), help="Analyzer aperture family."),
        click.option("--w1", type=PI_FLOAT, default=_DEFAULT_W1, show_default=True,
                     help="Conditioning width (radians; pi suffix allowed)."),
        click.option("--w2", type=PI_FLOAT, default=_DEFAULT_W2, show_default=True,
                     help="Analyzer width (radians; pi suffix allowed)."),
        click.option("--gamma", type=float, default=1.0, show_default=True,
                     help="Super-Gaussian exponent for tsg families."),
        click.option("--grid-n", type=int, default=512, show_default=True,
                     help="Angle grid size (power of two)."),
    ]):
        fn = opt(fn)
    return fn


def _run(fn):
    """Map numerical failures to exit code 1 with the precondition message."""
    try:
        fn()
    except (ValueError, OverflowError, ArithmeticError) as exc:
        click.echo(f"computation error: {exc}", err=True)
        sys.exit(1)


@click.group()
def main():
    """Angular EPR toolkit: aperture pipelines, OAM spectra, criterion."""


@main.command()
@_family_options
@click.option("--out", required=True, type=click.Path(), help="Output CSV path.")
def aperture(family1, family2, w1, w2, gamma, grid_n, out):
    """Emit the conditioning aperture density (columns phi,p)."""
    spec = _build_spec(family1, w1, gamma)

    def go():
        density = sample(spec, grid_n)
        params = {"command": "aperture", "family": family1, "w": dataio.format_real(w1),
                  "gamma": dataio.format_real(spec.gamma), "grid_n": grid_n}
        dataio.write_density_csv(out, density, params)

    _run(go)


@main.command()
@_family_options
@click.option("--out", required=True, type=click.Path(), help="Output CSV path.")
def convolve(family1, family2, w1, w2, gamma, grid_n, out):
    """Emit the conditional density and wavefunction (columns phi,p,psi)."""
    spec1 = _build_spec(family1, w1, gamma)
    spec2 = _build_spec(family2, w2, gamma)

    def go():
        density = conditional_density_for_pair(spec1, spec2, grid_n)
        psi = conditional_wavefunction(density)
        params = {"command": "convolve", "family1": family1, "family2": family2,
                  "w1": dataio.format_real(w1), "w2": dataio.format_real(w2),
                  "gamma": dataio.format_real(gamma), "grid_n": grid_n}
        dataio.write_conditional_csv(out, density, psi.values, params)

    _run(go)


def _analytic_companion(family1, family2, w1, w2, m_max):
    """Closed-form spectrum for the homogeneous rect and gauss pairs."""
    if family1 == family2 == RECT:
        return rect_spectrum_analytic(w1, w2, m_max)
    if family1 == family2 == GAUSS:
        return gauss_spectrum_approx(w1, w2, m_max)
    return None


@main.command()
@_family_options
@click.option("--m-max", type=int, default=30, show_default=True, help="Spectrum truncation.")
@click.option("--out", required=True, type=click.Path(), help="Output CSV path.")
def spectrum(family1, family2, w1, w2, gamma, grid_n, m_max, out):
    """Emit the numeric OAM spectrum (columns m,c,c_squared).

    For rect-rect and gauss-gauss pairs a companion file '<out stem>_analytic.csv'
    carries the closed-form spectrum of the same pair.
    """
    spec1 = _build_spec(family1, w1, gamma)
    spec2 = _build_spec(family2, w2, gamma)

    def go():
        density = conditional_density_for_pair(spec1, spec2, grid_n)
        spec = transform_numeric(conditional_wavefunction(density), m_max)
        params = {"command": "spectrum", "family1": family1, "family2": family2,
                  "w1": dataio.format_real(w1), "w2": dataio.format_real(w2),
                  "gamma": dataio.format_real(gamma), "grid_n": grid_n,
                  "m_max": m_max, "provenance": spec.provenance}
        dataio.write_spectrum_csv(out, spec, params)
        companion = _analytic_companion(family1, family2, w1, w2, m_max)
        if companion is not None:
            path = Path(out)
            cpath = path.with_name(path.stem + "_analytic" + path.suffix)
            cparams = dict(params)
            cparams["provenance"] = companion.provenance
            del cparams["grid_n"]
            dataio.write_spectrum_csv(cpath, companion, cparams)

    _run(go)


@main.command(name="variance-series")
@_family_options
@click.option("--m-max", type=int, default=None,
              help="Largest truncation (default: 1024 analytic, grid_n/4 numeric).")
@click.option("--provenance", type=click.Choice(["numeric", "analytic"]), default="numeric",
              show_default=True, help="Amplitude source for the series.")
@click.option("--out", required=True, type=click.Path(), help="Output CSV path.")
def variance_series_cmd(family1, family2, w1, w2, gamma, grid_n, m_max, provenance, out):
    """Emit variance vs truncation index (columns m_max,variance,classification)."""
    spec1 = _build_spec(family1, w1, gamma)
    spec2 = _build_spec(family2, w2, gamma)

    def go():
        if provenance == "analytic":
            limit = m_max or 1024
            full = _analytic_companion(family1, family2, w1, w2, limit)
            if full is None:
                raise ValueError(
                    "analytic series requires a homogeneous rect or gauss pair"
                )
            series = variance_series_from_spectrum(full, _power_ladder(limit))
        else:
            limit = min(m_max or grid_n // 4, grid_n // 4)
            density = conditional_density_for_pair(spec1, spec2, grid_n)
            series = variance_series(conditional_wavefunction(density), _power_ladder(limit))
        params = {"command": "variance-series", "family1": family1, "family2": family2,
                  "w1": dataio.format_real(w1), "w2": dataio.format_real(w2),
                  "gamma": dataio.format_real(gamma), "grid_n": grid_n,
                  "m_max": limit, "provenance": provenance}
        dataio.write_series_csv(out, series, params)

    _run(go)


@main.command(name="gamma-sweep")
@_family_options
@click.option("--gammas", default="1,3,5,20,80", show_default=True,
              help="Comma-separated super-Gaussian exponents.")
@click.option("--m-max", type=int, default=None, help="Largest truncation (default grid_n/4).")
@click.option("--out", required=True, type=click.Path(),
              help="Output stem; writes <stem>_gamma<g>.csv and <stem>_summary.csv.")
def gamma_sweep(family1, family2, w1, w2, gamma, gammas, grid_n, m_max, out):
    """Variance series for a sweep of super-Gaussian exponents."""
    try:
        values = [float(g) for g in gammas.split(",") if g.strip()]
    except ValueError:
        raise click.UsageError(f"cannot parse gamma list {gammas!r}")
    if not values or any(g < 1.0 or g > 100.0 for g in values):
        raise click.UsageError("gammas must lie in [1, 100]")

    def go():
        limit = min(m_max or grid_n // 4, grid_n // 4)
        ladder = _power_ladder(limit)
        summary = []
        stem = Path(out)
        for g in values:
            spec1 = make_aperture(ApertureSpec(shape=TSG, w=w1, gamma=g))
            spec2 = make_aperture(ApertureSpec(shape=TSG, w=w2, gamma=g))
            density = conditional_density_for_pair(spec1, spec2, grid_n)
            series = variance_series(conditional_wavefunction(density), ladder)
            params = {"command": "gamma-sweep", "w1": dataio.format_real(w1),
                      "w2": dataio.format_real(w2), "gamma": dataio.format_real(g),
                      "grid_n": grid_n, "m_max": limit}
            path = stem.with_name(f"{stem.stem}_gamma{g:g}{stem.suffix or '.csv'}")
            dataio.write_series_csv(path, series, params)
            summary.append((g, series.entries[-1][1], series.classification))
        header = dataio.params_header(
            {"command": "gamma-sweep-summary", "w1": dataio.format_real(w1),
             "w2": dataio.format_real(w2), "grid_n": grid_n, "m_max": limit})
        lines = [header, "gamma,variance_at_m_max,classification"]
        lines += [f"{dataio.format_real(g)},{dataio.format_real(v)},{c}" for g, v, c in summary]
        spath = stem.with_name(f"{stem.stem}_summary{stem.suffix or '.csv'}")
        spath.write_text("\n".join(lines) + "\n")

    _run(go)


def _parse_model(text: str) -> OamCorrelationModel:
    if text == PERFECT:
        return OamCorrelationModel(kind=PERFECT)
    if text.startswith("table:"):
        path = Path(text[len("table:"):])
        if not path.exists():
            raise click.UsageError(f"table file not found: {path}")
        raw = json.loads(path.read_text())
        table = {}
        for m1, entry in raw.items():
            cond = {int(m2): float(p) for m2, p in entry["conditional"].items()}
            table[int(m1)] = (float(entry["weight"]), cond)
        try:
            return OamCorrelationModel(kind=TABLE, table=table)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    raise click.UsageError(f"model must be 'perfect' or 'table:<path>', got {text!r}")


@main.command(name="criterion")
@_family_options
@click.option("--model", default=PERFECT, show_default=True,
              help="OAM correlation model: 'perfect' or 'table:<path.json>'.")
@click.option("--m-max", type=int, default=20, show_default=True, help="Variance truncation.")
@click.option("--tau-grid", type=int, default=8, show_default=True,
              help="Number of conditioning orientations averaged.")
@click.option("--out", required=True, type=click.Path(), help="Output JSON path.")
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json",
              show_default=True, help="Report format.")
def criterion_cmd(family1, family2, w1, w2, gamma, grid_n, model, m_max, tau_grid, out, fmt):
    """Evaluate the angular EPR criterion and write the JSON report."""
    corr = _parse_model(model)
    spec1 = _build_spec(family1, w1, gamma)
    spec2 = _build_spec(family2, w2, gamma)

    def go():
        report = evaluate(corr, spec1, spec2, tau_grid=tau_grid, m_max=m_max, grid_n=grid_n)
        dataio.write_criterion_json(out, report)
        click.echo(f"verdict: {'paradox demonstrated' if report.verdict else 'not demonstrated'} "
                   f"(lhs={dataio.format_real(report.lhs)}, rhs={dataio.format_real(report.rhs)}, "
                   f"classification={report.classification})")

    _run(go)


if __name__ == "__main__":
    main()
