"""Render paper-style figures from the primary CLI's CSV outputs.

The scripts never recompute physics; they plot the files as committed. Each
figure id maps to a fixed set of input files inside one data directory:

  fig3: fig3_aperture1.csv, fig3_aperture2.csv, fig3_conditional.csv
  fig4: fig4_spectrum_numeric.csv, fig4_spectrum_analytic.csv,
        fig4_series_analytic.csv, fig4_series_numeric.csv
  fig5: fig5_spectrum_numeric.csv, fig5_spectrum_approx.csv, fig5_series.csv
  fig6: fig6_aperture1_g{3,20}.csv, fig6_aperture2_g{3,20}.csv,
        fig6_conditional_g{3,20}.csv
  fig7: fig7_spectrum_g{3,20}.csv, fig7_series_gamma{3,20,80}.csv

Rendering is a pure function of the CSV content: fixed figure sizes, no
timestamps, byte-identical output on identical input.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import click
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIGURE_IDS = ("fig3", "fig4", "fig5", "fig6", "fig7")

__all__ = ["FigureJob", "MissingColumnError", "render", "main"]


class MissingColumnError(KeyError):
    """A required CSV column is absent."""


@dataclass(frozen=True)
class FigureJob:
    figure_id: str
    data_dir: Path
    out_path: Path


def read_columns(path: Path, names: list[str]) -> dict[str, list[float]]:
    """Read the named numeric columns, skipping the leading # parameter line."""
    if not path.exists():
        raise FileNotFoundError(f"input CSV not found: {path}")
    with open(path, newline="") as fh:
        first = fh.readline()
        if not first.startswith("#"):
            fh.seek(0)
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for name in names:
            if name not in fields:
                raise MissingColumnError(f"column {name!r} missing from {path.name}")
        out: dict[str, list[float]] = {name: [] for name in names}
        for row in reader:
            for name in names:
                out[name].append(float(row[name]))
    return out


def _plot_density_pair(ax, d1, d2, labels):
    ax.plot(d1["phi"], d1["p"], label=labels[0])
    ax.plot(d2["phi"], d2["p"], label=labels[1])
    ax.set_xlabel("phi (rad)")
    ax.set_ylabel("P(phi)")
    ax.legend()


def _plot_conditional(ax, cond):
    ax.plot(cond["phi"], cond["p"], label="conditional density")
    ax.plot(cond["phi"], cond["psi"], label="wavefunction")
    ax.set_xlabel("phi (rad)")
    ax.set_ylabel("P, psi")
    ax.legend()


def _plot_spectra(ax, specs, labels, styles):
    for spec, label, style in zip(specs, labels, styles):
        ax.plot(spec["m"], spec["c_squared"], style, label=label, markersize=3)
    ax.set_xlabel("m")
    ax.set_ylabel("|c_m|^2")
    ax.legend()


def _plot_series(ax, series_list, labels):
    for series, label in zip(series_list, labels):
        ax.plot(series["m_max"], series["variance"], "o-", label=label, markersize=3)
    ax.set_xscale("log")
    ax.set_xlabel("truncation index M")
    ax.set_ylabel("conditional variance")
    ax.legend()


def _render_fig3(data_dir: Path):
    a1 = read_columns(data_dir / "fig3_aperture1.csv", ["phi", "p"])
    a2 = read_columns(data_dir / "fig3_aperture2.csv", ["phi", "p"])
    cond = read_columns(data_dir / "fig3_conditional.csv", ["phi", "p", "psi"])
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    _plot_density_pair(axes[0], a1, a2, ["conditioning aperture", "analyzer aperture"])
    _plot_conditional(axes[1], cond)
    return fig


def _render_fig4(data_dir: Path):
    num = read_columns(data_dir / "fig4_spectrum_numeric.csv", ["m", "c", "c_squared"])
    ana = read_columns(data_dir / "fig4_spectrum_analytic.csv", ["m", "c", "c_squared"])
    s_ana = read_columns(data_dir / "fig4_series_analytic.csv", ["m_max", "variance"])
    s_num = read_columns(data_dir / "fig4_series_numeric.csv", ["m_max", "variance"])
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    _plot_spectra(axes[0], [ana, num], ["analytic", "numeric"], ["-", "o"])
    _plot_series(axes[1], [s_ana, s_num], ["analytic", "numeric"])
    return fig


def _render_fig5(data_dir: Path):
    num = read_columns(data_dir / "fig5_spectrum_numeric.csv", ["m", "c", "c_squared"])
    app = read_columns(data_dir / "fig5_spectrum_approx.csv", ["m", "c", "c_squared"])
    series = read_columns(data_dir / "fig5_series.csv", ["m_max", "variance"])
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    _plot_spectra(axes[0], [app, num], ["approximation", "numeric"], ["-", "o"])
    _plot_series(axes[1], [series], ["numeric"])
    return fig


def _render_fig6(data_dir: Path):
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    for row, g in enumerate((3, 20)):
        a1 = read_columns(data_dir / f"fig6_aperture1_g{g}.csv", ["phi", "p"])
        a2 = read_columns(data_dir / f"fig6_aperture2_g{g}.csv", ["phi", "p"])
        cond = read_columns(data_dir / f"fig6_conditional_g{g}.csv", ["phi", "p", "psi"])
        _plot_density_pair(axes[row][0], a1, a2,
                           [f"conditioning (gamma={g})", f"analyzer (gamma={g})"])
        _plot_conditional(axes[row][1], cond)
    return fig


def _render_fig7(data_dir: Path):
    s3 = read_columns(data_dir / "fig7_spectrum_g3.csv", ["m", "c", "c_squared"])
    s20 = read_columns(data_dir / "fig7_spectrum_g20.csv", ["m", "c", "c_squared"])
    series = [read_columns(data_dir / f"fig7_series_gamma{g}.csv", ["m_max", "variance"])
              for g in (3, 20, 80)]
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    _plot_spectra(axes[0], [s3, s20], ["gamma=3", "gamma=20"], ["o-", "s-"])
    _plot_series(axes[1], series, ["gamma=3", "gamma=20", "gamma=80"])
    return fig


_RENDERERS = {
    "fig3": _render_fig3,
    "fig4": _render_fig4,
    "fig5": _render_fig5,
    "fig6": _render_fig6,
    "fig7": _render_fig7,
}


def render(job: FigureJob):
    """Render one figure; returns the matplotlib Figure after saving it."""
    if job.figure_id not in _RENDERERS:
        raise ValueError(f"figure id must be one of {FIGURE_IDS}, got {job.figure_id!r}")
    fig = _RENDERERS[job.figure_id](Path(job.data_dir))
    fig.tight_layout()
    out = Path(job.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=150, metadata={"Software": "render_figure"})
    plt.close(fig)
    return fig


@click.command()
@click.argument("figure_id", type=click.Choice(FIGURE_IDS))
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory holding the input CSV files.")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Output image path (png).")
def main(figure_id, data_dir, out_path):
    """Render FIGURE_ID from CSV data produced by the angular-epr CLI."""
    try:
        render(FigureJob(figure_id=figure_id, data_dir=Path(data_dir), out_path=Path(out_path)))
    except (MissingColumnError, FileNotFoundError, ValueError) as exc:
        raise click.ClickException(str(exc))


if __name__ == "__main__":
    main()
