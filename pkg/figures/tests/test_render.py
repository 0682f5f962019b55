"""Figure rendering from the committed sample CSVs (no primary binary)."""

from pathlib import Path

import pytest
from click.testing import CliRunner

from epr_figures import FigureJob, MissingColumnError, render
from epr_figures.render import main, read_columns

SAMPLE = Path(__file__).resolve().parent.parent / "sample_data"

PANEL_COUNTS = {"fig3": 2, "fig4": 2, "fig5": 2, "fig6": 4, "fig7": 2}


@pytest.mark.parametrize("figure_id,panels", sorted(PANEL_COUNTS.items()))
def test_renders_with_expected_panel_count(figure_id, panels, tmp_path):
    out = tmp_path / f"{figure_id}.png"
    fig = render(FigureJob(figure_id=figure_id, data_dir=SAMPLE, out_path=out))
    assert out.exists() and out.stat().st_size > 0
    assert len(fig.axes) == panels


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(FigureJob(figure_id="fig5", data_dir=SAMPLE, out_path=a))
    render(FigureJob(figure_id="fig5", data_dir=SAMPLE, out_path=b))
    assert a.read_bytes() == b.read_bytes()


def test_missing_column_is_named(tmp_path):
    data = tmp_path / "data"
    data.mkdir()
    for name in ("fig3_aperture1.csv", "fig3_aperture2.csv"):
        data.joinpath(name).write_text((SAMPLE / name).read_text())
    # strip the psi column from the conditional file
    src = (SAMPLE / "fig3_conditional.csv").read_text().splitlines()
    broken = [src[0], "phi,p"] + [",".join(line.split(",")[:2]) for line in src[2:]]
    data.joinpath("fig3_conditional.csv").write_text("\n".join(broken) + "\n")
    with pytest.raises(MissingColumnError, match="psi"):
        render(FigureJob(figure_id="fig3", data_dir=data, out_path=tmp_path / "x.png"))


def test_missing_file_reported(tmp_path):
    with pytest.raises(FileNotFoundError):
        render(FigureJob(figure_id="fig4", data_dir=tmp_path, out_path=tmp_path / "x.png"))


def test_unknown_figure_id(tmp_path):
    with pytest.raises(ValueError, match="figure id"):
        render(FigureJob(figure_id="fig99", data_dir=SAMPLE, out_path=tmp_path / "x.png"))


def test_read_columns_requires_all_names(tmp_path):
    f = tmp_path / "t.csv"
    f.write_text("# params\nm,c\n1,0.5\n")
    with pytest.raises(MissingColumnError, match="c_squared"):
        read_columns(f, ["m", "c", "c_squared"])


class TestCli:
    def test_render_via_cli(self, tmp_path):
        out = tmp_path / "fig7.png"
        res = CliRunner().invoke(main, ["fig7", "--data", str(SAMPLE), "--out", str(out)])
        assert res.exit_code == 0, res.output
        assert out.exists()

    def test_cli_reports_missing_column(self, tmp_path):
        data = tmp_path / "data"
        data.mkdir()
        data.joinpath("fig3_aperture1.csv").write_text("# p\nphi,q\n0,1\n")
        res = CliRunner().invoke(main, ["fig3", "--data", str(data),
                                        "--out", str(tmp_path / "x.png")])
        assert res.exit_code != 0
        assert "'p'" in res.output and "fig3_aperture1.csv" in res.output

    def test_cli_rejects_unknown_id(self, tmp_path):
        res = CliRunner().invoke(main, ["fig9", "--data", str(SAMPLE),
                                        "--out", str(tmp_path / "x.png")])
        assert res.exit_code == 2
