"""CLI surface: flags, file schemas, determinism, exit codes."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from angular_epr.cli import main

PI = np.pi


@pytest.fixture
def runner():
    return CliRunner()


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# ")
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    return lines[0], header, rows


class TestApertureCommand:
    def test_writes_density_csv(self, runner, tmp_path):
        out = tmp_path / "ap.csv"
        res = runner.invoke(main, ["aperture", "--family1", "rect", "--w1", "0.25pi",
                                   "--out", str(out)])
        assert res.exit_code == 0, res.output
        comment, header, rows = read_csv(out)
        assert header == ["phi", "p"]
        assert len(rows) == 512
        assert "w=0.785398163397" in comment
        values = np.array([float(r[1]) for r in rows])
        assert np.isclose(values.sum() * 2 * PI / 512, 1.0, atol=1e-9)

    def test_deterministic_bytes(self, runner, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            res = runner.invoke(main, ["aperture", "--family1", "tsg", "--gamma", "3",
                                       "--out", str(out)])
            assert res.exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_pi_suffix_parsing(self, runner, tmp_path):
        out = tmp_path / "ap.csv"
        res = runner.invoke(main, ["aperture", "--family1", "rect", "--w1", "2pi",
                                   "--out", str(out)])
        assert res.exit_code == 0
        _, _, rows = read_csv(out)
        values = np.array([float(r[1]) for r in rows])
        np.testing.assert_allclose(values, 1 / (2 * PI), rtol=1e-11)

    def test_invalid_width_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["aperture", "--w1", "abc", "--out", str(tmp_path / "x.csv")])
        assert res.exit_code == 2

    def test_out_of_range_width_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["aperture", "--family1", "gauss", "--w1", "3pi",
                                   "--out", str(tmp_path / "x.csv")])
        assert res.exit_code == 2


class TestConvolveCommand:
    def test_conditional_csv_schema(self, runner, tmp_path):
        out = tmp_path / "cond.csv"
        res = runner.invoke(main, ["convolve", "--family1", "rect", "--family2", "rect",
                                   "--out", str(out)])
        assert res.exit_code == 0, res.output
        _, header, rows = read_csv(out)
        assert header == ["phi", "p", "psi"]
        for r in rows[:50]:
            assert float(r[2]) == pytest.approx(np.sqrt(float(r[1])), abs=1e-9)

    def test_mixed_rect_smooth_fails_with_code_one(self, runner, tmp_path):
        res = runner.invoke(main, ["convolve", "--family1", "rect", "--family2", "gauss",
                                   "--out", str(tmp_path / "x.csv")])
        assert res.exit_code == 1
        assert "mixed" in res.output


class TestSpectrumCommand:
    def test_rect_emits_numeric_and_analytic(self, runner, tmp_path):
        out = tmp_path / "spec.csv"
        res = runner.invoke(main, ["spectrum", "--family1", "rect", "--family2", "rect",
                                   "--out", str(out)])
        assert res.exit_code == 0, res.output
        _, header, rows = read_csv(out)
        assert header == ["m", "c", "c_squared"]
        assert len(rows) == 61
        companion = tmp_path / "spec_analytic.csv"
        assert companion.exists()
        _, _, arows = read_csv(companion)
        # numeric amplitudes track the closed form at the grid's alias floor
        num = np.array([float(r[1]) for r in rows])
        ana = np.array([float(r[1]) for r in arows])
        assert np.max(np.abs(num - ana)) < 2e-3

    def test_tsg_has_no_companion(self, runner, tmp_path):
        out = tmp_path / "spec.csv"
        res = runner.invoke(main, ["spectrum", "--family1", "tsg", "--family2", "tsg",
                                   "--gamma", "3", "--out", str(out)])
        assert res.exit_code == 0
        assert not (tmp_path / "spec_analytic.csv").exists()


class TestVarianceSeriesCommand:
    def test_gauss_numeric_converged(self, runner, tmp_path):
        out = tmp_path / "series.csv"
        res = runner.invoke(main, ["variance-series", "--family1", "gauss",
                                   "--family2", "gauss", "--out", str(out)])
        assert res.exit_code == 0, res.output
        _, header, rows = read_csv(out)
        assert header == ["m_max", "variance", "classification"]
        assert all(r[2] == "converged" for r in rows)

    def test_rect_analytic_log_divergent(self, runner, tmp_path):
        out = tmp_path / "series.csv"
        res = runner.invoke(main, ["variance-series", "--family1", "rect", "--family2", "rect",
                                   "--provenance", "analytic", "--out", str(out)])
        assert res.exit_code == 0, res.output
        _, _, rows = read_csv(out)
        assert rows[-1][0] == "1024"
        assert all(r[2] == "log-divergent" for r in rows)

    def test_analytic_requires_homogeneous_pair(self, runner, tmp_path):
        res = runner.invoke(main, ["variance-series", "--family1", "tsg", "--family2", "tsg",
                                   "--provenance", "analytic", "--out", str(tmp_path / "x.csv")])
        assert res.exit_code == 1


class TestGammaSweepCommand:
    def test_writes_series_and_summary(self, runner, tmp_path):
        out = tmp_path / "sweep.csv"
        res = runner.invoke(main, ["gamma-sweep", "--gammas", "1,3", "--grid-n", "256",
                                   "--out", str(out)])
        assert res.exit_code == 0, res.output
        assert (tmp_path / "sweep_gamma1.csv").exists()
        assert (tmp_path / "sweep_gamma3.csv").exists()
        summary = (tmp_path / "sweep_summary.csv").read_text().splitlines()
        assert summary[1] == "gamma,variance_at_m_max,classification"
        assert len(summary) == 4

    def test_gamma_one_matches_gauss_series(self, runner, tmp_path):
        res = runner.invoke(main, ["gamma-sweep", "--gammas", "1", "--out",
                                   str(tmp_path / "sweep.csv")])
        assert res.exit_code == 0
        res = runner.invoke(main, ["variance-series", "--family1", "gauss", "--family2", "gauss",
                                   "--out", str(tmp_path / "gauss.csv")])
        assert res.exit_code == 0
        _, _, sweep_rows = read_csv(tmp_path / "sweep_gamma1.csv")
        _, _, gauss_rows = read_csv(tmp_path / "gauss.csv")
        for a, b in zip(sweep_rows, gauss_rows):
            assert abs(float(a[1]) - float(b[1])) < 1e-9

    def test_gamma_range_guard(self, runner, tmp_path):
        res = runner.invoke(main, ["gamma-sweep", "--gammas", "0.5,3",
                                   "--out", str(tmp_path / "x.csv")])
        assert res.exit_code == 2


class TestCriterionCommand:
    def test_perfect_gauss_verdict_true(self, runner, tmp_path):
        out = tmp_path / "report.json"
        res = runner.invoke(main, ["criterion", "--model", "perfect", "--family1", "gauss",
                                   "--family2", "gauss", "--out", str(out)])
        assert res.exit_code == 0, res.output
        report = json.loads(out.read_text())
        assert list(report.keys()) == ["lhs", "rhs", "verdict", "classification",
                                       "inputs", "rhs_at_tau"]
        assert report["verdict"] is True
        assert report["lhs"] == 0.0
        assert abs(report["rhs"] - 0.807) < 0.01
        assert "paradox demonstrated" in res.output

    def test_table_model_from_json(self, runner, tmp_path):
        table = {"0": {"weight": 0.5, "conditional": {"-2": 0.25, "0": 0.5, "2": 0.25}},
                 "1": {"weight": 0.5, "conditional": {"-3": 0.25, "-1": 0.5, "1": 0.25}}}
        tfile = tmp_path / "table.json"
        tfile.write_text(json.dumps(table))
        out = tmp_path / "report.json"
        res = runner.invoke(main, ["criterion", "--model", f"table:{tfile}",
                                   "--out", str(out)])
        assert res.exit_code == 0, res.output
        report = json.loads(out.read_text())
        assert report["lhs"] == 2.0
        assert report["verdict"] is False

    def test_missing_table_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["criterion", "--model", "table:/nonexistent.json",
                                   "--out", str(tmp_path / "x.json")])
        assert res.exit_code == 2

    def test_unknown_model_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["criterion", "--model", "magic",
                                   "--out", str(tmp_path / "x.json")])
        assert res.exit_code == 2

    def test_deterministic_json(self, runner, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            res = runner.invoke(main, ["criterion", "--out", str(out), "--tau-grid", "2"])
            assert res.exit_code == 0
        assert a.read_bytes() == b.read_bytes()
