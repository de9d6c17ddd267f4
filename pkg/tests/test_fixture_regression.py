"""End-to-end run over a checked-in learning curve.

The fixture's train rows lie exactly on Inverse(0.09, 1.2, -0.45) and the
other rows are offset by ``0.002 * sin(row)``. An Inverse fit recovers the
generator, so the committed outputs are the generator's closed-form values.
"""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.analysis import SizeGrid, find_saturation, l1_at_reference, mae
from src.cli import cli
from src.dataio import default_schedule, parse_points, write_fit_report
from src.fitting import FitConfig, fit_ensemble

FIXTURES = Path(__file__).parent / "fixtures"
POINTS = FIXTURES / "imdb_like.csv"
GOLDEN = json.loads((FIXTURES / "imdb_like_golden.json").read_text())
GOLDEN_PLOT = FIXTURES / "imdb_like_plot.tsv"
TOLERANCE = 1e-9


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """Run fit, evaluate, saturate and plot once; return their outputs."""
    tmp = tmp_path_factory.mktemp("regression")
    runner = CliRunner()
    report_path = tmp / "fit.json"
    evaluation_path = tmp / "evaluation.json"
    commands = {
        "fit": ["fit", "--input", str(POINTS), "--model", "inverse", "--target", "0.88", "--out", str(report_path)],
        "evaluate": ["evaluate", "--input", str(report_path), "--points", str(POINTS), "--out", str(evaluation_path)],
        "saturate": ["saturate", "--input", str(report_path), "--reference", "0.89794941936284478"],
        "plot": ["plot", "--input", str(POINTS), "--model", "inverse"],
    }
    outputs = {}
    for stage, args in commands.items():
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, f"{stage}: {result.stderr}"
        outputs[stage] = result.stdout
    outputs["report"] = json.loads(report_path.read_text())
    outputs["evaluation"] = json.loads(evaluation_path.read_text())
    return outputs


def _assert_close(actual, expected):
    assert actual == pytest.approx(expected, abs=TOLERANCE, rel=0)


class TestFixtureRegression:
    def test_fit_report_evaluation(self, pipeline):
        evaluation = pipeline["report"]["evaluation"]
        _assert_close(evaluation["mae"], GOLDEN["evaluation"]["mae"])
        assert [p["count"] for p in evaluation["points"]] == [p["count"] for p in GOLDEN["evaluation"]["points"]]
        for point, expected in zip(evaluation["points"], GOLDEN["evaluation"]["points"]):
            _assert_close(point["observed"], expected["observed"])
            _assert_close(point["predicted"], expected["predicted"])

    def test_evaluate_command(self, pipeline):
        _assert_close(pipeline["evaluation"]["mae"], GOLDEN["evaluation"]["mae"])
        assert pipeline["evaluate"].startswith("mae: ")

    def test_saturation(self, pipeline):
        saturation = pipeline["report"]["saturation"]
        expected = GOLDEN["saturation"]
        for key in ("alpha", "saturated", "saturation_count", "saturation_fraction"):
            assert saturation[key] == expected[key]
        for key in ("predicted_accuracy", "reference_accuracy", "l1_distance"):
            _assert_close(saturation[key], expected[key])
        assert pipeline["saturate"].splitlines() == [
            "saturated: true",
            "saturation fraction: 0.1",
            "saturation count: 2500",
            "predicted accuracy: 0.8745",
            "L1: 2.34",
        ]

    def test_required_size(self, pipeline):
        required = pipeline["report"]["required_size"]
        expected = GOLDEN["required_size"]
        for key in ("reachable", "count", "fraction", "target_accuracy"):
            assert required[key] == expected[key]
        _assert_close(required["predicted_accuracy"], expected["predicted_accuracy"])

    def test_plot_table(self, pipeline):
        rows = [line.split("\t") for line in pipeline["plot"].splitlines()]
        golden = [line.split("\t") for line in GOLDEN_PLOT.read_text().splitlines()]
        assert rows[0] == golden[0]
        assert len(rows) == len(golden)
        for row, expected in zip(rows[1:], golden[1:]):
            assert float(row[0]) == float(expected[0])
            assert row[1] == expected[1]
            assert row[4] == expected[4]
            _assert_close(float(row[2]), float(expected[2]))
            _assert_close(float(row[3]), float(expected[3]))


class TestEnsembleOnFixture:
    """The default ensemble fit on the same curve."""

    @staticmethod
    def _report():
        dataset = parse_points(POINTS.read_text())
        config = FitConfig()
        result = fit_ensemble(dataset.train_points(), config)
        evaluation = mae(result.model, dataset.test_points(), [p.fraction for p in dataset.train_points()])
        saturation = find_saturation(result.model, SizeGrid.uniform(dataset.total_size), 0.2)
        saturation = l1_at_reference(result.model, saturation, dataset.points[-1].accuracy)
        return write_fit_report(result, config, dataset, default_schedule(), evaluation, saturation), evaluation

    def test_extrapolation_error(self):
        _, evaluation = self._report()
        assert evaluation.mae < 0.01

    def test_deterministic(self):
        assert self._report()[0] == self._report()[0]
