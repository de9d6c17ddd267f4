"""Tests for predictions, held-out error, saturation and required size."""

import pytest

from src.analysis import SizeGrid, find_saturation, l1_at_reference, mae, predict_curve, required_size
from src.curves import CurveModel, ModelKind
from src.dataio import CurvePoint


@pytest.fixture
def grid():
    return SizeGrid.uniform(10_000)


class TestSizeGrid:
    def test_uniform_default(self, grid):
        assert len(grid) == 100
        assert grid.fractions[0] == 0.01
        assert grid.fractions[-1] == 1.0
        assert grid.counts[:3] == (100, 200, 300)
        assert grid.is_uniform()

    def test_counts_round_half_up(self):
        assert SizeGrid(25, (0.1, 0.5)).counts == (3, 13)

    def test_small_fraction_gets_one_example(self):
        assert SizeGrid(10, (0.01,)).counts == (1,)

    def test_not_uniform(self):
        assert not SizeGrid(100, (0.1, 0.2, 0.4)).is_uniform()

    @pytest.mark.parametrize("fractions", [(), (0.2, 0.1), (0.1, 0.1), (0.0, 0.5), (0.5, 1.5)])
    def test_rejects_bad_fractions(self, fractions):
        with pytest.raises(ValueError):
            SizeGrid(100, fractions)


class TestPredictCurve:
    def test_clamps_and_flags(self, grid):
        model = CurveModel(ModelKind.EXP, (1.0 / 1024, 1.0))
        rows = predict_curve(model, SizeGrid(12_800, grid.fractions))
        assert rows[0].accuracy == pytest.approx(0.125)
        assert not rows[0].clamped
        assert rows[-1].raw_accuracy == pytest.approx(12.5)
        assert rows[-1].accuracy == 1.0
        assert rows[-1].clamped

    def test_flag_marks_exactly_the_out_of_range_rows(self, grid):
        # 1.5 - 30/sqrt(N): negative below 400 examples, above one past 3600
        model = CurveModel(ModelKind.INVERSE, (-0.5, 30.0, -0.5))
        rows = predict_curve(model, grid)
        assert rows[0].raw_accuracy < 0.0
        assert rows[-1].raw_accuracy > 1.0
        for row in rows:
            assert row.clamped == (not 0.0 <= row.raw_accuracy <= 1.0)
            assert row.accuracy == min(1.0, max(0.0, row.raw_accuracy))


class TestMae:
    """Held-out mean absolute error."""

    def test_exact_model_scores_zero(self, inverse_model, make_points):
        points = make_points(inverse_model, [5500, 7500, 10_000], total_size=10_000)
        report = mae(inverse_model, points, train_fractions=(0.01, 0.02))
        assert report.mae == pytest.approx(0.0, abs=1e-15)
        assert report.test_fractions == (0.55, 0.75, 1.0)
        assert report.train_fractions == (0.01, 0.02)

    def test_hand_computed(self):
        model = CurveModel(ModelKind.EXP, (0.8, 0.0))
        points = [CurvePoint(0.6, 600, 0.7), CurvePoint(1.0, 1000, 0.85)]
        report = mae(model, points)
        assert report.mae == pytest.approx(0.075)
        assert [e.abs_error for e in report.errors] == pytest.approx([0.1, 0.05])

    def test_order_of_test_points_does_not_matter(self, inverse_model):
        points = [CurvePoint(f / 100, f * 100, 0.85 + 0.003 * (f % 7)) for f in range(55, 101, 5)]
        forward = mae(inverse_model, points).mae
        assert mae(inverse_model, points[::-1]).mae == forward
        assert mae(inverse_model, points[1::2] + points[::2]).mae == forward

    def test_uses_clamped_predictions(self):
        model = CurveModel(ModelKind.EXP, (1.2, 0.0))
        assert mae(model, [CurvePoint(1.0, 1000, 0.9)]).mae == pytest.approx(0.1)

    def test_empty(self, inverse_model):
        with pytest.raises(ValueError, match="at least one test point"):
            mae(inverse_model, [])

    def test_to_dict(self, inverse_model):
        report = mae(inverse_model, [CurvePoint(1.0, 400, 0.8)])
        data = report.to_dict()
        assert data["mae"] == pytest.approx(0.075)
        assert data["points"][0]["count"] == 400


class TestFindSaturation:
    """First grid step gaining less than alpha points."""

    def test_inverse_example(self, inverse_model, grid):
        report = find_saturation(inverse_model, grid, alpha=0.2)
        assert report.saturated
        assert report.saturation_count == 600
        assert report.saturation_fraction == 0.06
        assert report.predicted_accuracy_at_saturation == pytest.approx(0.8796, abs=1e-4)

    def test_l1_against_reference(self, inverse_model, grid):
        report = l1_at_reference(inverse_model, find_saturation(inverse_model, grid, 0.2), 0.9)
        assert report.l1_distance == pytest.approx(2.04, abs=0.01)
        assert report.to_dict()["reference_accuracy"] == 0.9

    def test_constant_model_saturates_immediately(self, grid):
        report = find_saturation(CurveModel(ModelKind.EXP, (0.8, 0.0)), grid, alpha=0.2)
        assert report.saturation_count == 200

    def test_gain_equal_to_threshold_is_not_saturation(self):
        model = CurveModel(ModelKind.EXP, (1.0 / 1024, 1.0))
        report = find_saturation(model, SizeGrid.uniform(12_800), alpha=12.5)
        assert not report.saturated
        assert report.saturation_count == 12_800
        assert report.predicted_accuracy_at_saturation == 1.0

    def test_larger_alpha_saturates_no_later(self, inverse_model, grid):
        counts = [find_saturation(inverse_model, grid, alpha).saturation_count for alpha in (0.05, 0.1, 0.2, 0.5, 1.0)]
        assert counts == sorted(counts, reverse=True)

    @pytest.mark.parametrize("alpha", [0.0, -1.0, float("nan")])
    def test_bad_alpha(self, inverse_model, grid, alpha):
        with pytest.raises(ValueError, match="alpha"):
            find_saturation(inverse_model, grid, alpha)

    def test_single_point_grid(self, inverse_model):
        with pytest.raises(ValueError, match="at least two"):
            find_saturation(inverse_model, SizeGrid(100, (0.5,)), 0.2)

    def test_non_uniform_grid(self, inverse_model):
        with pytest.raises(ValueError, match="uniformly spaced"):
            find_saturation(inverse_model, SizeGrid(1000, (0.1, 0.2, 0.4)), 0.2)


class TestRequiredSize:
    """Smallest grid point reaching a target accuracy."""

    def test_reachable(self, inverse_model, grid):
        result = required_size(inverse_model, 0.875, grid)
        assert result.reachable
        assert result.count == 400
        assert result.fraction == 0.04

    def test_zero_target_is_first_point(self, inverse_model, grid):
        assert required_size(inverse_model, 0.0, grid).count == 100

    def test_unreachable_reports_asymptote(self, inverse_model, grid):
        result = required_size(inverse_model, 0.95, grid)
        assert not result.reachable
        assert result.count is None
        assert result.asymptote == pytest.approx(0.9)
        assert result.to_dict()["asymptote"] == pytest.approx(0.9)

    def test_monotone_in_target(self, inverse_model, grid):
        counts = [required_size(inverse_model, t, grid).count for t in (0.85, 0.86, 0.87, 0.88, 0.89)]
        assert counts == sorted(counts)

    def test_target_out_of_range(self, inverse_model, grid):
        with pytest.raises(ValueError):
            required_size(inverse_model, 1.5, grid)
