"""Tests for family dispatch, the ensemble fit and fit quality on synthetic curves."""

import math
from dataclasses import replace

import pytest

from src.analysis import mae
from src.curves import BASE_KINDS, CurveModel, ModelKind
from src.dataio import CurvePoint
from src.errors import FitError
from src.fitting import fitter as fitter_module
from src.fitting import EnsembleWeighting, FitConfig, Optimizer, Weighting, fit, fit_ensemble
from src.synth import NoiseSpec, SynthSpec, generate, grid_oracle_fit

TOTAL = 25_000


def _dataset(generator, seed=0, sigma0=0.0, size_decay=False):
    return generate(SynthSpec(generator, TOTAL, noise=NoiseSpec(sigma0, size_decay), rng_seed=seed))


class TestFitDispatch:
    """fit() routes to the optimizer and family requested."""

    def test_base_family(self, make_points, inverse_model):
        points = make_points(inverse_model, range(100, 1100, 100))
        result = fit(ModelKind.INVERSE, points, FitConfig())
        assert result.model.kind is ModelKind.INVERSE
        assert result.component_results is None

    def test_accepts_string_kind(self, make_points, inverse_model):
        points = make_points(inverse_model, range(100, 1100, 100))
        assert fit("exp", points, FitConfig()).model.kind is ModelKind.EXP

    def test_gd_optimizer(self, make_points, inverse_model, mocker):
        points = make_points(inverse_model, range(100, 1100, 100))
        spy = mocker.spy(fitter_module, "fit_gd")
        fit(ModelKind.INVERSE, points, FitConfig(optimizer=Optimizer.GD, max_iterations=5, restarts=1))
        assert spy.call_count == 1


class TestFitEnsemble:
    """Ensemble of the three independently fitted families."""

    def test_components_in_order(self, make_points, inverse_model):
        points = make_points(inverse_model, range(100, 1100, 100))
        result = fit_ensemble(points, FitConfig(restarts=2))
        assert result.model.kind is ModelKind.ENSEMBLE
        assert [c.model.kind for c in result.component_results] == list(BASE_KINDS)
        assert math.fsum(result.model.weights.as_tuple()) == pytest.approx(1.0, abs=1e-12)
        assert result.iterations_used == sum(c.iterations_used for c in result.component_results)

    @pytest.mark.parametrize(
        "generator, min_wins",
        [
            (CurveModel(ModelKind.EXP, (0.6, 0.03)), 18),
            (CurveModel(ModelKind.INVERSE, (0.1, 0.3, -0.2)), 18),
            # Inverse tracks this curve once b*N dominates c
            (CurveModel(ModelKind.POW4, (0.93, 0.01, 1.0, 0.8)), 17),
        ],
        ids=["exp", "inverse", "pow4"],
    )
    def test_true_family_gets_the_largest_weight(self, generator, min_wins):
        wins = 0
        for seed in range(20):
            points = _dataset(generator, seed=seed, sigma0=0.005, size_decay=True).train_points()
            weights = dict(zip(BASE_KINDS, fit_ensemble(points, FitConfig()).model.weights.as_tuple()))
            own = weights.pop(generator.kind)
            if own > max(weights.values()):
                wins += 1
        assert wins >= min_wins

    def test_not_worse_than_worst_component(self):
        generator = CurveModel(ModelKind.INVERSE, (0.1, 0.5, -0.3))
        for seed in range(5):
            dataset = _dataset(generator, seed=seed, sigma0=0.01)
            result = fit_ensemble(dataset.train_points(), FitConfig(restarts=2))
            ensemble_mae = mae(result.model, dataset.test_points()).mae
            worst = max(mae(c.model, dataset.test_points()).mae for c in result.component_results)
            assert ensemble_mae <= worst + 1e-12

    def test_uniform_weighting(self, make_points, inverse_model):
        points = make_points(inverse_model, range(100, 1100, 100))
        result = fit_ensemble(points, FitConfig(ensemble_weighting=EnsembleWeighting.UNIFORM, restarts=1))
        assert result.model.weights.as_tuple() == pytest.approx((1 / 3, 1 / 3, 1 / 3))

    def test_failed_component_gets_zero_weight(self):
        points = [CurvePoint(0.1, 100, 0.6), CurvePoint(0.2, 200, 0.7), CurvePoint(0.3, 300, 0.75)]
        result = fit_ensemble(points, FitConfig(restarts=1))
        pow4 = result.component_results[2]
        assert pow4.failed
        assert "at least 4 points" in pow4.error
        assert pow4.train_rss == math.inf
        assert result.model.weights.w_pow4 == 0.0
        assert math.isfinite(result.train_rss)

    def test_all_components_failed(self):
        with pytest.raises(FitError, match="every ensemble component failed"):
            fit_ensemble([CurvePoint(0.1, 100, 0.6)], FitConfig())

    def test_deterministic(self):
        points = _dataset(CurveModel(ModelKind.EXP, (0.6, 0.03)), seed=3, sigma0=0.01).train_points()
        assert fit_ensemble(points, FitConfig(rng_seed=9)) == fit_ensemble(points, FitConfig(rng_seed=9))


class TestFitQuality:
    """Statistical behavior on synthetic curves with known generators."""

    def test_lm_matches_or_beats_grid_oracle(self):
        generator = CurveModel(ModelKind.EXP, (0.5, 0.06))
        for seed in range(25):
            points = _dataset(generator, seed=seed, sigma0=0.01).train_points()
            result = fit(ModelKind.EXP, points, FitConfig())
            _, oracle_rss = grid_oracle_fit(ModelKind.EXP, points, resolution=101)
            assert result.train_rss <= oracle_rss + 1e-12

    def test_oracle_finds_noiseless_generator(self):
        points = _dataset(CurveModel(ModelKind.EXP, (0.5, 0.06))).train_points()
        (a, b), rss = grid_oracle_fit(ModelKind.EXP, points, resolution=(201, 201))
        assert a == pytest.approx(0.5, abs=1e-9)
        assert b == pytest.approx(0.06, abs=1e-9)
        assert rss == pytest.approx(0.0, abs=1e-20)

    def test_size_weighting_discounts_early_deviations(self):
        # The two smallest training sizes read 0.02 low; every other point is exact
        generator = CurveModel(ModelKind.EXP, (0.6, 0.03))
        dataset = _dataset(generator)
        train = [
            replace(p, accuracy=p.accuracy - 0.02) if i < 2 else p for i, p in enumerate(dataset.train_points())
        ]
        errors = {}
        for weighting in (Weighting.UNWEIGHTED, Weighting.SIZE_PROPORTIONAL):
            result = fit(ModelKind.EXP, train, FitConfig(weighting=weighting))
            errors[weighting] = mae(result.model, dataset.test_points()).mae
        assert errors[Weighting.SIZE_PROPORTIONAL] < 0.8 * errors[Weighting.UNWEIGHTED]

    def test_ensemble_extrapolates_from_ten_percent(self):
        generator = CurveModel(ModelKind.INVERSE, (0.09, 1.2, -0.45))
        good = 0
        for seed in range(20):
            dataset = _dataset(generator, seed=seed, sigma0=0.005, size_decay=True)
            result = fit(ModelKind.ENSEMBLE, dataset.train_points(), FitConfig())
            if mae(result.model, dataset.test_points()).mae < 0.01:
                good += 1
        assert good >= 18
