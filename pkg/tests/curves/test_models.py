"""Tests for the learning-curve families."""

import math

import numpy as np
import pytest

from src.curves import CurveModel, EnsembleWeights, ModelKind, asymptote, evaluate, param_gradient
from src.errors import EvaluationDomainError

GRADIENT_SIZES = (10.0, 1e2, 1e3, 1e5)
INTERIOR_BOXES = {
    ModelKind.EXP: ((0.1, -0.5), (1.0, 0.5)),
    ModelKind.INVERSE: ((-0.2, 0.1, -2.0), (0.5, 5.0, -0.05)),
    ModelKind.POW4: ((0.5, 1e-4, 0.5, 0.1), (1.2, 1.0, 5.0, 2.0)),
}


def _central_difference(model, size, step=1e-6, columns=None):
    grad = []
    for i in range(columns or len(model.params)):
        up = list(model.params)
        down = list(model.params)
        up[i] += step
        down[i] -= step
        grad.append(
            (evaluate(CurveModel(model.kind, up), size) - evaluate(CurveModel(model.kind, down), size)) / (2 * step)
        )
    return np.array(grad)


class TestModelKind:
    """Family tags and their arities."""

    def test_arity(self):
        assert [k.arity for k in ModelKind] == [2, 3, 4, 12]

    def test_parse_accepts_alias(self):
        assert ModelKind.parse("inv") is ModelKind.INVERSE
        assert ModelKind.parse(" Pow4 ") is ModelKind.POW4

    def test_parse_rejects_unknown(self):
        with pytest.raises(ValueError, match="unknown model kind"):
            ModelKind.parse("logistic")


class TestCurveModel:
    """Construction-time validation."""

    def test_wrong_arity(self):
        with pytest.raises(ValueError, match="expects 3 parameters"):
            CurveModel(ModelKind.INVERSE, (0.1, 0.5))

    def test_non_finite_param(self):
        with pytest.raises(ValueError, match="not finite"):
            CurveModel(ModelKind.EXP, (float("nan"), 0.1))

    def test_ensemble_weights_must_sum_to_one(self):
        params = (1.0, 0.0, 0.3, 0.0, -1.0, 0.9, 0.01, 1.0, 0.8, 0.5, 0.4, 0.0)
        with pytest.raises(ValueError):
            CurveModel(ModelKind.ENSEMBLE, params)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="must lie in"):
            EnsembleWeights(1.5, -0.5, 0.0)


class TestEvaluate:
    """Formula values at known points."""

    def test_exp_identity(self):
        assert evaluate(CurveModel(ModelKind.EXP, (1.0, 0.0)), 12345) == 1.0

    def test_inverse_without_size_term(self):
        model = CurveModel(ModelKind.INVERSE, (0.1, 0.0, -0.5))
        for size in (1, 17, 10_000):
            assert evaluate(model, size) == pytest.approx(0.9)

    def test_exp_value(self):
        assert evaluate(CurveModel(ModelKind.EXP, (0.7, 0.05)), 1000) == pytest.approx(0.98875, abs=1e-4)

    def test_inverse_closed_form(self, inverse_model):
        assert evaluate(inverse_model, 400) == pytest.approx(0.875, abs=1e-15)

    def test_pow4_value(self):
        model = CurveModel(ModelKind.POW4, (0.93, 0.01, 1.0, 0.8))
        assert evaluate(model, 100) == pytest.approx(0.93 - 2.0**-0.8)

    def test_array_input(self, inverse_model):
        values = evaluate(inverse_model, [100, 400, 2500])
        assert isinstance(values, np.ndarray)
        np.testing.assert_allclose(values, [0.85, 0.875, 0.89])

    def test_not_clamped(self):
        assert evaluate(CurveModel(ModelKind.EXP, (1.07, 0.0)), 10) == pytest.approx(1.07)

    def test_pow4_negative_base_with_fractional_exponent(self):
        model = CurveModel(ModelKind.POW4, (0.9, -0.01, 1.0, 0.5))
        with pytest.raises(EvaluationDomainError) as excinfo:
            evaluate(model, 200)
        assert excinfo.value.kind == "pow4"
        assert excinfo.value.size == 200
        assert "b*N + c" in str(excinfo.value)

    def test_pow4_negative_base_with_integer_exponent(self):
        model = CurveModel(ModelKind.POW4, (0.9, -0.01, 1.0, 2.0))
        assert evaluate(model, 200) == pytest.approx(-0.1)

    def test_nonpositive_size(self, inverse_model):
        with pytest.raises(ValueError):
            evaluate(inverse_model, 0)

    def test_bit_identical(self, inverse_model):
        sizes = np.arange(1, 500)
        assert np.array_equal(evaluate(inverse_model, sizes), evaluate(inverse_model, sizes))

    def test_inverse_monotone(self):
        sizes = np.arange(1, 2000)
        increasing = evaluate(CurveModel(ModelKind.INVERSE, (0.1, 0.5, -0.3)), sizes)
        assert np.all(np.diff(increasing) > 0)
        flat = evaluate(CurveModel(ModelKind.INVERSE, (0.1, 0.0, -0.3)), sizes)
        assert np.all(np.diff(flat) == 0)


class TestParamGradient:
    """Analytic gradients against closed forms and finite differences."""

    def test_exp_da(self):
        grad = param_gradient(CurveModel(ModelKind.EXP, (0.5, 0.0)), 10)
        assert grad[0] == pytest.approx(1.0)

    def test_exp_db(self):
        grad = param_gradient(CurveModel(ModelKind.EXP, (0.5, 0.1)), 100)
        assert grad[1] == pytest.approx(0.5 * 100**0.1 * math.log(100))

    def test_inverse_da(self):
        grad = param_gradient(CurveModel(ModelKind.INVERSE, (0.2, 0.3, -0.4)), 256)
        assert grad[0] == -1.0

    @pytest.mark.parametrize("kind", list(INTERIOR_BOXES))
    def test_matches_central_differences(self, kind):
        lower, upper = INTERIOR_BOXES[kind]
        rng = np.random.default_rng(7)
        for _ in range(20):
            model = CurveModel(kind, tuple(rng.uniform(lower, upper)))
            for size in GRADIENT_SIZES:
                np.testing.assert_allclose(
                    param_gradient(model, size), _central_difference(model, size), rtol=1e-5, atol=1e-9
                )

    def test_ensemble_matches_central_differences(self):
        model = CurveModel(
            ModelKind.ENSEMBLE,
            (0.6, 0.03, 0.1, 0.5, -0.5, 0.93, 0.01, 1.0, 0.8, 0.2, 0.5, 0.3),
        )
        for size in GRADIENT_SIZES:
            # Only the nine component columns; the weights are constrained to sum to 1
            analytic = param_gradient(model, size)[:9]
            numeric = _central_difference(model, size, columns=9)
            np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-9)

    def test_pow4_gradient_needs_positive_base(self):
        model = CurveModel(ModelKind.POW4, (0.9, -0.01, 1.0, 2.0))
        with pytest.raises(EvaluationDomainError):
            param_gradient(model, 200)

    def test_shape_for_many_sizes(self, inverse_model):
        assert param_gradient(inverse_model, [10, 20, 30, 40]).shape == (4, 3)


class TestAsymptote:
    """Limits as the training size grows."""

    def test_inverse(self, inverse_model):
        assert asymptote(inverse_model) == pytest.approx(0.9)

    def test_pow4(self):
        assert asymptote(CurveModel(ModelKind.POW4, (0.93, 0.01, 1.0, 0.8))) == 0.93

    def test_exp_divergent(self):
        assert asymptote(CurveModel(ModelKind.EXP, (0.6, 0.02))) is None

    def test_exp_flat_and_decaying(self):
        assert asymptote(CurveModel(ModelKind.EXP, (0.6, 0.0))) == 0.6
        assert asymptote(CurveModel(ModelKind.EXP, (0.6, -0.1))) == 0.0

    def test_ensemble_ignores_zero_weight_divergence(self):
        model = CurveModel(
            ModelKind.ENSEMBLE,
            (0.6, 0.02, 0.1, 0.5, -0.5, 0.93, 0.01, 1.0, 0.8, 0.0, 0.5, 0.5),
        )
        assert asymptote(model) == pytest.approx(0.5 * 0.9 + 0.5 * 0.93)

    def test_ensemble_divergent_component(self):
        model = CurveModel(
            ModelKind.ENSEMBLE,
            (0.6, 0.02, 0.1, 0.5, -0.5, 0.93, 0.01, 1.0, 0.8, 0.1, 0.45, 0.45),
        )
        assert asymptote(model) is None
