"""Extrapolated predictions, held-out error, saturation and required size."""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import List, Sequence

import numpy as np

from ..curves import CurveModel, asymptote, evaluate
from ..dataio.models import CurvePoint
from .grid import SizeGrid
from .reports import EvaluationReport, PointError, PredictionRow, RequiredSize, SaturationReport

logger = logging.getLogger("samplesize.analysis")

# Slack when comparing a prediction against a target accuracy
TARGET_TOLERANCE = 1e-12


def _raw_predictions(model: CurveModel, grid: SizeGrid) -> np.ndarray:
    return np.asarray(evaluate(model, np.array(grid.counts, dtype=float)), dtype=float)


def predict_curve(model: CurveModel, grid: SizeGrid) -> List[PredictionRow]:
    """Predicted accuracy at every grid point, clamped to [0, 1] for reporting.

    Raises:
        EvaluationDomainError: The model is undefined at some grid count
    """
    raw = _raw_predictions(model, grid)
    rows = []
    for fraction, count, value in zip(grid.fractions, grid.counts, raw):
        value = float(value)
        clamped = min(1.0, max(0.0, value))
        rows.append(PredictionRow(fraction, count, value, clamped, clamped != value))
    if any(r.clamped for r in rows):
        logger.debug("%s predictions left [0, 1] and were clamped", sum(r.clamped for r in rows))
    return rows


def mae(
    model: CurveModel,
    test_points: Sequence[CurvePoint],
    train_fractions: Sequence[float] = (),
) -> EvaluationReport:
    """Mean absolute error of the clamped predictions against observed accuracies.

    Raises:
        ValueError: ``test_points`` is empty
    """
    if not test_points:
        raise ValueError("MAE needs at least one test point")
    sizes = np.array([p.count for p in test_points], dtype=float)
    predicted = np.clip(np.asarray(evaluate(model, sizes), dtype=float), 0.0, 1.0)
    errors = tuple(
        PointError(p.fraction, p.count, p.accuracy, float(value), abs(float(value) - p.accuracy))
        for p, value in zip(test_points, predicted)
    )
    value = math.fsum(e.abs_error for e in errors) / len(errors)
    return EvaluationReport(
        model=model,
        errors=errors,
        mae=value,
        train_fractions=tuple(train_fractions),
        test_fractions=tuple(p.fraction for p in test_points),
    )


def find_saturation(model: CurveModel, grid: SizeGrid, alpha: float) -> SaturationReport:
    """First grid point whose gain over the previous point is below ``alpha`` percentage points.

    When no step qualifies the last grid point is returned with
    ``saturated=False``.

    Args:
        model: Fitted curve
        grid: At least two uniformly spaced fractions
        alpha: Threshold in accuracy percentage points (0.2 means 0.002)

    Raises:
        ValueError: alpha is not positive, or the grid is too short or not uniform
    """
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha {alpha!r} must be a positive number")
    if len(grid) < 2:
        raise ValueError("saturation needs a grid with at least two points")
    if not grid.is_uniform():
        raise ValueError("saturation needs uniformly spaced grid fractions")

    threshold = alpha / 100.0
    raw = _raw_predictions(model, grid)
    index = len(grid) - 1
    saturated = False
    for k in range(1, len(grid)):
        if raw[k] - raw[k - 1] < threshold:
            index = k
            saturated = True
            break
    if not saturated:
        logger.info("no grid step gains less than %g points; curve not saturated", alpha)
    return SaturationReport(
        saturation_fraction=grid.fractions[index],
        saturation_count=grid.counts[index],
        predicted_accuracy_at_saturation=min(1.0, max(0.0, float(raw[index]))),
        alpha=alpha,
        saturated=saturated,
    )


def required_size(model: CurveModel, target_accuracy: float, grid: SizeGrid) -> RequiredSize:
    """Smallest grid point whose prediction reaches ``target_accuracy``."""
    if not (0.0 <= target_accuracy <= 1.0):
        raise ValueError(f"target accuracy {target_accuracy!r} must lie in [0, 1]")
    raw = _raw_predictions(model, grid)
    for fraction, count, value in zip(grid.fractions, grid.counts, raw):
        if value >= target_accuracy - TARGET_TOLERANCE:
            return RequiredSize(
                target_accuracy=target_accuracy,
                reachable=True,
                fraction=fraction,
                count=count,
                predicted_accuracy=min(1.0, max(0.0, float(value))),
            )
    limit = asymptote(model)
    logger.info("target %g unreachable on the grid (asymptote %s)", target_accuracy, limit)
    return RequiredSize(target_accuracy=target_accuracy, reachable=False, asymptote=limit)


def l1_at_reference(model: CurveModel, saturation: SaturationReport, reference_accuracy: float) -> SaturationReport:
    """Attach the L1 distance, in percentage points, to a full-data reference accuracy."""
    if not (0.0 <= reference_accuracy <= 1.0):
        raise ValueError(f"reference accuracy {reference_accuracy!r} must lie in [0, 1]")
    distance = abs(saturation.predicted_accuracy_at_saturation - reference_accuracy) * 100.0
    return replace(saturation, reference_accuracy=reference_accuracy, l1_distance=distance)
