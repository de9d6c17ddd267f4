"""Family dispatch and the ensemble fit."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from ..curves import BASE_KINDS, CurveModel, ModelKind, combine_ensemble, uniform_weights, weights_from_rss
from ..dataio.models import CurvePoint
from ..errors import FitError
from .adam import fit_gd
from .levenberg_marquardt import fit_nls
from .models import EnsembleWeighting, FitConfig, FitResult, Optimizer
from .objective import LeastSquaresObjective

logger = logging.getLogger("samplesize.fitting")


def _fit_base(kind: ModelKind, points: Sequence[CurvePoint], config: FitConfig) -> FitResult:
    if config.optimizer is Optimizer.GD:
        return fit_gd(kind, points, config)
    return fit_nls(kind, points, config)


def _failed_component(kind: ModelKind, config: FitConfig, error: FitError) -> FitResult:
    bounds = config.bounds_for(kind)
    midpoint = (np.asarray(bounds.lower) + np.asarray(bounds.upper)) / 2.0
    return FitResult(
        model=CurveModel(kind, tuple(midpoint)),
        train_rss=math.inf,
        converged=False,
        iterations_used=0,
        restart_index=0,
        error=str(error),
        diagnostics=tuple(error.diagnostics),
    )


def fit_ensemble(points: Sequence[CurvePoint], config: FitConfig) -> FitResult:
    """Fit Exp, Inverse and Pow4 independently and combine them.

    A component whose fit fails is kept in ``component_results`` with an
    infinite RSS and weight 0; the remaining weights are renormalized.

    Raises:
        FitError: All three components failed
    """
    components = []
    for kind in BASE_KINDS:
        try:
            components.append(_fit_base(kind, points, config))
        except FitError as exc:
            logger.warning("ensemble component %s failed: %s", kind.value, exc)
            components.append(_failed_component(kind, config, exc))

    if all(c.failed for c in components):
        raise FitError(
            "every ensemble component failed: " + "; ".join(f"{c.model.kind.value}: {c.error}" for c in components)
        )

    if config.ensemble_weighting is EnsembleWeighting.UNIFORM:
        weights = uniform_weights([not c.failed for c in components])
    else:
        weights = weights_from_rss([c.train_rss for c in components])

    model = combine_ensemble(components[0].model, components[1].model, components[2].model, weights)
    objective = LeastSquaresObjective.from_points(ModelKind.ENSEMBLE, points, config.weighting)
    train_rss = objective.rss(np.asarray(model.params))
    logger.info(
        "ensemble weights exp=%.4f inverse=%.4f pow4=%.4f, rss=%.6g",
        weights.w_exp,
        weights.w_inv,
        weights.w_pow4,
        train_rss,
    )
    return FitResult(
        model=model,
        train_rss=train_rss,
        converged=all(c.converged for c in components if not c.failed),
        iterations_used=sum(c.iterations_used for c in components),
        restart_index=0,
        component_results=tuple(components),
    )


def fit(kind: ModelKind, points: Sequence[CurvePoint], config: FitConfig) -> FitResult:
    """Fit ``kind`` to the points with the optimizer named in ``config``.

    Args:
        kind: Exp, Inverse, Pow4 or Ensemble
        points: Training points
        config: Fit configuration

    Returns:
        FitResult; for Ensemble ``component_results`` holds the Exp, Inverse
        and Pow4 results in that order
    """
    kind = ModelKind(kind)
    if kind is ModelKind.ENSEMBLE:
        return fit_ensemble(points, config)
    return _fit_base(kind, points, config)
