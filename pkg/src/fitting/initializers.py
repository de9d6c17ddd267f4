"""Starting points for the family fits."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from ..curves import ModelKind
from ..dataio.models import CurvePoint
from ..errors import FitError
from .models import DEFAULT_BOUNDS, ParamBounds

logger = logging.getLogger("samplesize.fitting")

# Used when accuracies rule out the log-log regression
EXP_FALLBACK = (0.5, 0.05)


def check_points(kind: ModelKind, points: Sequence[CurvePoint]) -> None:
    """Require at least as many distinct sizes as the family has parameters."""
    kind = ModelKind(kind)
    distinct = len({p.count for p in points})
    if distinct < kind.arity:
        raise FitError(
            f"{kind.value} needs at least {kind.arity} points with distinct sizes, got {distinct}"
        )


def _heuristic(kind: ModelKind, sizes: np.ndarray, accuracies: np.ndarray) -> Optional[np.ndarray]:
    if kind is ModelKind.EXP:
        if np.any(accuracies <= 0):
            return None
        # ln(acc) = ln(a) + b * ln(N)
        slope, intercept = np.polyfit(np.log(sizes), np.log(accuracies), 1)
        return np.array([np.exp(intercept), slope])
    top = float(np.max(accuracies))
    if kind is ModelKind.INVERSE:
        return np.array([1.0 - top - 0.05, 0.5, -0.5])
    if kind is ModelKind.POW4:
        return np.array([top + 0.05, 1.0 / float(np.mean(sizes)), 1.0, 0.5])
    raise ValueError(f"no initializer for {kind.value}")


def initialize(
    kind: ModelKind,
    points: Sequence[CurvePoint],
    restart_index: int,
    rng_seed: int,
    bounds: Optional[ParamBounds] = None,
) -> np.ndarray:
    """Starting parameter vector for one restart.

    Restart 0 is the deterministic heuristic point. Later restarts scale each
    heuristic parameter by uniform noise in [0.5, 1.5] drawn from a generator
    seeded with ``(rng_seed, restart_index)``. The result is clipped to the box.

    Args:
        kind: Base family to initialize
        points: Training points
        restart_index: 0 for the heuristic point, >= 1 for perturbed points
        rng_seed: Seed shared by all restarts of one fit
        bounds: Box constraints, defaulting to the family's standard box

    Returns:
        Parameter vector of length ``kind.arity``
    """
    kind = ModelKind(kind)
    check_points(kind, points)
    if restart_index < 0:
        raise ValueError("restart_index must be nonnegative")
    bounds = bounds or DEFAULT_BOUNDS[kind]
    sizes = np.array([p.count for p in points], dtype=float)
    accuracies = np.array([p.accuracy for p in points], dtype=float)

    start = _heuristic(kind, sizes, accuracies)
    perturb = restart_index > 0
    if start is None:
        logger.debug("nonpositive accuracies, %s starts from the perturbed default", kind.value)
        start = np.array(EXP_FALLBACK)
        perturb = True
    if perturb:
        rng = np.random.default_rng([rng_seed, restart_index])
        start = start * rng.uniform(0.5, 1.5, size=start.shape)
    return bounds.clip(start)
