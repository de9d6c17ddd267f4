"""Multi-restart driver shared by the least-squares and gradient-descent fitters."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..curves import BASE_KINDS, CurveModel, ModelKind
from ..dataio.models import CurvePoint
from ..errors import FitError
from .initializers import check_points, initialize
from .models import FitConfig, FitResult, ParamBounds
from .objective import LeastSquaresObjective

logger = logging.getLogger("samplesize.fitting")


@dataclass
class RestartOutcome:
    """What one optimizer run from one starting point produced."""

    params: np.ndarray
    rss: float
    initial_rss: float
    iterations: int
    converged: bool
    reason: str
    history: List[float] = field(default_factory=list)
    failed: bool = False
    failed_at: Optional[int] = None


Solver = Callable[[LeastSquaresObjective, np.ndarray, ParamBounds, FitConfig], RestartOutcome]


def run_restarts(
    kind: ModelKind,
    points: Sequence[CurvePoint],
    config: FitConfig,
    solve: Solver,
    label: str,
) -> FitResult:
    """Run ``solve`` from every restart's starting point and keep the best.

    The winner is the minimum of ``(rss, restart_index)`` over restarts that did
    not fail, so the choice does not depend on execution order.

    Raises:
        FitError: Too few points, or every restart failed
    """
    kind = ModelKind(kind)
    if kind not in BASE_KINDS:
        raise ValueError(f"{label} fits base families only, got {kind.value}")
    check_points(kind, points)
    bounds = config.bounds_for(kind)
    objective = LeastSquaresObjective.from_points(kind, points, config.weighting)

    candidates = []
    diagnostics = []
    for restart_index in range(config.restarts):
        start = initialize(kind, points, restart_index, config.rng_seed, bounds)
        outcome = solve(objective, start, bounds, config)
        entry = {
            "restart_index": restart_index,
            "reason": outcome.reason,
            "iterations": outcome.iterations,
            "rss": outcome.rss if math.isfinite(outcome.rss) else None,
        }
        if outcome.failed_at is not None:
            entry["iteration"] = outcome.failed_at
        diagnostics.append(entry)
        if outcome.failed:
            logger.warning("%s %s restart %d failed: %s", label, kind.value, restart_index, outcome.reason)
            continue
        logger.debug(
            "%s %s restart %d: rss=%.6g after %d iterations (%s)",
            label,
            kind.value,
            restart_index,
            outcome.rss,
            outcome.iterations,
            outcome.reason,
        )
        candidates.append((outcome.rss, restart_index, outcome))

    if not candidates:
        raise FitError(f"every {label} restart failed for {kind.value}", diagnostics)

    rss, restart_index, best = min(candidates, key=lambda c: (c[0], c[1]))
    logger.info("%s %s: best restart %d, rss=%.6g", label, kind.value, restart_index, rss)
    return FitResult(
        model=CurveModel(kind, tuple(best.params)),
        train_rss=rss,
        converged=best.converged,
        iterations_used=best.iterations,
        restart_index=restart_index,
        loss_history=tuple(best.history),
        initial_rss=best.initial_rss,
        diagnostics=tuple(diagnostics),
    )
