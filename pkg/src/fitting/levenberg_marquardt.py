"""Box-constrained Levenberg-Marquardt least squares."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from ..curves import ModelKind
from ..dataio.models import CurvePoint
from .models import FitConfig, FitResult, ParamBounds
from .objective import LeastSquaresObjective
from .restarts import RestartOutcome, run_restarts

logger = logging.getLogger("samplesize.fitting.lm")

INITIAL_DAMPING = 1e-3
DAMPING_UP = 10.0
DAMPING_DOWN = 0.1
MAX_DAMPING = 1e10


def _damped_step(jac: np.ndarray, residuals: np.ndarray, damping: float) -> np.ndarray:
    """Solve (J^T J + damping * diag(J^T J)) step = -J^T r."""
    jtj = jac.T @ jac
    gradient = jac.T @ residuals
    diag = np.diag(jtj)
    # Columns that vanish (e.g. c once b hits 0) still need a positive scale
    floor = 1e-12 * max(float(np.max(diag)), 1.0)
    lhs = jtj + damping * np.diag(np.maximum(diag, floor))
    try:
        return np.linalg.solve(lhs, -gradient)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(lhs, -gradient, rcond=None)[0]


def levenberg_marquardt(
    objective: LeastSquaresObjective,
    start: np.ndarray,
    bounds: ParamBounds,
    config: FitConfig,
) -> RestartOutcome:
    """Minimize the objective from one starting point.

    Damping starts at 1e-3, is multiplied by 10 after a rejected step and by 0.1
    after an accepted one. Candidate points are projected onto the box. The run
    stops when the relative RSS change of an accepted step falls below
    ``config.convergence_tol``, when ``config.iterations`` trial steps have been
    taken, or when the damping exceeds 1e10.
    """
    params = bounds.clip(np.asarray(start, dtype=float))
    rss = objective.rss(params)
    if not math.isfinite(rss):
        return RestartOutcome(params, math.inf, math.inf, 0, False, "non-finite loss at start", failed=True, failed_at=0)

    history = [rss]
    initial_rss = rss
    if rss == 0.0:
        return RestartOutcome(params, rss, initial_rss, 0, True, "exact", history)

    damping = INITIAL_DAMPING
    accepted = 0
    finite_candidate = False
    reason = "max_iterations"
    converged = False
    jac = objective.jacobian(params)
    residuals = objective.residuals(params)
    iteration = 0
    while iteration < config.iterations:
        iteration += 1
        step = _damped_step(jac, residuals, damping)
        candidate = bounds.clip(params + step)
        candidate_rss = objective.rss(candidate) if np.all(np.isfinite(candidate)) else math.inf
        if math.isfinite(candidate_rss):
            finite_candidate = True
        if candidate_rss < rss:
            relative_change = (rss - candidate_rss) / rss
            params, rss = candidate, candidate_rss
            history.append(rss)
            accepted += 1
            damping *= DAMPING_DOWN
            if rss == 0.0 or relative_change < config.convergence_tol:
                reason = "exact" if rss == 0.0 else "tolerance"
                converged = True
                break
            jac = objective.jacobian(params)
            residuals = objective.residuals(params)
        else:
            damping *= DAMPING_UP
            if damping > MAX_DAMPING:
                reason = "damping"
                converged = True
                break

    if accepted == 0 and iteration > 0 and not finite_candidate:
        return RestartOutcome(
            params, rss, initial_rss, iteration, False, "every step rejected", history, failed=True, failed_at=0
        )
    logger.debug("lm stopped after %d iterations (%s), rss=%.6g", iteration, reason, rss)
    return RestartOutcome(params, rss, initial_rss, iteration, converged, reason, history)


def fit_nls(kind: ModelKind, points: Sequence[CurvePoint], config: FitConfig) -> FitResult:
    """Fit one base family by Levenberg-Marquardt, best of ``config.restarts`` starts.

    Args:
        kind: Exp, Inverse or Pow4
        points: Training points
        config: Fit configuration (weighting, iterations, tolerance, restarts, bounds)

    Returns:
        FitResult of the restart with the lowest weighted RSS

    Raises:
        FitError: Too few points, or every restart diverged
    """
    return run_restarts(kind, points, config, levenberg_marquardt, "nls")
