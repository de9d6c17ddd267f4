"""Projected Adam gradient descent."""

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

logger = logging.getLogger("samplesize.fitting.adam")


class Adam:
    """Adam optimizer state for a single parameter vector.

    Args:
        learning_rate: Step size
        beta1: Decay rate of the first moment estimate
        beta2: Decay rate of the second moment estimate
        epsilon: Added to the denominator for numerical stability
    """

    def __init__(self, size: int, learning_rate: float, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.m = np.zeros(size)
        self.v = np.zeros(size)
        self.t = 0

    def step(self, params: np.ndarray, grad: np.ndarray) -> np.ndarray:
        """Return the updated parameters for one gradient."""
        self.t += 1
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad**2
        m_hat = self.m / (1 - self.beta1**self.t)
        v_hat = self.v / (1 - self.beta2**self.t)
        return params - self.learning_rate * m_hat / (np.sqrt(v_hat) + self.epsilon)


def adam_descent(
    objective: LeastSquaresObjective,
    start: np.ndarray,
    bounds: ParamBounds,
    config: FitConfig,
) -> RestartOutcome:
    """Minimize the objective by Adam, projecting onto the box after each step.

    Returns the best iterate seen, so the reported loss never exceeds the
    starting loss.
    """
    params = bounds.clip(np.asarray(start, dtype=float))
    loss = objective.rss(params)
    if not math.isfinite(loss):
        return RestartOutcome(params, math.inf, math.inf, 0, False, "non-finite loss at iteration 0", failed=True, failed_at=0)

    initial_loss = loss
    best_params, best_loss = params, loss
    history = [loss]
    optimizer = Adam(params.size, config.learning_rate, config.beta1, config.beta2, config.epsilon)
    reason = "max_iterations"
    converged = loss == 0.0
    if converged:
        reason = "exact"

    iteration = 0
    while not converged and iteration < config.iterations:
        iteration += 1
        grad = 2.0 * objective.jacobian(params).T @ objective.residuals(params)
        params = bounds.clip(optimizer.step(params, grad))
        new_loss = objective.rss(params)
        if not math.isfinite(new_loss):
            logger.debug("adam hit a non-finite loss at iteration %d", iteration)
            return RestartOutcome(
                best_params,
                math.inf,
                initial_loss,
                iteration,
                False,
                f"non-finite loss at iteration {iteration}",
                history,
                failed=True,
                failed_at=iteration,
            )
        history.append(new_loss)
        if new_loss < best_loss:
            best_params, best_loss = params, new_loss
        relative_change = abs(loss - new_loss) / loss if loss > 0 else 0.0
        loss = new_loss
        if new_loss == 0.0 or relative_change < config.convergence_tol:
            reason = "exact" if new_loss == 0.0 else "tolerance"
            converged = True

    logger.debug("adam stopped after %d iterations (%s), best loss=%.6g", iteration, reason, best_loss)
    return RestartOutcome(best_params, best_loss, initial_loss, iteration, converged, reason, history)


def fit_gd(kind: ModelKind, points: Sequence[CurvePoint], config: FitConfig) -> FitResult:
    """Fit one base family by projected Adam, best of ``config.restarts`` starts.

    Raises:
        FitError: Too few points, or every restart failed (including non-finite
            losses, reported with their iteration index)
    """
    return run_restarts(kind, points, config, adam_descent, "gd")
