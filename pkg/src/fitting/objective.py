from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..curves import CurveModel, ModelKind, evaluate, jacobian
from ..dataio.models import CurvePoint
from ..errors import EvaluationDomainError
from .models import Weighting
from .weights import compute_weights


@dataclass(frozen=True)
class LeastSquaresObjective:
    """Weighted residual sum of squares of one family against fixed points.

    Residuals are ``sqrt(w_i) * (E(size_i) - accuracy_i)`` so that
    ``rss = sum(residuals**2) = sum(w_i * (E(size_i) - accuracy_i)**2)``.
    """

    kind: ModelKind
    sizes: np.ndarray
    accuracies: np.ndarray
    sqrt_weights: np.ndarray

    @classmethod
    def from_points(
        cls, kind: ModelKind, points: Sequence[CurvePoint], weighting: Weighting
    ) -> "LeastSquaresObjective":
        weights = compute_weights(points, weighting)
        return cls(
            kind=ModelKind(kind),
            sizes=np.array([p.count for p in points], dtype=float),
            accuracies=np.array([p.accuracy for p in points], dtype=float),
            sqrt_weights=np.sqrt(weights),
        )

    def model(self, params: np.ndarray) -> CurveModel:
        return CurveModel(self.kind, tuple(params))

    def residuals(self, params: np.ndarray) -> np.ndarray:
        predicted = evaluate(self.model(params), self.sizes)
        return self.sqrt_weights * (predicted - self.accuracies)

    def jacobian(self, params: np.ndarray) -> np.ndarray:
        return self.sqrt_weights[:, np.newaxis] * jacobian(self.model(params), self.sizes)

    def rss(self, params: np.ndarray) -> float:
        """Weighted RSS, or ``inf`` when the parameters leave the formula's domain."""
        try:
            residuals = self.residuals(params)
        except (EvaluationDomainError, ValueError):
            return math.inf
        value = float(np.dot(residuals, residuals))
        return value if math.isfinite(value) else math.inf
