"""Result types produced by the analysis functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from ..curves import CurveModel


@dataclass(frozen=True)
class PredictionRow:
    fraction: float
    count: int
    raw_accuracy: float
    accuracy: float
    clamped: bool


@dataclass(frozen=True)
class PointError:
    fraction: float
    count: int
    observed: float
    predicted: float
    abs_error: float


@dataclass(frozen=True)
class EvaluationReport:
    """Mean absolute error of a model against held-out points."""

    model: CurveModel
    errors: Tuple[PointError, ...]
    mae: float
    train_fractions: Tuple[float, ...] = ()
    test_fractions: Tuple[float, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mae": self.mae,
            "train_fractions": list(self.train_fractions),
            "test_fractions": list(self.test_fractions),
            "points": [
                {
                    "fraction": e.fraction,
                    "count": e.count,
                    "observed": e.observed,
                    "predicted": e.predicted,
                    "abs_error": e.abs_error,
                }
                for e in self.errors
            ],
        }


@dataclass(frozen=True)
class SaturationReport:
    """Where the predicted curve stops improving by at least alpha per grid step.

    ``l1_distance`` is in accuracy percentage points.
    """

    saturation_fraction: float
    saturation_count: int
    predicted_accuracy_at_saturation: float
    alpha: float
    saturated: bool = True
    reference_accuracy: Optional[float] = None
    l1_distance: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "saturated": self.saturated,
            "saturation_fraction": self.saturation_fraction,
            "saturation_count": self.saturation_count,
            "predicted_accuracy": self.predicted_accuracy_at_saturation,
            "reference_accuracy": self.reference_accuracy,
            "l1_distance": self.l1_distance,
        }


@dataclass(frozen=True)
class RequiredSize:
    """Smallest grid size reaching a target accuracy, or why none does."""

    target_accuracy: float
    reachable: bool
    fraction: Optional[float] = None
    count: Optional[int] = None
    predicted_accuracy: Optional[float] = None
    # Only filled for unreachable targets with a finite limit
    asymptote: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target_accuracy": self.target_accuracy,
            "reachable": self.reachable,
            "fraction": self.fraction,
            "count": self.count,
            "predicted_accuracy": self.predicted_accuracy,
            "asymptote": self.asymptote,
        }
