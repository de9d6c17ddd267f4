"""Learning-curve families and the ensemble combiner."""

from .models import (
    BASE_KINDS,
    CurveModel,
    EnsembleWeights,
    ModelKind,
    asymptote,
    evaluate,
    jacobian,
    param_gradient,
)
from .ensemble import combine_ensemble, uniform_weights, weights_from_rss

__all__ = [
    "BASE_KINDS",
    "CurveModel",
    "EnsembleWeights",
    "ModelKind",
    "asymptote",
    "combine_ensemble",
    "evaluate",
    "jacobian",
    "param_gradient",
    "uniform_weights",
    "weights_from_rss",
]
