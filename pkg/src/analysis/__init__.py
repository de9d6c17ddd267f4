"""Decisions drawn from fitted curves."""

from .extrapolation import find_saturation, l1_at_reference, mae, predict_curve, required_size
from .grid import SizeGrid
from .reports import EvaluationReport, PointError, PredictionRow, RequiredSize, SaturationReport

__all__ = [
    "EvaluationReport",
    "PointError",
    "PredictionRow",
    "RequiredSize",
    "SaturationReport",
    "SizeGrid",
    "find_saturation",
    "l1_at_reference",
    "mae",
    "predict_curve",
    "required_size",
]
