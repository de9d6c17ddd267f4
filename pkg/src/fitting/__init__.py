"""Curve fitting by Levenberg-Marquardt or Adam with restarts."""

from .adam import adam_descent, fit_gd
from .fitter import fit, fit_ensemble
from .initializers import initialize
from .levenberg_marquardt import fit_nls, levenberg_marquardt
from .models import (
    DEFAULT_BOUNDS,
    EnsembleWeighting,
    FitConfig,
    FitResult,
    Optimizer,
    ParamBounds,
    Weighting,
)
from .objective import LeastSquaresObjective
from .weights import compute_weights

__all__ = [
    "DEFAULT_BOUNDS",
    "EnsembleWeighting",
    "FitConfig",
    "FitResult",
    "LeastSquaresObjective",
    "Optimizer",
    "ParamBounds",
    "Weighting",
    "adam_descent",
    "compute_weights",
    "fit",
    "fit_ensemble",
    "fit_gd",
    "fit_nls",
    "initialize",
    "levenberg_marquardt",
]
