from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..curves import CurveModel, ModelKind


class Optimizer(str, Enum):
    NLS = "nls"
    GD = "gd"


class Weighting(str, Enum):
    UNWEIGHTED = "unweighted"
    SIZE_PROPORTIONAL = "size"


class EnsembleWeighting(str, Enum):
    INVERSE_RSS = "inverse-rss"
    UNIFORM = "uniform"


# Open lower ends (b, d of pow4) are represented by a tiny positive bound.
OPEN_LOWER = 1e-12


@dataclass(frozen=True)
class ParamBounds:
    """Box constraints for one family's parameter vector."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if len(lower) != len(upper):
            raise ValueError("lower and upper bounds must have the same length")
        for i, (lo, hi) in enumerate(zip(lower, upper)):
            if not lo < hi:
                raise ValueError(f"bound {i}: lower {lo!r} must be below upper {hi!r}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def clip(self, params: np.ndarray) -> np.ndarray:
        return np.clip(params, self.lower, self.upper)

    def contains(self, params) -> bool:
        return all(lo <= p <= hi for p, lo, hi in zip(params, self.lower, self.upper))


DEFAULT_BOUNDS: Dict[ModelKind, ParamBounds] = {
    ModelKind.EXP: ParamBounds((0.0, -1.0), (2.0, 1.0)),
    ModelKind.INVERSE: ParamBounds((-0.5, 0.0, -5.0), (1.0, 10.0, 0.0)),
    ModelKind.POW4: ParamBounds((0.0, OPEN_LOWER, 1e-6, OPEN_LOWER), (1.5, 10.0, 10.0, 5.0)),
}

DEFAULT_NLS_ITERATIONS = 500
DEFAULT_GD_ITERATIONS = 200


@dataclass(frozen=True)
class FitConfig:
    """Optimizer settings shared by every family fit.

    ``max_iterations=None`` selects the optimizer default (500 for NLS, 200 for
    GD); 0 returns the best starting point unchanged.
    """

    optimizer: Optimizer = Optimizer.NLS
    weighting: Weighting = Weighting.UNWEIGHTED
    max_iterations: Optional[int] = None
    learning_rate: float = 1e-5
    convergence_tol: float = 1e-10
    restarts: int = 5
    rng_seed: int = 0
    param_bounds: Mapping[ModelKind, ParamBounds] = field(default_factory=lambda: dict(DEFAULT_BOUNDS))
    ensemble_weighting: EnsembleWeighting = EnsembleWeighting.INVERSE_RSS
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "optimizer", Optimizer(self.optimizer))
        object.__setattr__(self, "weighting", Weighting(self.weighting))
        object.__setattr__(self, "ensemble_weighting", EnsembleWeighting(self.ensemble_weighting))
        if self.max_iterations is not None and self.max_iterations < 0:
            raise ValueError("max_iterations must be nonnegative")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be an unsigned integer")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ValueError("Adam betas must lie in [0, 1)")
        merged = dict(DEFAULT_BOUNDS)
        merged.update({ModelKind(k): v for k, v in dict(self.param_bounds).items()})
        for kind, bounds in merged.items():
            if len(bounds.lower) != kind.arity:
                raise ValueError(f"{kind.value} bounds need {kind.arity} entries")
        object.__setattr__(self, "param_bounds", merged)

    @property
    def iterations(self) -> int:
        if self.max_iterations is not None:
            return self.max_iterations
        return DEFAULT_GD_ITERATIONS if self.optimizer is Optimizer.GD else DEFAULT_NLS_ITERATIONS

    def bounds_for(self, kind: ModelKind) -> ParamBounds:
        return self.param_bounds[ModelKind(kind)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "optimizer": self.optimizer.value,
            "weighting": self.weighting.value,
            "max_iterations": self.iterations,
            "learning_rate": self.learning_rate,
            "convergence_tol": self.convergence_tol,
            "restarts": self.restarts,
            "rng_seed": self.rng_seed,
            "ensemble_weighting": self.ensemble_weighting.value,
            "param_bounds": {
                kind.value: {"lower": list(b.lower), "upper": list(b.upper)}
                for kind, b in sorted(self.param_bounds.items(), key=lambda kv: kv[0].value)
            },
        }


@dataclass(frozen=True)
class FitResult:
    """Outcome of fitting one family (or the ensemble) to a set of points."""

    model: CurveModel
    train_rss: float
    converged: bool
    iterations_used: int
    restart_index: int
    component_results: Optional[Tuple["FitResult", ...]] = None
    loss_history: Tuple[float, ...] = ()
    initial_rss: float = math.nan
    error: Optional[str] = None
    diagnostics: Tuple[Dict[str, Any], ...] = ()

    @property
    def failed(self) -> bool:
        return self.error is not None

    def components_or_empty(self) -> List["FitResult"]:
        return list(self.component_results or ())
