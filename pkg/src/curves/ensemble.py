"""Combining the three base families into one ensemble curve."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .models import CurveModel, EnsembleWeights, ModelKind

RSS_FLOOR = 1e-12


def combine_ensemble(
    exp: CurveModel, inv: CurveModel, pow4: CurveModel, weights: EnsembleWeights
) -> CurveModel:
    """Build an ensemble whose prediction is the weighted sum of the three components.

    Args:
        exp: Fitted exponential model
        inv: Fitted inverse power law model
        pow4: Fitted power4 model
        weights: Convex combination weights

    Returns:
        CurveModel of kind ``ENSEMBLE``
    """
    for model, expected in ((exp, ModelKind.EXP), (inv, ModelKind.INVERSE), (pow4, ModelKind.POW4)):
        if model.kind is not expected:
            raise ValueError(f"expected a {expected.value} component, got {model.kind.value}")
        if len(model.params) != expected.arity:
            raise ValueError(
                f"{expected.value} component has {len(model.params)} parameters, expected {expected.arity}"
            )
    return CurveModel(
        ModelKind.ENSEMBLE,
        exp.params + inv.params + pow4.params + weights.as_tuple(),
    )


def _normalize(raw: Sequence[float]) -> EnsembleWeights:
    total = math.fsum(raw)
    if total <= 0.0:
        raise ValueError("at least one ensemble component must carry weight")
    weights = [value / total for value in raw]
    # The last positive weight absorbs rounding so the three sum to 1
    last = max(i for i, value in enumerate(raw) if value > 0.0)
    others = math.fsum(w for i, w in enumerate(weights) if i != last)
    weights[last] = max(0.0, 1.0 - others)
    return EnsembleWeights(*weights)


def weights_from_rss(rss: Sequence[Optional[float]]) -> EnsembleWeights:
    """Weights proportional to 1/RSS (RSS floored at 1e-12), normalized to sum to 1.

    ``None`` or non-finite entries mark failed components, which get weight 0.
    """
    if len(rss) != 3:
        raise ValueError(f"expected 3 component RSS values, got {len(rss)}")
    raw = [
        0.0 if value is None or not math.isfinite(value) else 1.0 / max(float(value), RSS_FLOOR)
        for value in rss
    ]
    return _normalize(raw)


def uniform_weights(available: Sequence[bool] = (True, True, True)) -> EnsembleWeights:
    """Equal weights over the available components."""
    if len(available) != 3:
        raise ValueError(f"expected 3 availability flags, got {len(available)}")
    return _normalize([1.0 if ok else 0.0 for ok in available])
