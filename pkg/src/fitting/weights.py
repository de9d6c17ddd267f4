"""Per-point loss weights."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..dataio.models import CurvePoint
from .models import Weighting


def compute_weights(points: Sequence[CurvePoint], mode: Weighting) -> np.ndarray:
    """Loss weights for the training points, normalized to sum to the point count.

    ``UNWEIGHTED`` gives all ones. ``SIZE_PROPORTIONAL`` gives ``size / mean(size)``
    so that later, larger training sizes dominate the loss.

    Args:
        points: Training points
        mode: Weighting scheme

    Returns:
        Array with one nonnegative weight per point
    """
    if not points:
        raise ValueError("cannot weight an empty point list")
    mode = Weighting(mode)
    sizes = np.array([p.count for p in points], dtype=float)
    if np.any(sizes <= 0):
        raise ValueError("training sizes must be positive")
    if mode is Weighting.UNWEIGHTED:
        return np.ones_like(sizes)
    return sizes / np.mean(sizes)
