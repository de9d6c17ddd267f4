from __future__ import annotations

from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..curves import ModelKind
from ..dataio.models import CurvePoint
from ..fitting.models import DEFAULT_BOUNDS, ParamBounds

MAX_CELLS = 100_000_000
# Floats held in memory per chunk of the a-axis
CHUNK_BUDGET = 1_000_000


def grid_oracle_fit(
    kind: ModelKind,
    points: Sequence[CurvePoint],
    resolution: Union[int, Tuple[int, int]] = 101,
    bounds: Optional[ParamBounds] = None,
) -> Tuple[Tuple[float, float], float]:
    """Exhaustive minimum of the unweighted RSS over an evenly spaced parameter grid.

    Only the two-parameter Exp family is supported. Grid axes run from the lower
    to the upper bound inclusive; ties go to the first cell in (a, b) order.

    Returns:
        ``((a, b), rss)`` of the best cell

    Raises:
        ValueError: Another family, or more than 1e8 cells
    """
    kind = ModelKind(kind)
    if kind is not ModelKind.EXP:
        raise ValueError(f"grid oracle supports exp only, got {kind.value}")
    if not points:
        raise ValueError("grid oracle needs points")
    n_a, n_b = (resolution, resolution) if isinstance(resolution, int) else resolution
    if n_a < 1 or n_b < 1:
        raise ValueError("grid resolution must be positive")
    if n_a * n_b > MAX_CELLS:
        raise ValueError(f"grid of {n_a * n_b} cells exceeds the {MAX_CELLS} cell limit")
    bounds = bounds or DEFAULT_BOUNDS[kind]

    a_axis = np.linspace(bounds.lower[0], bounds.upper[0], n_a)
    b_axis = np.linspace(bounds.lower[1], bounds.upper[1], n_b)
    sizes = np.array([p.count for p in points], dtype=float)
    observed = np.array([p.accuracy for p in points], dtype=float)
    powers = sizes[np.newaxis, :] ** b_axis[:, np.newaxis]

    chunk = max(1, CHUNK_BUDGET // (n_b * sizes.size))
    best_rss, best_a, best_b = np.inf, 0, 0
    for start in range(0, n_a, chunk):
        a_chunk = a_axis[start : start + chunk]
        residuals = a_chunk[:, np.newaxis, np.newaxis] * powers[np.newaxis, :, :] - observed
        rss = np.einsum("ijk,ijk->ij", residuals, residuals)
        i, j = np.unravel_index(np.argmin(rss), rss.shape)
        if rss[i, j] < best_rss:
            best_rss, best_a, best_b = float(rss[i, j]), start + int(i), int(j)
    return (float(a_axis[best_a]), float(b_axis[best_b])), best_rss
