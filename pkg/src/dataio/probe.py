"""Collecting learning-curve points from an external trainer."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Sequence, Tuple

from tenacity import Retrying, stop_after_attempt, wait_exponential

from ..errors import ProbeError
from .models import CurveDataset, CurvePoint, SplitSchedule, count_for_fraction

logger = logging.getLogger("samplesize.probe")

Probe = Callable[[float, int], float]

DEFAULT_SEEDS = (0, 1, 2)


def _measure(probe: Probe, fraction: float, seed: int, attempts: int, retry_wait: float) -> float:
    retrying = Retrying(
        stop=stop_after_attempt(attempts),
        wait=wait_exponential(multiplier=retry_wait, min=0, max=max(retry_wait * 8, 0)),
        reraise=True,
    )
    try:
        value = retrying(probe, fraction, seed)
    except Exception as exc:
        raise ProbeError(fraction, seed, f"{type(exc).__name__}: {exc}") from exc
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise ProbeError(fraction, seed, f"returned non-numeric {value!r}") from exc
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise ProbeError(fraction, seed, f"returned accuracy {value!r} outside [0, 1]")
    return value


def run_probe(
    probe: Probe,
    schedule: SplitSchedule,
    total_size: int,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    name: str = "probe",
    max_workers: int = 1,
    attempts: int = 3,
    retry_wait: float = 0.5,
) -> CurveDataset:
    """Measure accuracy at every schedule fraction, averaged over seeds.

    Each ``(fraction, seed)`` pair is tried up to ``attempts`` times with
    exponential backoff. With ``max_workers > 1`` the pairs run on a thread
    pool; results are reduced in sorted ``(fraction, seed)`` order either way.

    Args:
        probe: Callable mapping ``(fraction, seed)`` to an accuracy in [0, 1]
        schedule: Fractions to measure, and the role of each
        total_size: Full training-set size, used for point counts
        seeds: Seeds averaged per fraction
        name: Dataset name
        max_workers: Thread pool size
        attempts: Tries per pair before giving up
        retry_wait: Backoff multiplier in seconds

    Returns:
        Dataset with one point per schedule fraction and ``n_runs = len(seeds)``

    Raises:
        ProbeError: The callback failed for a pair, naming the pair
    """
    seeds = sorted(int(s) for s in seeds)
    if not seeds:
        raise ValueError("run_probe needs at least one seed")
    if len(set(seeds)) != len(seeds):
        raise ValueError(f"duplicate seeds in {seeds}")
    if max_workers < 1:
        raise ValueError("max_workers must be at least 1")
    if attempts < 1:
        raise ValueError("attempts must be at least 1")
    pairs = [(fraction, seed) for fraction in schedule.all_fractions for seed in seeds]
    logger.info("probing %d fractions x %d seeds", len(schedule.all_fractions), len(seeds))

    results: Dict[Tuple[float, int], float] = {}
    if max_workers == 1:
        for fraction, seed in pairs:
            results[(fraction, seed)] = _measure(probe, fraction, seed, attempts, retry_wait)
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {pair: pool.submit(_measure, probe, pair[0], pair[1], attempts, retry_wait) for pair in pairs}
            for pair in pairs:
                results[pair] = futures[pair].result()

    points = []
    for fraction in schedule.all_fractions:
        accuracy = math.fsum(results[(fraction, seed)] for seed in seeds) / len(seeds)
        points.append(
            CurvePoint(
                fraction=fraction,
                count=count_for_fraction(fraction, total_size),
                accuracy=min(1.0, max(0.0, accuracy)),
                n_runs=len(seeds),
                role=schedule.role_for(fraction),
            )
        )
        logger.debug("fraction %g: mean accuracy %.6f over %d seeds", fraction, accuracy, len(seeds))
    return CurveDataset(name=name, total_size=total_size, points=tuple(points), metadata={"seeds": list(seeds)})
