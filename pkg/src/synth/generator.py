"""Synthetic learning curves drawn from a known model."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..curves import CurveModel, evaluate
from ..dataio.models import CurveDataset, CurvePoint, SplitSchedule, count_for_fraction
from ..dataio.schedule import default_schedule

logger = logging.getLogger("samplesize.synth")


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian accuracy noise; ``size_decay`` scales sigma by ``1/sqrt(count)``."""

    sigma0: float = 0.0
    size_decay: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.sigma0) and self.sigma0 >= 0.0):
            raise ValueError(f"sigma0 {self.sigma0!r} must be a nonnegative number")

    @property
    def noiseless(self) -> bool:
        return self.sigma0 == 0.0

    def sigmas(self, counts: np.ndarray) -> np.ndarray:
        counts = np.asarray(counts, dtype=float)
        if self.size_decay:
            return self.sigma0 / np.sqrt(counts)
        return np.full(counts.shape, self.sigma0)


@dataclass(frozen=True)
class SynthSpec:
    generator: CurveModel
    total_size: int
    schedule: SplitSchedule = field(default_factory=default_schedule)
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    rng_seed: int = 0
    name: Optional[str] = None

    def __post_init__(self):
        if int(self.total_size) != self.total_size or self.total_size < 1:
            raise ValueError(f"total_size {self.total_size!r} must be a positive integer")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be an unsigned integer")


def generate(spec: SynthSpec) -> CurveDataset:
    """Sample one dataset: the generator's value at each scheduled count plus noise, clamped to [0, 1].

    Raises:
        EvaluationDomainError: The generator is undefined at a scheduled count
    """
    fractions = spec.schedule.all_fractions
    counts = np.array([count_for_fraction(f, spec.total_size) for f in fractions], dtype=float)
    values = np.asarray(evaluate(spec.generator, counts), dtype=float)
    if not spec.noise.noiseless:
        rng = np.random.default_rng(spec.rng_seed)
        values = values + rng.normal(0.0, 1.0, size=values.shape) * spec.noise.sigmas(counts)
    values = np.clip(values, 0.0, 1.0)

    points = tuple(
        CurvePoint(
            fraction=fraction,
            count=int(count),
            accuracy=float(value),
            role=spec.schedule.role_for(fraction),
        )
        for fraction, count, value in zip(fractions, counts, values)
    )
    name = spec.name or f"synth-{spec.generator.kind.value}-{spec.rng_seed}"
    logger.debug("generated %s with %d points", name, len(points))
    return CurveDataset(
        name=name,
        total_size=spec.total_size,
        points=points,
        metadata={
            "generator": {"kind": spec.generator.kind.value, "params": list(spec.generator.params)},
            "noise": {"sigma0": spec.noise.sigma0, "size_decay": spec.noise.size_decay},
            "rng_seed": spec.rng_seed,
        },
    )
