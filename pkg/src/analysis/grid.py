from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from ..dataio.models import count_for_fraction, normalize_fraction

# Relative slack when checking that fraction steps are equal
SPACING_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SizeGrid:
    """Training-set sizes expressed as fractions of a benchmark's full size."""

    total_size: int
    fractions: Tuple[float, ...]

    def __post_init__(self):
        if int(self.total_size) != self.total_size or self.total_size < 1:
            raise ValueError(f"total_size {self.total_size!r} must be a positive integer")
        fractions = tuple(normalize_fraction(f) for f in self.fractions)
        if not fractions:
            raise ValueError("a size grid needs at least one fraction")
        if any(not (0.0 < f <= 1.0) for f in fractions):
            raise ValueError("grid fractions must lie in (0, 1]")
        if any(b <= a for a, b in zip(fractions, fractions[1:])):
            raise ValueError("grid fractions must be strictly increasing")
        object.__setattr__(self, "total_size", int(self.total_size))
        object.__setattr__(self, "fractions", fractions)

    @classmethod
    def uniform(cls, total_size: int, start: float = 0.01, stop: float = 1.0, step: float = 0.01) -> "SizeGrid":
        """Grid ``start, start + step, ...`` up to and including ``stop``."""
        if not step > 0:
            raise ValueError("step must be positive")
        if stop < start:
            raise ValueError("stop must not be below start")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return cls(total_size, tuple(start + i * step for i in range(n)))

    @property
    def counts(self) -> Tuple[int, ...]:
        return tuple(count_for_fraction(f, self.total_size) for f in self.fractions)

    def __len__(self) -> int:
        return len(self.fractions)

    def is_uniform(self) -> bool:
        if len(self.fractions) < 2:
            return True
        steps = [b - a for a, b in zip(self.fractions, self.fractions[1:])]
        first = steps[0]
        return all(abs(s - first) <= SPACING_TOLERANCE * max(1.0, first) + 1e-12 for s in steps)
