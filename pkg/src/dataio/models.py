"""Learning-curve measurement types."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

FRACTION_DECIMALS = 10


class Role(str, Enum):
    """Where a measurement sits in the split schedule."""

    TRAIN = "train"
    TEST = "test"
    GAP = "gap"


def count_for_fraction(fraction: float, total_size: int) -> int:
    """Absolute example count for a fraction of the data, rounded half up, at least 1."""
    return max(1, int(math.floor(fraction * total_size + 0.5)))


def normalize_fraction(fraction: float) -> float:
    return round(float(fraction), FRACTION_DECIMALS)


@dataclass(frozen=True)
class CurvePoint:
    """One measurement: a training-set size paired with the observed accuracy."""

    fraction: float
    count: int
    accuracy: float
    n_runs: int = 1
    role: Optional[Role] = None

    def __post_init__(self):
        if not (0.0 < self.fraction <= 1.0):
            raise ValueError(f"fraction {self.fraction!r} must lie in (0, 1]")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count {self.count!r} must be a positive integer")
        if not math.isfinite(self.accuracy) or not (0.0 <= self.accuracy <= 1.0):
            raise ValueError(f"accuracy {self.accuracy!r} must lie in [0, 1]")
        if int(self.n_runs) != self.n_runs or self.n_runs < 1:
            raise ValueError(f"n_runs {self.n_runs!r} must be a positive integer")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "n_runs", int(self.n_runs))
        if self.role is not None:
            object.__setattr__(self, "role", Role(self.role))


@dataclass(frozen=True)
class SplitSchedule:
    """Fraction grids for fitting (train), held-out evaluation (test) and the untouched gap."""

    train_fractions: Tuple[float, ...]
    test_fractions: Tuple[float, ...]
    gap_fractions: Tuple[float, ...] = ()

    def __post_init__(self):
        for name in ("train_fractions", "test_fractions", "gap_fractions"):
            values = tuple(sorted(normalize_fraction(f) for f in getattr(self, name)))
            if any(not (0.0 < f <= 1.0) for f in values):
                raise ValueError(f"{name} must lie in (0, 1]")
            if len(set(values)) != len(values):
                raise ValueError(f"{name} contains duplicates")
            object.__setattr__(self, name, values)
        train, test, gap = set(self.train_fractions), set(self.test_fractions), set(self.gap_fractions)
        if train & test or train & gap or test & gap:
            raise ValueError("train, test and gap fractions must be disjoint")
        if self.train_fractions and self.test_fractions:
            if self.train_fractions[-1] >= self.test_fractions[0]:
                raise ValueError("every train fraction must be below every test fraction")

    @classmethod
    def from_ranges(
        cls,
        train_max: float = 0.10,
        train_step: float = 0.01,
        test_min: float = 0.55,
        test_step: float = 0.05,
    ) -> "SplitSchedule":
        """Train on ``train_step`` multiples up to ``train_max``, test from ``test_min`` to 1.

        The gap holds the ``test_step`` multiples strictly between the two regions.
        """
        if not (train_step > 0 and test_step > 0):
            raise ValueError("schedule steps must be positive")
        if not (0.0 < train_max < test_min <= 1.0):
            raise ValueError("schedule needs 0 < train_max < test_min <= 1")
        train = [k * train_step for k in range(1, _steps_upto(train_max, train_step) + 1)]
        test = [test_min + k * test_step for k in range(_steps_upto(1.0 - test_min, test_step) + 1)]
        gap = [
            k * test_step
            for k in range(1, _steps_upto(1.0, test_step) + 1)
            if normalize_fraction(train_max) < normalize_fraction(k * test_step) < normalize_fraction(test_min)
        ]
        return cls(tuple(train), tuple(test), tuple(gap))

    @property
    def train_max(self) -> Optional[float]:
        return self.train_fractions[-1] if self.train_fractions else None

    @property
    def test_min(self) -> Optional[float]:
        return self.test_fractions[0] if self.test_fractions else None

    @property
    def all_fractions(self) -> Tuple[float, ...]:
        return tuple(sorted(self.train_fractions + self.gap_fractions + self.test_fractions))

    def role_for(self, fraction: float) -> Optional[Role]:
        """Role of a fraction on this schedule, or None when it is on no grid."""
        key = normalize_fraction(fraction)
        if key in self.train_fractions:
            return Role.TRAIN
        if key in self.test_fractions:
            return Role.TEST
        if key in self.gap_fractions:
            return Role.GAP
        return None

    def to_dict(self) -> Dict[str, List[float]]:
        return {
            "train_fractions": list(self.train_fractions),
            "gap_fractions": list(self.gap_fractions),
            "test_fractions": list(self.test_fractions),
        }


@dataclass(frozen=True)
class CurveDataset:
    """A named, validated collection of curve points sorted by count."""

    name: str
    total_size: int
    points: Tuple[CurvePoint, ...]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if int(self.total_size) != self.total_size or self.total_size < 1:
            raise ValueError(f"total_size {self.total_size!r} must be a positive integer")
        object.__setattr__(self, "total_size", int(self.total_size))
        ordered = tuple(sorted(self.points, key=lambda p: (p.count, _role_order(p.role))))
        seen = set()
        for point in ordered:
            key = (point.role, point.count)
            if key in seen:
                role = point.role.value if point.role else "unassigned"
                raise ValueError(f"duplicate count {point.count} within role {role}")
            seen.add(key)
        object.__setattr__(self, "points", ordered)
        object.__setattr__(self, "metadata", dict(self.metadata))

    def by_role(self, role: Role) -> List[CurvePoint]:
        return [p for p in self.points if p.role is role]

    def train_points(self) -> List[CurvePoint]:
        return self.by_role(Role.TRAIN)

    def test_points(self) -> List[CurvePoint]:
        return self.by_role(Role.TEST)

    def with_points(self, points: Iterable[CurvePoint]) -> "CurveDataset":
        return replace(self, points=tuple(points))


def _steps_upto(limit: float, step: float) -> int:
    return int(math.floor(limit / step + 1e-9))


def _role_order(role: Optional[Role]) -> int:
    return {None: 0, Role.TRAIN: 1, Role.GAP: 2, Role.TEST: 3}[role]
