from __future__ import annotations

import logging
from dataclasses import replace

from .models import CurveDataset, Role, SplitSchedule, normalize_fraction

logger = logging.getLogger("samplesize.dataio")


def default_schedule() -> SplitSchedule:
    """Train on 1%..10% at 1%, test on 55%..100% at 5%, leave 15%..50% untouched."""
    return SplitSchedule.from_ranges(0.10, 0.01, 0.55, 0.05)


def assign_roles(dataset: CurveDataset, schedule: SplitSchedule) -> CurveDataset:
    """Give every point without a role the role its fraction has on ``schedule``.

    Fractions on no grid become train at or below the schedule's last train
    fraction, test at or above its first test fraction, and stay unassigned
    otherwise. Points that already carry a role keep it.
    """
    points = []
    unassigned = 0
    for point in dataset.points:
        if point.role is not None:
            points.append(point)
            continue
        role = schedule.role_for(point.fraction)
        fraction = normalize_fraction(point.fraction)
        if role is None and schedule.train_max is not None and fraction <= schedule.train_max:
            role = Role.TRAIN
        elif role is None and schedule.test_min is not None and fraction >= schedule.test_min:
            role = Role.TEST
        if role is None:
            unassigned += 1
        points.append(point if role is None else replace(point, role=role))
    if unassigned:
        logger.info("%d points of %s fall in no schedule region", unassigned, dataset.name)
    return dataset.with_points(points)
