"""Ablations over training-set size, curve family and data weighting.

Each experiment fits on a prefix of a dataset's points and reports the MAE on
the held-out points at or above ``test_min``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

from ..analysis import mae
from ..curves import BASE_KINDS, ModelKind
from ..dataio.models import CurveDataset, CurvePoint, normalize_fraction
from ..errors import SampleSizeError
from ..fitting import FitConfig, Optimizer, Weighting, fit

logger = logging.getLogger("samplesize.experiments")

WEIGHTING_SWEEP_FRACTIONS = (0.05, 0.10, 0.25, 0.50)
DEFAULT_TEST_MIN = 0.55
TSV_COLUMNS = ("experiment", "setting", "kind", "optimizer", "weighting", "mae")


@dataclass(frozen=True)
class AblationRow:
    experiment: str
    setting: str
    kind: str
    optimizer: str
    weighting: str
    mae: Optional[float]
    error: Optional[str] = None


def _percent(fraction: float) -> str:
    return f"{normalize_fraction(fraction * 100):g}%"


def _train_prefix(dataset: CurveDataset, train_max: float) -> List[CurvePoint]:
    limit = normalize_fraction(train_max)
    return [p for p in dataset.points if normalize_fraction(p.fraction) <= limit]


def _held_out(dataset: CurveDataset, test_min: float) -> List[CurvePoint]:
    limit = normalize_fraction(test_min)
    points = [p for p in dataset.points if normalize_fraction(p.fraction) >= limit]
    if not points:
        raise ValueError(f"{dataset.name} has no points at or above fraction {test_min:g}")
    return points


def _run(
    experiment: str,
    setting: str,
    kind: ModelKind,
    train: Sequence[CurvePoint],
    test: Sequence[CurvePoint],
    config: FitConfig,
) -> AblationRow:
    kind = ModelKind(kind)
    try:
        result = fit(kind, train, config)
        error = mae(result.model, test, [p.fraction for p in train]).mae
        message = None
    except (SampleSizeError, ValueError) as exc:
        logger.warning("%s %s %s failed: %s", experiment, setting, kind.value, exc)
        error, message = None, str(exc)
    logger.info("%s %s %s: mae=%s", experiment, setting, kind.value, error)
    return AblationRow(
        experiment=experiment,
        setting=setting,
        kind=kind.value,
        optimizer=config.optimizer.value,
        weighting=config.weighting.value,
        mae=error,
        error=message,
    )


def sample_size_effect(
    dataset: CurveDataset,
    train_max_fractions: Sequence[float] = (0.10, 0.50),
    config: Optional[FitConfig] = None,
    test_min: float = DEFAULT_TEST_MIN,
) -> List[AblationRow]:
    """Ensemble test MAE when fitting on progressively larger prefixes of the data."""
    config = config or FitConfig()
    test = _held_out(dataset, test_min)
    return [
        _run("sample-size", _percent(f), ModelKind.ENSEMBLE, _train_prefix(dataset, f), test, config)
        for f in train_max_fractions
    ]


def function_comparison(
    dataset: CurveDataset,
    config: Optional[FitConfig] = None,
    train_max: float = 0.10,
    test_min: float = DEFAULT_TEST_MIN,
) -> List[AblationRow]:
    """Test MAE of every family and the ensemble fitted on the same prefix."""
    config = config or FitConfig()
    train = _train_prefix(dataset, train_max)
    test = _held_out(dataset, test_min)
    return [
        _run("functions", _percent(train_max), kind, train, test, config)
        for kind in BASE_KINDS + (ModelKind.ENSEMBLE,)
    ]


def weighting_comparison(
    dataset: CurveDataset,
    optimizer: Optimizer = Optimizer.NLS,
    train_fractions: Optional[Sequence[float]] = None,
    config: Optional[FitConfig] = None,
    test_min: float = DEFAULT_TEST_MIN,
) -> List[AblationRow]:
    """Unweighted against size-proportional fits of each base family.

    ``train_fractions`` lists the prefix sizes to try; it defaults to 10% only.
    Pass ``WEIGHTING_SWEEP_FRACTIONS`` for the 5/10/25/50% sweep.
    """
    config = replace(config or FitConfig(), optimizer=Optimizer(optimizer))
    test = _held_out(dataset, test_min)
    rows = []
    for train_max in train_fractions or (0.10,):
        train = _train_prefix(dataset, train_max)
        for kind in BASE_KINDS:
            for weighting in (Weighting.UNWEIGHTED, Weighting.SIZE_PROPORTIONAL):
                rows.append(
                    _run("weighting", _percent(train_max), kind, train, test, replace(config, weighting=weighting))
                )
    return rows


def format_ablation_tsv(rows: Sequence[AblationRow]) -> str:
    """Tab-separated table, header first; failed rows leave ``mae`` blank."""
    lines = ["\t".join(TSV_COLUMNS)]
    for row in rows:
        value = "" if row.mae is None else repr(row.mae)
        lines.append("\t".join((row.experiment, row.setting, row.kind, row.optimizer, row.weighting, value)))
    return "\n".join(lines) + "\n"
