"""Pytest configuration and shared fixtures."""

import os
from typing import Sequence

import pytest

from src.curves import CurveModel, ModelKind, evaluate
from src.dataio import CurvePoint


@pytest.fixture(scope="session", autouse=True)
def _isolate_environment(tmp_path_factory):
    """Keep tests independent of the caller's seed and logging environment."""
    saved = {name: os.environ.pop(name, None) for name in ("SAMPLESIZE_SEED", "SAMPLESIZE_LOG_LEVEL")}
    log_dir = tmp_path_factory.mktemp("samplesize_logs")
    saved["SAMPLESIZE_LOG_PATH"] = os.environ.get("SAMPLESIZE_LOG_PATH")
    os.environ["SAMPLESIZE_LOG_PATH"] = str(log_dir / "tests.log")
    yield
    for name, value in saved.items():
        if value is None:
            os.environ.pop(name, None)
        else:
            os.environ[name] = value


def curve_points(model: CurveModel, counts: Sequence[int], total_size: int = None) -> list:
    """Noiseless points lying exactly on ``model``."""
    total = total_size or max(counts)
    return [CurvePoint(count / total, count, float(evaluate(model, count))) for count in counts]


@pytest.fixture
def inverse_model():
    """Inverse(0.1, 0.5, -0.5): E(N) = 0.9 - 0.5 / sqrt(N)."""
    return CurveModel(ModelKind.INVERSE, (0.1, 0.5, -0.5))


@pytest.fixture
def make_points():
    return curve_points
