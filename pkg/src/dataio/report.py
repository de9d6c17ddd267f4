"""JSON fit reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from .. import __version__
from ..analysis.reports import EvaluationReport, RequiredSize, SaturationReport
from ..curves import CurveModel, ModelKind, asymptote
from ..errors import DataFormatError
from ..fitting.models import FitConfig, FitResult
from .models import CurveDataset, SplitSchedule

FORMAT_VERSION = 1
TOOL_NAME = "sample-size"


def _clean(value: Any) -> Any:
    """JSON-ready copy with non-finite floats as None."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def _model_block(model: CurveModel) -> Dict[str, Any]:
    block: Dict[str, Any] = {
        "kind": model.kind.value,
        "params": dict(zip(model.kind.param_names, model.params)),
        "param_vector": list(model.params),
    }
    if model.kind is ModelKind.ENSEMBLE:
        w = model.weights
        block["weights"] = {"exp": w.w_exp, "inverse": w.w_inv, "pow4": w.w_pow4}
    limit = asymptote(model)
    block["asymptote"] = limit
    block["divergent"] = limit is None
    return block


def _result_block(result: FitResult) -> Dict[str, Any]:
    return {
        "model": _model_block(result.model),
        "train_rss": result.train_rss,
        "initial_rss": result.initial_rss,
        "converged": result.converged,
        "iterations_used": result.iterations_used,
        "restart_index": result.restart_index,
        "error": result.error,
        "diagnostics": list(result.diagnostics),
    }


def write_fit_report(
    result: FitResult,
    config: FitConfig,
    dataset: Optional[CurveDataset] = None,
    schedule: Optional[SplitSchedule] = None,
    evaluation: Optional[EvaluationReport] = None,
    saturation: Optional[SaturationReport] = None,
    required: Optional[RequiredSize] = None,
) -> str:
    """Render a fit and its analysis outputs as a JSON document.

    Keys are sorted and floats are written at full precision, so equal inputs
    give byte-identical documents. Non-finite numbers become ``null``.
    """
    document: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "dataset": None if dataset is None else {"name": dataset.name, "total_size": dataset.total_size},
        "fit": _result_block(result),
        "components": [_result_block(c) for c in result.components_or_empty()],
        "config": config.to_dict(),
        "schedule": None if schedule is None else schedule.to_dict(),
        "evaluation": None if evaluation is None else evaluation.to_dict(),
        "saturation": None if saturation is None else saturation.to_dict(),
        "required_size": None if required is None else required.to_dict(),
    }
    return json.dumps(_clean(document), sort_keys=True, indent=2, allow_nan=False) + "\n"


@dataclass(frozen=True)
class FitReport:
    """A fit report read back from JSON."""

    model: CurveModel
    total_size: Optional[int]
    config: Dict[str, Any] = field(default_factory=dict)
    schedule: Optional[SplitSchedule] = None
    document: Dict[str, Any] = field(default_factory=dict)


def read_fit_report(text: str) -> FitReport:
    """Parse a document produced by ``write_fit_report``.

    Raises:
        DataFormatError: Not JSON, an unsupported ``format_version`` or an invalid model
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"fit report is not valid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(document, dict):
        raise DataFormatError("fit report must be a JSON object")
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise DataFormatError(f"unsupported fit report format_version {version!r}")
    try:
        block = document["fit"]["model"]
        model = CurveModel(ModelKind(block["kind"]), tuple(block["param_vector"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"fit report has no valid model: {exc}") from exc

    dataset = document.get("dataset") or {}
    schedule = None
    if document.get("schedule"):
        s = document["schedule"]
        try:
            schedule = SplitSchedule(
                tuple(s["train_fractions"]), tuple(s["test_fractions"]), tuple(s.get("gap_fractions", ()))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataFormatError(f"fit report has an invalid schedule: {exc}") from exc
    return FitReport(
        model=model,
        total_size=dataset.get("total_size"),
        config=document.get("config") or {},
        schedule=schedule,
        document=document,
    )
