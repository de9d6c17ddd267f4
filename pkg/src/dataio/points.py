"""CSV and JSONL learning-curve files.

CSV files carry an optional dataset header comment followed by a column header::

    # samplesize-dataset: {"metadata": {}, "name": "imdb", "total_size": 25000}
    fraction,count,accuracy,n_runs,role
    0.01,250,0.62,3,train

JSONL files start with a dataset header object (``{"dataset": ..., "total_size":
...}``) and hold one point object per following line.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from ..errors import DataFormatError
from .models import CurveDataset, CurvePoint, Role, count_for_fraction, normalize_fraction

logger = logging.getLogger("samplesize.dataio")

COLUMNS = ("fraction", "count", "accuracy", "n_runs", "role")
HEADER_PREFIX = "# samplesize-dataset:"
FORMATS = ("csv", "jsonl")


def _numbered_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            yield number, line


def _blank(value: Any) -> bool:
    return value is None or (isinstance(value, str) and not value.strip())


def _to_float(value: Any, column: str, line: int) -> float:
    try:
        result = float(value)
    except (TypeError, ValueError):
        raise DataFormatError(f"{column} {value!r} is not a number", line) from None
    if not math.isfinite(result):
        raise DataFormatError(f"{column} {value!r} is not finite", line)
    return result


def _to_int(value: Any, column: str, line: int) -> int:
    number = _to_float(value, column, line)
    if number != int(number):
        raise DataFormatError(f"{column} {value!r} is not an integer", line)
    return int(number)


def _build_point(record: Mapping[str, Any], total_size: int, line: int) -> CurvePoint:
    has_fraction = not _blank(record.get("fraction"))
    has_count = not _blank(record.get("count"))
    if not (has_fraction or has_count):
        raise DataFormatError("row needs a fraction or a count", line)
    if _blank(record.get("accuracy")):
        raise DataFormatError("row has no accuracy", line)

    accuracy = _to_float(record["accuracy"], "accuracy", line)
    if not 0.0 <= accuracy <= 1.0:
        raise DataFormatError(f"accuracy {accuracy!r} is outside [0, 1]", line)

    if has_count:
        count = _to_int(record["count"], "count", line)
        if count < 1:
            raise DataFormatError(f"count {count} must be positive", line)
    if has_fraction:
        fraction = _to_float(record["fraction"], "fraction", line)
        if not 0.0 < fraction <= 1.0:
            raise DataFormatError(f"fraction {fraction!r} is outside (0, 1]", line)
        expected = count_for_fraction(fraction, total_size)
        if not has_count:
            count = expected
        elif abs(count - expected) > 1:
            raise DataFormatError(
                f"count {count} disagrees with fraction {fraction!r} of {total_size} (expected {expected})", line
            )
    else:
        fraction = normalize_fraction(count / total_size)
        if fraction > 1.0:
            raise DataFormatError(f"count {count} exceeds the dataset total {total_size}", line)

    n_runs = 1 if _blank(record.get("n_runs")) else _to_int(record["n_runs"], "n_runs", line)
    role = None
    if not _blank(record.get("role")):
        try:
            role = Role(str(record["role"]).strip().lower())
        except ValueError:
            raise DataFormatError(f"unknown role {record['role']!r}", line) from None
    try:
        return CurvePoint(fraction, count, accuracy, n_runs, role)
    except ValueError as exc:
        raise DataFormatError(str(exc), line) from exc


def _resolve_total(
    records: List[Tuple[int, Dict[str, Any]]], declared: Optional[int], argument: Optional[int]
) -> int:
    if argument is not None:
        if declared is not None and declared != argument:
            logger.debug("total size %d overrides the file's %d", argument, declared)
        return int(argument)
    if declared is not None:
        return int(declared)
    counts = [_to_int(r["count"], "count", n) for n, r in records if not _blank(r.get("count"))]
    if len(counts) == len(records) and counts:
        total = max(counts)
        logger.info("no total size declared, using the largest count %d", total)
        return total
    raise DataFormatError("fractions without counts need a declared total size")


def _dataset(
    records: List[Tuple[int, Dict[str, Any]]],
    header: Mapping[str, Any],
    total_size: Optional[int],
    name: Optional[str],
) -> CurveDataset:
    declared = header.get("total_size")
    if declared is not None and (int(declared) != declared or declared < 1):
        raise DataFormatError(f"total_size {declared!r} must be a positive integer", 1)
    total = _resolve_total(records, declared, total_size)

    points = []
    seen: Dict[Tuple[Optional[Role], int], int] = {}
    for line, record in records:
        point = _build_point(record, total, line)
        key = (point.role, point.count)
        if key in seen:
            role = point.role.value if point.role else "unassigned"
            raise DataFormatError(f"duplicate count {point.count} within role {role} (first on line {seen[key]})", line)
        seen[key] = line
        points.append(point)

    return CurveDataset(
        name=name or header.get("name") or "dataset",
        total_size=total,
        points=tuple(points),
        metadata=dict(header.get("metadata") or {}),
    )


def _parse_csv(text: str, total_size: Optional[int], name: Optional[str]) -> CurveDataset:
    header: Dict[str, Any] = {}
    columns: Optional[List[str]] = None
    records: List[Tuple[int, Dict[str, Any]]] = []
    for number, line in _numbered_lines(text):
        if line.lstrip().startswith("#"):
            if line.startswith(HEADER_PREFIX):
                try:
                    header = json.loads(line[len(HEADER_PREFIX):])
                except json.JSONDecodeError as exc:
                    raise DataFormatError(f"bad dataset header: {exc.msg}", number) from exc
                if not isinstance(header, dict):
                    raise DataFormatError("dataset header must be a JSON object", number)
            continue
        fields = next(csv.reader([line]))
        if columns is None:
            columns = [f.strip().lower() for f in fields]
            unknown = [c for c in columns if c not in COLUMNS]
            if unknown:
                raise DataFormatError(f"unknown column(s) {', '.join(unknown)}", number)
            if len(set(columns)) != len(columns):
                raise DataFormatError("duplicate column in header", number)
            if "accuracy" not in columns or not ({"fraction", "count"} & set(columns)):
                raise DataFormatError("header needs accuracy and one of fraction or count", number)
            continue
        if len(fields) != len(columns):
            raise DataFormatError(f"expected {len(columns)} fields, got {len(fields)}", number)
        records.append((number, dict(zip(columns, (f.strip() for f in fields)))))
    if columns is None:
        raise DataFormatError("missing column header")
    return _dataset(records, header, total_size, name)


def _parse_jsonl(text: str, total_size: Optional[int], name: Optional[str]) -> CurveDataset:
    header: Optional[Dict[str, Any]] = None
    records: List[Tuple[int, Dict[str, Any]]] = []
    for number, line in _numbered_lines(text):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"invalid JSON: {exc.msg}", number) from exc
        if not isinstance(obj, dict):
            raise DataFormatError("each line must be a JSON object", number)
        if header is None:
            if "dataset" not in obj:
                raise DataFormatError("first line must be the dataset header object", number)
            header = {"name": obj.get("dataset"), "total_size": obj.get("total_size"), "metadata": obj.get("metadata")}
            continue
        unknown = sorted(set(obj) - set(COLUMNS))
        if unknown:
            raise DataFormatError(f"unknown field(s) {', '.join(unknown)}", number)
        records.append((number, obj))
    if header is None:
        raise DataFormatError("empty JSONL input")
    return _dataset(records, header, total_size, name)


def parse_points(
    text: str,
    fmt: str = "csv",
    total_size: Optional[int] = None,
    name: Optional[str] = None,
) -> CurveDataset:
    """Parse learning-curve points.

    Args:
        text: File contents
        fmt: ``csv`` or ``jsonl``
        total_size: Dataset total, overriding any total declared in the file
        name: Dataset name, overriding any name declared in the file

    Returns:
        Validated dataset sorted by count

    Raises:
        DataFormatError: Malformed input, with the 1-based line number when known
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown points format {fmt!r}")
    if fmt == "jsonl":
        return _parse_jsonl(text, total_size, name)
    return _parse_csv(text, total_size, name)


def _point_record(point: CurvePoint) -> Dict[str, Any]:
    return {
        "fraction": point.fraction,
        "count": point.count,
        "accuracy": point.accuracy,
        "n_runs": point.n_runs,
        "role": point.role.value if point.role else None,
    }


def write_points(dataset: CurveDataset, fmt: str = "csv") -> str:
    """Serialize a dataset so that ``parse_points`` gives it back unchanged."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown points format {fmt!r}")
    if fmt == "jsonl":
        lines = [
            json.dumps(
                {"dataset": dataset.name, "metadata": dataset.metadata, "total_size": dataset.total_size},
                sort_keys=True,
            )
        ]
        lines.extend(json.dumps(_point_record(p)) for p in dataset.points)
        return "\n".join(lines) + "\n"

    buffer = io.StringIO()
    header = {"metadata": dataset.metadata, "name": dataset.name, "total_size": dataset.total_size}
    buffer.write(f"{HEADER_PREFIX} {json.dumps(header, sort_keys=True)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COLUMNS)
    for point in dataset.points:
        record = _point_record(point)
        writer.writerow(
            [
                repr(record["fraction"]),
                record["count"],
                repr(record["accuracy"]),
                record["n_runs"],
                record["role"] or "",
            ]
        )
    return buffer.getvalue()
