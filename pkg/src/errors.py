"""Exception types shared across the sample-size packages."""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence


class SampleSizeError(Exception):
    """Base class for errors raised by the toolkit."""


class EvaluationDomainError(SampleSizeError, ValueError):
    """A curve formula was evaluated outside its real domain.

    Args:
        kind: Model family name
        params: The offending parameter vector
        size: Training-set size at which evaluation failed
        detail: Human readable description of the violated condition
    """

    def __init__(self, kind: str, params: Sequence[float], size: float, detail: str):
        self.kind = kind
        self.params = tuple(float(p) for p in params)
        self.size = size
        self.detail = detail
        formatted = ", ".join(f"{p:.6g}" for p in self.params)
        super().__init__(f"{kind}({formatted}) undefined at N={size:g}: {detail}")


class FitError(SampleSizeError):
    """Fitting could not produce a model.

    ``diagnostics`` holds one dict per restart (``restart_index``, ``reason`` and,
    where relevant, ``iteration``).
    """

    def __init__(self, message: str, diagnostics: Optional[List[Dict[str, Any]]] = None):
        self.diagnostics = list(diagnostics or [])
        if self.diagnostics:
            details = "; ".join(
                f"restart {d.get('restart_index')}: {d.get('reason')}" for d in self.diagnostics
            )
            message = f"{message} ({details})"
        super().__init__(message)


class DataFormatError(SampleSizeError, ValueError):
    """Malformed learning-curve input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ProbeError(SampleSizeError):
    """A probe callback failed for one (fraction, seed) pair."""

    def __init__(self, fraction: float, seed: int, reason: str):
        self.fraction = fraction
        self.seed = seed
        super().__init__(f"probe failed at fraction={fraction:g}, seed={seed}: {reason}")
