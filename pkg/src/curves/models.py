"""Parametric learning-curve families.

Every family maps a training-set size N (absolute example count) to an
expected accuracy on the [0, 1] scale:

    exp      a * N**b
    inverse  (1 - a) - b * N**c
    pow4     a - (b*N + c)**(-d)
    ensemble w_exp * exp + w_inv * inverse + w_pow4 * pow4

Values are returned exactly as the formula gives them; clamping to [0, 1]
happens only when results are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import EvaluationDomainError

SizeLike = Union[int, float, Sequence[float], np.ndarray]

WEIGHT_SUM_TOLERANCE = 1e-12


class ModelKind(str, Enum):
    """Learning-curve family tag."""

    EXP = "exp"
    INVERSE = "inverse"
    POW4 = "pow4"
    ENSEMBLE = "ensemble"

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        """Parse a family name, accepting the short alias ``inv``."""
        normalized = (name or "").strip().lower()
        if normalized == "inv":
            normalized = "inverse"
        try:
            return cls(normalized)
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown model kind {name!r} (expected one of: {valid})") from None

    @property
    def arity(self) -> int:
        return ARITY[self]

    @property
    def param_names(self) -> Tuple[str, ...]:
        return PARAM_NAMES[self]


BASE_KINDS: Tuple[ModelKind, ...] = (ModelKind.EXP, ModelKind.INVERSE, ModelKind.POW4)

ARITY = {
    ModelKind.EXP: 2,
    ModelKind.INVERSE: 3,
    ModelKind.POW4: 4,
    # 2 + 3 + 4 component parameters followed by 3 combination weights
    ModelKind.ENSEMBLE: 12,
}

PARAM_NAMES = {
    ModelKind.EXP: ("a", "b"),
    ModelKind.INVERSE: ("a", "b", "c"),
    ModelKind.POW4: ("a", "b", "c", "d"),
    ModelKind.ENSEMBLE: (
        "exp.a",
        "exp.b",
        "inverse.a",
        "inverse.b",
        "inverse.c",
        "pow4.a",
        "pow4.b",
        "pow4.c",
        "pow4.d",
        "w_exp",
        "w_inv",
        "w_pow4",
    ),
}


@dataclass(frozen=True)
class EnsembleWeights:
    """Convex combination weights for the three base families."""

    w_exp: float
    w_inv: float
    w_pow4: float

    def __post_init__(self):
        values = self.as_tuple()
        for name, value in zip(("w_exp", "w_inv", "w_pow4"), values):
            if not math.isfinite(value) or value < 0.0 or value > 1.0:
                raise ValueError(f"ensemble weight {name}={value!r} must lie in [0, 1]")
        if abs(sum(values) - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise ValueError(f"ensemble weights must sum to 1, got {sum(values)!r}")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (float(self.w_exp), float(self.w_inv), float(self.w_pow4))

    @classmethod
    def uniform(cls) -> "EnsembleWeights":
        third = 1.0 / 3.0
        return cls(third, third, 1.0 - 2.0 * third)


@dataclass(frozen=True)
class CurveModel:
    """A family tag plus its parameter vector.

    For ``ENSEMBLE`` the vector is the Exp, Inverse and Pow4 parameters in that
    order, followed by the three combination weights.
    """

    kind: ModelKind
    params: Tuple[float, ...]

    def __post_init__(self):
        kind = ModelKind(self.kind)
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", params)
        if len(params) != kind.arity:
            raise ValueError(
                f"{kind.value} expects {kind.arity} parameters, got {len(params)}"
            )
        for name, value in zip(kind.param_names, params):
            if not math.isfinite(value):
                raise ValueError(f"{kind.value} parameter {name}={value!r} is not finite")
        if kind is ModelKind.ENSEMBLE:
            # Validates nonnegativity and the unit sum
            EnsembleWeights(*params[9:])

    @property
    def components(self) -> Tuple["CurveModel", "CurveModel", "CurveModel"]:
        """Component models of an ensemble, in (exp, inverse, pow4) order."""
        if self.kind is not ModelKind.ENSEMBLE:
            raise ValueError(f"{self.kind.value} model has no components")
        p = self.params
        return (
            CurveModel(ModelKind.EXP, p[0:2]),
            CurveModel(ModelKind.INVERSE, p[2:5]),
            CurveModel(ModelKind.POW4, p[5:9]),
        )

    @property
    def weights(self) -> EnsembleWeights:
        if self.kind is not ModelKind.ENSEMBLE:
            raise ValueError(f"{self.kind.value} model has no ensemble weights")
        return EnsembleWeights(*self.params[9:])

    def evaluate(self, size: SizeLike):
        return evaluate(self, size)

    def param_gradient(self, size: SizeLike) -> np.ndarray:
        return param_gradient(self, size)


def _as_sizes(size: SizeLike) -> np.ndarray:
    sizes = np.asarray(size, dtype=float)
    if not np.all(np.isfinite(sizes)) or np.any(sizes <= 0):
        raise ValueError(f"training sizes must be positive and finite, got {size!r}")
    return sizes


def _pow4_base(params: Tuple[float, ...], sizes: np.ndarray, strict: bool) -> np.ndarray:
    """Return b*N + c, raising when the power with exponent -d is undefined.

    ``strict`` demands a positive base for every exponent (needed for ln(base)).
    """
    a, b, c, d = params
    base = b * sizes + c
    if strict or not float(d).is_integer():
        bad = base <= 0
        detail = "b*N + c must be positive"
    else:
        bad = (base == 0) & (d > 0)
        detail = "b*N + c must be nonzero"
    if np.any(bad):
        offending = float(np.atleast_1d(sizes)[np.argmax(np.atleast_1d(bad))])
        raise EvaluationDomainError(ModelKind.POW4.value, params, offending, detail)
    return base


def _evaluate_base(kind: ModelKind, params: Tuple[float, ...], sizes: np.ndarray) -> np.ndarray:
    if kind is ModelKind.EXP:
        a, b = params
        return a * np.power(sizes, b)
    if kind is ModelKind.INVERSE:
        a, b, c = params
        return (1.0 - a) - b * np.power(sizes, c)
    if kind is ModelKind.POW4:
        a, b, c, d = params
        base = _pow4_base(params, sizes, strict=False)
        return a - np.power(base, -d)
    raise ValueError(f"{kind.value} is not a base family")


def _jacobian_base(kind: ModelKind, params: Tuple[float, ...], sizes: np.ndarray) -> np.ndarray:
    if kind is ModelKind.EXP:
        a, b = params
        nb = np.power(sizes, b)
        return np.stack([nb, a * nb * np.log(sizes)], axis=-1)
    if kind is ModelKind.INVERSE:
        a, b, c = params
        nc = np.power(sizes, c)
        return np.stack([-np.ones_like(sizes), -nc, -b * nc * np.log(sizes)], axis=-1)
    if kind is ModelKind.POW4:
        a, b, c, d = params
        base = _pow4_base(params, sizes, strict=True)
        powered = np.power(base, -d)
        scaled = d * powered / base
        return np.stack(
            [np.ones_like(sizes), scaled * sizes, scaled, powered * np.log(base)], axis=-1
        )
    raise ValueError(f"{kind.value} is not a base family")


def _ensemble_terms(model: CurveModel, sizes: np.ndarray):
    """Yield (weight, values, jacobian) per component; out-of-domain zero-weight parts drop out."""
    for component, weight in zip(model.components, model.weights.as_tuple()):
        try:
            values = _evaluate_base(component.kind, component.params, sizes)
            jac = _jacobian_base(component.kind, component.params, sizes)
        except EvaluationDomainError:
            if weight > 0.0:
                raise
            values = np.zeros_like(sizes)
            jac = np.zeros(sizes.shape + (component.kind.arity,))
        yield weight, values, jac


def _evaluate_array(model: CurveModel, sizes: np.ndarray) -> np.ndarray:
    if model.kind is not ModelKind.ENSEMBLE:
        return _evaluate_base(model.kind, model.params, sizes)
    total = np.zeros_like(sizes)
    for component, weight in zip(model.components, model.weights.as_tuple()):
        if weight == 0.0:
            continue
        total = total + weight * _evaluate_base(component.kind, component.params, sizes)
    return total


def jacobian(model: CurveModel, sizes: SizeLike) -> np.ndarray:
    """Partial derivatives of the formula, shape ``sizes.shape + (arity,)``."""
    sizes = _as_sizes(sizes)
    if model.kind is not ModelKind.ENSEMBLE:
        return _jacobian_base(model.kind, model.params, sizes)
    blocks = []
    weight_columns = []
    for weight, values, jac in _ensemble_terms(model, sizes):
        blocks.append(weight * jac)
        weight_columns.append(values[..., np.newaxis])
    return np.concatenate(blocks + weight_columns, axis=-1)


def evaluate(model: CurveModel, size: SizeLike):
    """Evaluate the model at one size (returns float) or many (returns ndarray).

    Raises:
        EvaluationDomainError: Pow4 base ``b*N + c`` outside the real domain
    """
    sizes = _as_sizes(size)
    values = _evaluate_array(model, sizes)
    if sizes.ndim == 0:
        return float(values)
    return values


def param_gradient(model: CurveModel, size: SizeLike) -> np.ndarray:
    """Analytic gradient of the expected accuracy w.r.t. each parameter, in order."""
    return jacobian(model, size)


def asymptote(model: CurveModel) -> Optional[float]:
    """Limit of the curve as N grows without bound; ``None`` when it diverges."""
    p = model.params
    if model.kind is ModelKind.EXP:
        a, b = p
        if a == 0.0 or b < 0.0:
            return 0.0
        if b == 0.0:
            return a
        return None
    if model.kind is ModelKind.INVERSE:
        a, b, c = p
        if c < 0.0 or b == 0.0:
            return 1.0 - a
        if c == 0.0:
            return 1.0 - a - b
        return None
    if model.kind is ModelKind.POW4:
        a, b, c, d = p
        if b > 0.0:
            if d > 0.0:
                return a
            if d == 0.0:
                return a - 1.0
            return None
        if b == 0.0 and c > 0.0:
            return a - c ** (-d)
        return None
    limit = 0.0
    for component, weight in zip(model.components, model.weights.as_tuple()):
        if weight == 0.0:
            continue
        component_limit = asymptote(component)
        if component_limit is None:
            return None
        limit += weight * component_limit
    return limit
