"""Shared helpers for check bodies: parameter resolution and payload formatting."""

from fractions import Fraction
from typing import Any, Mapping

from src.domain.entities import CheckParameters
from src.service.algebra import Scalar
from src.service.forms import Form, PointSampler
from src.service.models.charts import ALPHA, BETA, GAMMA


def alpha_of(params: CheckParameters) -> Scalar:
    return ALPHA if params.alpha is None else Scalar.of(params.alpha)


def beta_gamma_of(params: CheckParameters) -> tuple[Scalar, Scalar]:
    beta = BETA if params.beta is None else Scalar.of(params.beta)
    gamma = GAMMA if params.gamma is None else Scalar.of(params.gamma)
    return beta, gamma


def sampler_for(params: CheckParameters) -> PointSampler:
    """Fresh seeded sampler for one check instance."""
    return PointSampler(params.seed)


def numeric_bindings(params: CheckParameters) -> dict[str, Fraction]:
    """Alpha binding for numeric checks; alpha is always bound for them."""
    if params.alpha is None:
        raise ValueError("numeric check instantiated with a symbolic alpha")
    return {"alpha": params.alpha}


def form_residuals(residuals: Mapping[str, Form]) -> dict[str, str]:
    return {label: form.to_text() for label, form in residuals.items()}


def nonzero(labelled: Mapping[str, Any]) -> dict[str, str]:
    """Text of the entries that are not identically zero (Scalar or Form)."""
    found = {}
    for label, value in labelled.items():
        if not value.is_zero():
            found[label] = value.to_text() if isinstance(value, Form) else str(value)
    return found


def dumped(params: CheckParameters, **items: Any) -> dict[str, Any]:
    """Extra payload entries only emitted with --dump."""
    if not params.dump:
        return {}
    return {"dump": {k: _text(v) for k, v in items.items()}}


def _text(value: Any) -> Any:
    if isinstance(value, Form):
        return value.to_text()
    if isinstance(value, (list, tuple)):
        return [_text(v) for v in value]
    if hasattr(value, "to_text"):
        return value.to_text()
    return str(value)


def tolerance_or(params: CheckParameters, default: float) -> float:
    return params.tolerance if params.tolerance is not None else default
