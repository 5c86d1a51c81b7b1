"""Registered check definitions."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Optional


class Severity(str, Enum):
    IDENTITY = "identity"
    EQUIVALENCE = "equivalence"
    NUMERIC = "numeric"


class ParamMode(str, Enum):
    """Which run parameters a check is instantiated over."""

    NONE = "none"
    ALPHA = "alpha"
    # Numeric checks need every parameter bound, so the symbolic alpha is skipped.
    ALPHA_RATIONAL = "alpha-rational"
    BETA_GAMMA = "beta-gamma"


@dataclass(frozen=True)
class CheckParameters:
    """Resolved parameters for one check instance; alpha None means symbolic."""

    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    c: Optional[Fraction] = None
    seed: int = 42
    points: int = 20
    tolerance: Optional[float] = None
    dump: bool = False

    def to_dict(self) -> dict[str, Any]:
        values: dict[str, Any] = {}
        for name in ("alpha", "beta", "gamma", "c"):
            value = getattr(self, name)
            values[name] = "symbolic" if value is None else str(value)
        return values


@dataclass(frozen=True)
class CheckOutcome:
    """What a check body returns: pass/fail plus evidence."""

    passed: bool
    payload: dict[str, Any] = field(default_factory=dict)


CheckBody = Callable[[CheckParameters], CheckOutcome]


@dataclass(frozen=True)
class Check:
    id: str
    title: str
    anchor: str
    section: str
    severity: Severity
    mode: ParamMode
    body: CheckBody = field(compare=False, repr=False)
    slow: bool = False
    # Catalogue objects that `explain` dumps.
    models: tuple[str, ...] = ()

    def instance_id(self, params: CheckParameters) -> str:
        if self.mode in (ParamMode.ALPHA, ParamMode.ALPHA_RATIONAL):
            label = "symbolic" if params.alpha is None else str(params.alpha)
            return f"{self.id}[alpha={label}]"
        if self.mode == ParamMode.BETA_GAMMA:
            return f"{self.id}[beta={params.beta},gamma={params.gamma}]"
        return self.id

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "anchor": self.anchor,
            "section": self.section,
            "severity": self.severity.value,
            "parameters": self.mode.value,
            "models": list(self.models),
        }
