"""Registry of every named construction, addressable by name with parameter values."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

import structlog

from src.domain.exceptions import UnknownModel
from src.service.algebra import Scalar
from src.service.curvature import AdaptedCoframe, Metric, nurowski_metric
from src.service.distribution import PfaffianSystem
from src.service.forms import CoordMap

from . import monge, section2, section3, section4, section5
from .charts import ALPHA, BETA, C, GAMMA
from .named import NamedCoframe

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ModelParameters:
    """Parameter values; None keeps the parameter symbolic."""

    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    c: Optional[Fraction] = None

    @property
    def a(self) -> Scalar:
        return ALPHA if self.alpha is None else Scalar.of(self.alpha)

    @property
    def b(self) -> Scalar:
        return BETA if self.beta is None else Scalar.of(self.beta)

    @property
    def g(self) -> Scalar:
        return GAMMA if self.gamma is None else Scalar.of(self.gamma)

    @property
    def cc(self) -> Scalar:
        return C if self.c is None else Scalar.of(self.c)

    def describe(self) -> dict[str, str]:
        return {
            name: ("symbolic" if value is None else str(value))
            for name, value in (("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma), ("c", self.c))
        }


@dataclass(frozen=True)
class ModelEntry:
    name: str
    kind: str
    anchor: str
    builder: Callable[[ModelParameters], Any]


_ENTRIES: dict[str, ModelEntry] = {}


def _entry(name: str, kind: str, anchor: str, builder: Callable[[ModelParameters], Any]) -> None:
    _ENTRIES[name] = ModelEntry(name, kind, anchor, builder)


# Rolling hyperboloids
_entry("sigma", "coframe", "These 1-forms satisfy the relations", lambda p: section2.sigma_coframe())
_entry("rolling", "system", "the Pfaffian system spanned by the 1-forms", lambda p: section2.rolling_system(p.a))
_entry(
    "rolling-reversed",
    "system",
    "\\bar \\omega_1=-\\sigma_1+\\omega_5",
    lambda p: section2.sign_reversed_system(p.a),
)
_entry(
    "section2-coframe",
    "adapted coframe",
    "To satisfy Cartan's structure equations, we take",
    lambda p: section2.section2_coframe(p.a),
)
_entry(
    "section2-metric",
    "metric",
    "Observe that the metric we obtain",
    lambda p: nurowski_metric(section2.section2_coframe(p.a)),
)

# Prolonged action and the first reduction
_entry("s", "coframe", "We have", lambda p: section3.s_coframe())
_entry("sl2-iso", "coframe", "through the isomorphism", lambda p: section3.sigma_images())
_entry("prolonged", "system", "through the isomorphism", lambda p: section3.prolonged_system(p.a))
_entry("new1forms", "system", "equivalently spanned by", lambda p: section3.new_forms_system(p.a))
_entry("hat3", "map", "We define", lambda p: section3.hat_map(p.a))
_entry("hat3-ideal", "system", "equivalently spanned by", lambda p: section3.hat_forms(p.a).system)
_entry("jet3", "map", "Now consider further the map", lambda p: section3.jet_map(p.a))
_entry("inverse3", "map", "Using the inverse map", lambda p: section3.inverse_map(p.a))
_entry("composite3", "map", "can be brought into the Monge normal form", lambda p: section3.composite_map(p.a))
_entry("F", "scalar", "1-forms encoding the Monge equation", lambda p: monge.monge_F(p.a))
_entry("monge", "system", "1-forms encoding the Monge equation", lambda p: monge.monge_data(p.a).system)

# Two copies of sl2
_entry("sbar", "coframe", "These 1-forms satisfy the equations", lambda p: section4.sbar_coframe())
_entry("s-second", "coframe", "These 1-forms satisfy the equations", lambda p: section4.second_copy())
_entry("gen1", "system", "\\theta_1&=s_1-\\beta \\bar s_4", lambda p: section4.gen1_system(p.b, p.g))
_entry(
    "section4-coframe",
    "adapted coframe",
    "are constants. Then Cartan's structure equations",
    lambda p: section4.section4_coframe(p.b, p.g),
)
_entry("hat4", "map", "We we now take", lambda p: section4.hat_map(p.b, p.g, p.cc))
_entry("hat4-ideal", "system", "We we now take", lambda p: section4.hat_system(p.b, p.g))
_entry(
    "jet4",
    "map",
    "We now map into more familiar coordinates on the mixed jet space",
    lambda p: section4.jet_map(p.b, p.g),
)
_entry("inverse4", "map", "Using the inverse map", lambda p: section4.inverse_map(p.b, p.g))
_entry(
    "composite4",
    "map",
    "equivalent to the {\\it rolling} distribution given by",
    lambda p: section4.composite_map(p.b, p.g, p.cc),
)
_entry("F-sl2", "scalar", "=z^2q+\\frac{1}{\\frac{1}{\\beta \\gamma}-1}", lambda p: monge.sl2_pair_F(p.b, p.g))
_entry(
    "monge-sl2",
    "system",
    "equivalent to the {\\it rolling} distribution given by",
    lambda p: monge.sl2_pair_monge_data(p.b, p.g).system,
)

# Monge normal form coframe
_entry("section5-coframe", "adapted coframe", "If we take", lambda p: section5.section5_coframe(p.a))
_entry("section5-metric", "metric", "The metric is conformally flat", lambda p: section5.section5_metric(p.a))


_CONSTANTS: dict[str, Callable[[ModelParameters], dict[str, Any]]] = {
    "section2": lambda p: section2.section2_constants(p.a),
    "section4": lambda p: section4.section4_constants(p.b, p.g),
    "section5": lambda p: section5.section5_constants(p.a),
}


def list_models() -> list[ModelEntry]:
    return list(_ENTRIES.values())


def get_entry(name: str) -> ModelEntry:
    entry = _ENTRIES.get(name)
    if entry is None:
        raise UnknownModel(name)
    return entry


def build(name: str, params: Optional[ModelParameters] = None) -> Any:
    """Construct a named object; charts reject parameters off their guard locus."""
    entry = get_entry(name)
    params = params or ModelParameters()
    logger.debug("model_build", model=name, **params.describe())
    return entry.builder(params)


def constants(name: str, params: Optional[ModelParameters] = None) -> dict[str, str]:
    """Constant table as text; the section4 branches are flattened to T[...] and lambda[...]."""
    table = _CONSTANTS.get(name)
    if table is None:
        raise UnknownModel(name)
    values = table(params or ModelParameters())
    flat: dict[str, str] = {}
    for key, value in values.items():
        if key == "branches":
            for branch in value:
                flat[f"T[{branch.label}]"] = str(branch.T)
                flat[f"lambda[{branch.label}]"] = str(branch.lam)
        else:
            flat[key] = str(value)
    return flat


def constant_tables() -> list[str]:
    return list(_CONSTANTS)


def dump(obj: Any) -> list[str]:
    """Grammar-serialized lines for any catalogue object."""
    if isinstance(obj, NamedCoframe):
        payload = obj.to_payload()
        return [f"{n} = {text}" for n, text in payload["forms"].items()] + list(payload["relations"])
    if isinstance(obj, PfaffianSystem):
        return [f"{obj.name}[{i + 1}] = {text}" for i, text in enumerate(obj.to_text())]
    if isinstance(obj, AdaptedCoframe):
        return obj.to_text() + [f"{k} = {v}" for k, v in obj.constants.items()]
    if isinstance(obj, CoordMap):
        return [f"{c.name} = {e}" for c, e in zip(obj.target.coordinates, obj.exprs)]
    if isinstance(obj, Metric):
        return [f"{key} = {value}" for key, value in obj.nonzero_components().items()]
    return [str(obj)]
