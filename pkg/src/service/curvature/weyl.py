"""Conformal flatness certificates from sampled Weyl tensors."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np
import structlog

from src.domain.exceptions import DomainViolation, MalformedParameter, OracleDisagreement, SingularMetric
from src.service.algebra import Scalar, Symbol, SymbolKind, eval_numeric, registry
from src.service.algebra.scalar import ScalarLike
from src.service.forms import PointSampler, VectorField, default_sampler

from .curvature import (
    CurvatureTensors,
    FiniteDifferenceJet,
    SymbolicJet,
    curvature_from_jet,
    max_norm,
)
from .metric import Metric, format_point
from .settings import CurvatureSettings, curvature_settings

logger = structlog.get_logger(__name__)

Bindings = Mapping[Union[Symbol, str], ScalarLike]


class WeylVerdict(str, Enum):
    FLAT = "flat"
    NOT_FLAT = "not-flat"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class WeylSample:
    point: dict[str, str]
    riemann_norm: float
    weyl_norm: float
    relative_weyl: float
    oracle_difference: float
    bianchi_residual: float
    trace_residual: float

    def to_payload(self) -> dict[str, Any]:
        return {
            "point": self.point,
            "riemann_norm": self.riemann_norm,
            "weyl_norm": self.weyl_norm,
            "relative_weyl": self.relative_weyl,
            "oracle_difference": self.oracle_difference,
            "bianchi_residual": self.bianchi_residual,
            "trace_residual": self.trace_residual,
        }


@dataclass(frozen=True)
class WeylCertificate:
    metric: str
    parameters: dict[str, str]
    verdict: WeylVerdict
    tolerance: float
    samples: tuple[WeylSample, ...] = field(default_factory=tuple)

    @property
    def max_relative(self) -> float:
        return max(s.relative_weyl for s in self.samples)

    @property
    def min_relative(self) -> float:
        return min(s.relative_weyl for s in self.samples)

    def identities_hold(self, tolerance: float) -> bool:
        return all(s.bianchi_residual < tolerance and s.trace_residual < tolerance for s in self.samples)

    def to_payload(self) -> dict[str, Any]:
        return {
            "metric": self.metric,
            "parameters": self.parameters,
            "verdict": self.verdict.value,
            "tolerance": self.tolerance,
            "max_relative_weyl": self.max_relative,
            "min_relative_weyl": self.min_relative,
            "samples": [s.to_payload() for s in self.samples],
        }


def classify(relatives: Sequence[float], tolerance: float, floor: float) -> WeylVerdict:
    if all(r < tolerance for r in relatives):
        return WeylVerdict.FLAT
    if all(r > floor for r in relatives):
        return WeylVerdict.NOT_FLAT
    return WeylVerdict.INCONCLUSIVE


def specialize(metric: Metric, params: Bindings) -> tuple[Metric, dict[Symbol, Scalar]]:
    """Metric with every parameter bound; unbound parameters are a usage error."""
    resolved = {
        (k if isinstance(k, Symbol) else registry.lookup(k)): Scalar.of(v) for k, v in params.items()
    }
    for symbol, value in resolved.items():
        if symbol.kind != SymbolKind.PARAMETER:
            raise MalformedParameter(symbol.name, str(value), "a parameter binding")
    metric.chart.check_parameters(resolved)
    relevant = {s: v for s, v in resolved.items() if s in metric.parameters}
    specialized = metric.subs(relevant) if relevant else metric
    unbound = [s.name for s in specialized.parameters]
    if unbound:
        raise MalformedParameter(", ".join(unbound), "unbound", "a rational value for every parameter")
    return specialized, resolved


def _fixed_values(resolved: Mapping[Symbol, Scalar]) -> dict[Symbol, Fraction]:
    fixed: dict[Symbol, Fraction] = {}
    for symbol, value in resolved.items():
        if value.is_constant:
            try:
                fixed[symbol] = value.as_fraction()
            except (TypeError, ValueError):
                continue
    return fixed


def _sample_points(
    metric: Metric,
    resolved: Mapping[Symbol, Scalar],
    count: int,
    sampler: PointSampler,
) -> list[dict[Symbol, Fraction]]:
    fixed = _fixed_values(resolved)
    return [sampler.draw_on(metric.chart, fixed=fixed) for _ in range(count)]


def weyl_flat_certificate(
    metric: Metric,
    params: Bindings,
    n_points: int,
    tol: Optional[float] = None,
    sampler: Optional[PointSampler] = None,
    settings: Optional[CurvatureSettings] = None,
) -> WeylCertificate:
    """Flat iff the relative Weyl norm stays below tol at every sampled point.

    Each point is evaluated along two differentiation paths; a Weyl
    disagreement beyond the oracle tolerance raises OracleDisagreement.
    """
    settings = settings or curvature_settings
    sampler = sampler or default_sampler()
    tolerance = tol if tol is not None else settings.flat_tolerance
    if n_points < settings.min_points:
        raise MalformedParameter("points", str(n_points), f"at least {settings.min_points}")

    specialized, resolved = specialize(metric, params)
    symbolic = SymbolicJet(specialized)
    oracle = FiniteDifferenceJet(specialized, settings)

    samples: list[WeylSample] = []
    attempts = 0
    while len(samples) < n_points:
        attempts += 1
        if attempts > n_points * 10:
            raise DomainViolation(f"no evaluable point for {metric.name} after {attempts - 1} draws")
        point = _sample_points(specialized, resolved, 1, sampler)[0]
        where = format_point(point)
        try:
            exact = curvature_from_jet(*symbolic.evaluate(point), where=where)
            approx = curvature_from_jet(*oracle.evaluate(point), where=where)
        except (DomainViolation, SingularMetric) as exc:
            logger.debug("weyl_point_skipped", metric=metric.name, point=where, reason=str(exc))
            continue

        difference = max_norm(exact.weyl - approx.weyl)
        allowed = settings.oracle_tolerance * max(exact.riemann_norm, 1.0)
        if difference > allowed:
            logger.error("weyl_oracle_disagreement", metric=metric.name, point=where, difference=difference)
            raise OracleDisagreement("Weyl tensor", difference, allowed)

        samples.append(
            WeylSample(
                point={s.name: str(v) for s, v in point.items() if s.kind == SymbolKind.COORDINATE},
                riemann_norm=exact.riemann_norm,
                weyl_norm=exact.weyl_norm,
                relative_weyl=exact.relative_weyl,
                oracle_difference=difference,
                bianchi_residual=exact.bianchi_residual(),
                trace_residual=exact.weyl_trace_residual(),
            )
        )

    verdict = classify([s.relative_weyl for s in samples], tolerance, settings.nonflat_floor)
    certificate = WeylCertificate(
        metric=metric.name,
        parameters={s.name: str(v) for s, v in resolved.items()},
        verdict=verdict,
        tolerance=tolerance,
        samples=tuple(samples),
    )
    logger.info(
        "weyl_certificate_issued",
        metric=metric.name,
        verdict=verdict.value,
        max_relative=certificate.max_relative,
    )
    return certificate


@dataclass(frozen=True)
class ConformalComparison:
    metric: str
    original: WeylVerdict
    scaled: WeylVerdict
    max_relative_difference: float

    @property
    def verdicts_agree(self) -> bool:
        return self.original == self.scaled and self.original != WeylVerdict.INCONCLUSIVE

    def holds(self, tolerance: float) -> bool:
        return self.verdicts_agree and self.max_relative_difference <= tolerance

    def to_payload(self) -> dict[str, Any]:
        return {
            "metric": self.metric,
            "original_verdict": self.original.value,
            "scaled_verdict": self.scaled.value,
            "max_relative_difference": self.max_relative_difference,
        }


def conformal_weyl_comparison(
    metric: Metric,
    factor: ScalarLike,
    params: Bindings,
    n_points: int,
    sampler: Optional[PointSampler] = None,
    settings: Optional[CurvatureSettings] = None,
) -> ConformalComparison:
    """Weyl verdicts of g and factor·g, and the largest relative change of C^a_bcd.

    The change is measured against the mixed Riemann tensor of g.
    """
    settings = settings or curvature_settings
    sampler = sampler or default_sampler()
    specialized, resolved = specialize(metric, params)
    scaled, _ = specialize(metric.scale(factor), params)
    jets = (SymbolicJet(specialized), SymbolicJet(scaled))
    relatives: tuple[list[float], list[float]] = ([], [])
    worst = 0.0
    for point in _sample_points(specialized, resolved, n_points, sampler):
        where = format_point(point)
        first, second = (curvature_from_jet(*jet.evaluate(point), where=where) for jet in jets)
        relatives[0].append(first.relative_weyl)
        relatives[1].append(second.relative_weyl)
        scale = max(max_norm(first.weyl_mixed), max_norm(first.riemann), 1.0)
        worst = max(worst, max_norm(first.weyl_mixed - second.weyl_mixed) / scale)
    original, rescaled = (
        classify(values, settings.flat_tolerance, settings.nonflat_floor) for values in relatives
    )
    logger.info(
        "conformal_weyl_compared",
        metric=metric.name,
        original=original.value,
        scaled=rescaled.value,
        max_relative_difference=worst,
    )
    return ConformalComparison(metric.name, original, rescaled, worst)


def isotropy_defect(
    metric: Metric,
    fields: Sequence[VectorField],
    params: Bindings,
    n_points: int,
    sampler: Optional[PointSampler] = None,
) -> float:
    """Largest |g(X, Y)| over the given fields and sampled points."""
    sampler = sampler or default_sampler()
    specialized, resolved = specialize(metric, params)
    bound = [f.subs(resolved) for f in fields]
    worst = 0.0
    for point in _sample_points(specialized, resolved, n_points, sampler):
        g = specialized.evaluate(point)
        vectors = [np.array([eval_numeric(c, point) for c in f.components]) for f in bound]
        for i, x in enumerate(vectors):
            for y in vectors[i:]:
                worst = max(worst, abs(float(x @ g @ y)))
    return worst


def tensors_at(metric: Metric, params: Bindings, point: Mapping[Symbol, Any]) -> CurvatureTensors:
    """Symbolic-path curvature at one explicit point."""
    specialized, _ = specialize(metric, params)
    return curvature_from_jet(*SymbolicJet(specialized).evaluate(point), where=format_point(point))


def scalar_curvature_samples(
    metric: Metric,
    params: Bindings,
    n_points: int,
    sampler: Optional[PointSampler] = None,
) -> list[float]:
    """Scalar curvature at sampled points; half of it is the Gauss curvature of a surface."""
    sampler = sampler or default_sampler()
    specialized, resolved = specialize(metric, params)
    jet = SymbolicJet(specialized)
    values = []
    for point in _sample_points(specialized, resolved, n_points, sampler):
        values.append(curvature_from_jet(*jet.evaluate(point), where=format_point(point)).scalar)
    return values
