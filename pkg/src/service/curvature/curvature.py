"""Numeric curvature of a metric from its 2-jet at a point.

Conventions (n = chart dimension):

    Γ^a_bc  = ½ g^ad (∂_b g_dc + ∂_c g_db − ∂_d g_bc)
    R^a_bcd = ∂_c Γ^a_db − ∂_d Γ^a_cb + Γ^a_ce Γ^e_db − Γ^a_de Γ^e_cb
    Ric_bd  = R^a_bad,  R = g^bd Ric_bd
    P       = (Ric − R g / (2(n − 1))) / (n − 2)
    C_abcd  = R_abcd − (P ⊘ g)_abcd
    (h ⊘ k)_abcd = h_ac k_bd + h_bd k_ac − h_ad k_bc − h_bc k_ad

The 2-jet comes either from exact symbolic derivatives of the metric
components or from central finite differences of the metric itself.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Any, Mapping, Optional

import mpmath
import numpy as np
import structlog

from src.domain.exceptions import SingularMetric
from src.service.algebra import CompiledScalars, Scalar, Symbol, differentiate, extended_precision

from .metric import Metric, format_point
from .settings import CurvatureSettings, curvature_settings

logger = structlog.get_logger(__name__)

CONDITION_LIMIT = 1e12
NEGLIGIBLE = 1e-12

Jet = tuple[np.ndarray, np.ndarray, np.ndarray]


def kulkarni_nomizu(h: np.ndarray, k: np.ndarray) -> np.ndarray:
    return (
        np.einsum("ac,bd->abcd", h, k)
        + np.einsum("bd,ac->abcd", h, k)
        - np.einsum("ad,bc->abcd", h, k)
        - np.einsum("bc,ad->abcd", h, k)
    )


def max_norm(tensor: np.ndarray) -> float:
    return float(np.max(np.abs(tensor))) if tensor.size else 0.0


def relative(value: float, scale: float) -> float:
    return value / scale if scale > NEGLIGIBLE else value


@dataclass(frozen=True)
class CurvatureTensors:
    metric: np.ndarray
    inverse: np.ndarray
    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float

    @property
    def dimension(self) -> int:
        return self.metric.shape[0]

    @cached_property
    def riemann_lowered(self) -> np.ndarray:
        return np.einsum("ae,ebcd->abcd", self.metric, self.riemann)

    @cached_property
    def schouten(self) -> np.ndarray:
        n = self.dimension
        return (self.ricci - self.scalar / (2 * (n - 1)) * self.metric) / (n - 2)

    @cached_property
    def weyl(self) -> np.ndarray:
        return self.riemann_lowered - kulkarni_nomizu(self.schouten, self.metric)

    @cached_property
    def weyl_mixed(self) -> np.ndarray:
        """C^a_bcd; invariant under conformal rescaling of the metric."""
        return np.einsum("ae,ebcd->abcd", self.inverse, self.weyl)

    @property
    def riemann_norm(self) -> float:
        return max_norm(self.riemann_lowered)

    @property
    def weyl_norm(self) -> float:
        return max_norm(self.weyl)

    @property
    def relative_weyl(self) -> float:
        return relative(self.weyl_norm, self.riemann_norm)

    def bianchi_residual(self) -> float:
        r = self.riemann_lowered
        cyclic = r + np.einsum("acdb->abcd", r) + np.einsum("adbc->abcd", r)
        return relative(max_norm(cyclic), self.riemann_norm)

    def pair_symmetry_residual(self) -> float:
        r = self.riemann_lowered
        residual = max(
            max_norm(r + np.einsum("bacd->abcd", r)),
            max_norm(r + np.einsum("abdc->abcd", r)),
            max_norm(r - np.einsum("cdab->abcd", r)),
        )
        return relative(residual, self.riemann_norm)

    def weyl_trace_residual(self) -> float:
        c = self.weyl
        traces = (
            np.einsum("ac,abcd->bd", self.inverse, c),
            np.einsum("ad,abcd->bc", self.inverse, c),
            np.einsum("bd,abcd->ac", self.inverse, c),
        )
        return relative(max(max_norm(t) for t in traces), self.riemann_norm)

    def norms(self) -> dict[str, float]:
        return {
            "christoffel": max_norm(self.christoffel),
            "riemann": self.riemann_norm,
            "ricci": max_norm(self.ricci),
            "scalar": abs(self.scalar),
            "weyl": self.weyl_norm,
        }


def curvature_from_jet(g: np.ndarray, dg: np.ndarray, ddg: np.ndarray, where: str = "") -> CurvatureTensors:
    """dg[k,i,j] = ∂_k g_ij, ddg[k,l,i,j] = ∂_k ∂_l g_ij."""
    if not np.all(np.isfinite(g)) or np.linalg.cond(g) > CONDITION_LIMIT:
        raise SingularMetric(where or "evaluation point")
    ginv = np.linalg.inv(g)

    lower = 0.5 * (np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg)
    dlower = 0.5 * (
        np.einsum("ebdc->edbc", ddg) + np.einsum("ecdb->edbc", ddg) - ddg
    )
    christoffel = np.einsum("ad,dbc->abc", ginv, lower)

    dginv = -np.einsum("ap,epq,qd->ead", ginv, dg, ginv)
    dchristoffel = np.einsum("ead,dbc->eabc", dginv, lower) + np.einsum("ad,edbc->eabc", ginv, dlower)

    riemann = (
        np.einsum("cadb->abcd", dchristoffel)
        - np.einsum("dacb->abcd", dchristoffel)
        + np.einsum("ace,edb->abcd", christoffel, christoffel)
        - np.einsum("ade,ecb->abcd", christoffel, christoffel)
    )
    ricci = np.einsum("abad->bd", riemann)
    scalar = float(np.einsum("bd,bd->", ginv, ricci))
    return CurvatureTensors(g, ginv, christoffel, riemann, ricci, scalar)


class SymbolicJet:
    """Exact first and second derivatives of the metric components, compiled once."""

    def __init__(self, metric: Metric):
        self.metric = metric
        self.n = n = metric.chart.dimension
        coordinates = metric.chart.coordinates
        self.entries = [(i, j) for i, j in combinations_with_replacement(range(n), 2)]
        self.second = [(k, l) for k, l in combinations_with_replacement(range(n), 2)]

        values: list[Scalar] = [metric.components[i][j] for i, j in self.entries]
        first: dict[tuple[int, int, int], Scalar] = {}
        for k in range(n):
            for i, j in self.entries:
                first[(k, i, j)] = differentiate(metric.components[i][j], coordinates[k])
        values += [first[(k, i, j)] for k in range(n) for i, j in self.entries]
        for k, l in self.second:
            for i, j in self.entries:
                values.append(differentiate(first[(k, i, j)], coordinates[l]))

        self.compiled = CompiledScalars(values, metric.inputs)
        logger.debug("metric_jet_compiled", metric=metric.name, scalars=len(values))

    def evaluate(self, point: Mapping[Symbol, Any]) -> Jet:
        n = self.n
        values = iter(self.compiled([point[s] for s in self.metric.inputs]))
        g = np.zeros((n, n))
        dg = np.zeros((n, n, n))
        ddg = np.zeros((n, n, n, n))
        for i, j in self.entries:
            g[i, j] = g[j, i] = next(values)
        for k in range(n):
            for i, j in self.entries:
                dg[k, i, j] = dg[k, j, i] = next(values)
        for k, l in self.second:
            for i, j in self.entries:
                v = next(values)
                ddg[k, l, i, j] = ddg[k, l, j, i] = ddg[l, k, i, j] = ddg[l, k, j, i] = v
        return g, dg, ddg


class FiniteDifferenceJet:
    """Central differences of the metric components with a fixed step."""

    def __init__(self, metric: Metric, settings: Optional[CurvatureSettings] = None):
        self.metric = metric
        self.settings = settings or curvature_settings
        self.n = metric.chart.dimension
        self.compiled = metric.compile(self.settings.fd_precision)

    def _values(self, base: list[Any], offsets: Mapping[int, int], h: Any) -> list[Any]:
        shifted = list(base)
        for k, sign in offsets.items():
            shifted[k] = shifted[k] + sign * h
        return self.compiled.evaluate_raw(shifted)

    def _jet(self, base: list[Any], h: Any) -> Jet:
        n = self.n
        size = n * n
        center = self._values(base, {}, h)
        plus = [self._values(base, {k: 1}, h) for k in range(n)]
        minus = [self._values(base, {k: -1}, h) for k in range(n)]

        g = np.array([float(v) for v in center]).reshape(n, n)
        dg = np.zeros((n, n, n))
        ddg = np.zeros((n, n, n, n))
        for k in range(n):
            dg[k] = np.array(
                [float((plus[k][e] - minus[k][e]) / (2 * h)) for e in range(size)]
            ).reshape(n, n)
            ddg[k, k] = np.array(
                [float((plus[k][e] - 2 * center[e] + minus[k][e]) / (h * h)) for e in range(size)]
            ).reshape(n, n)
        for k in range(n):
            for l in range(k + 1, n):
                pp = self._values(base, {k: 1, l: 1}, h)
                pm = self._values(base, {k: 1, l: -1}, h)
                mp = self._values(base, {k: -1, l: 1}, h)
                mm = self._values(base, {k: -1, l: -1}, h)
                mixed = np.array(
                    [float((pp[e] - pm[e] - mp[e] + mm[e]) / (4 * h * h)) for e in range(size)]
                ).reshape(n, n)
                ddg[k, l] = ddg[l, k] = mixed
        return g, dg, ddg

    def evaluate(self, point: Mapping[Symbol, Any]) -> Jet:
        raw = [point[s] for s in self.metric.inputs]
        if self.settings.fd_precision == "mpmath":
            with extended_precision():
                base = [
                    mpmath.mpf(v.numerator) / mpmath.mpf(v.denominator) if hasattr(v, "denominator") else mpmath.mpf(v)
                    for v in raw
                ]
                return self._jet(base, mpmath.mpf(self.settings.fd_step))
        return self._jet([float(v) for v in raw], self.settings.fd_step)


def curvature_numeric(
    metric: Metric,
    point: Mapping[Symbol, Any],
    jet: Optional[SymbolicJet] = None,
) -> CurvatureTensors:
    """Curvature at a point from exact derivatives evaluated in float64."""
    jet = jet or SymbolicJet(metric)
    return curvature_from_jet(*jet.evaluate(point), where=format_point(point))


def finite_difference_curvature(
    metric: Metric,
    point: Mapping[Symbol, Any],
    jet: Optional[FiniteDifferenceJet] = None,
) -> CurvatureTensors:
    jet = jet or FiniteDifferenceJet(metric)
    return curvature_from_jet(*jet.evaluate(point), where=format_point(point))
