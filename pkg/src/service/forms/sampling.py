"""Seeded draws of admissible rational points."""

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
import structlog

from src.domain.exceptions import GuardViolation
from src.service.algebra import Symbol, registry

from .chart import Chart, Guard
from .settings import SamplingSettings, sampling_settings

logger = structlog.get_logger(__name__)

Point = dict[Symbol, Fraction]


class PointSampler:
    """Draws points from the rational grid, rejecting guard violations."""

    def __init__(self, seed: int, settings: Optional[SamplingSettings] = None):
        self.seed = seed
        self.settings = settings or sampling_settings
        self.grid = self.settings.grid
        self._rng = np.random.default_rng(seed)

    def _pick(self) -> Fraction:
        return self.grid[int(self._rng.integers(len(self.grid)))]

    def draw(
        self,
        symbols: Iterable[Symbol],
        guards: Sequence[Guard] = (),
        fixed: Optional[Mapping[Symbol, Fraction]] = None,
    ) -> Point:
        ordered = sorted(set(symbols) - set(fixed or {}), key=lambda s: registry.sort_key(s.atom))
        for attempt in range(self.settings.max_redraws):
            point = {s: self._pick() for s in ordered}
            point.update(fixed or {})
            if all(g.holds_at(point) for g in guards):
                if attempt:
                    logger.debug("sample_redrawn", attempts=attempt + 1)
                return point
        raise GuardViolation(
            " and ".join(str(g) for g in guards) or "sampling",
            f"no admissible point in {self.settings.max_redraws} draws",
        )

    def draw_on(
        self,
        chart: Chart,
        extra: Iterable[Symbol] = (),
        fixed: Optional[Mapping[Symbol, Fraction]] = None,
        guards: Sequence[Guard] = (),
    ) -> Point:
        return self.draw(
            list(chart.coordinates) + list(extra),
            guards=tuple(chart.guards) + tuple(guards),
            fixed=fixed,
        )

    def draw_many(
        self,
        count: int,
        chart: Chart,
        extra: Iterable[Symbol] = (),
        fixed: Optional[Mapping[Symbol, Fraction]] = None,
        guards: Sequence[Guard] = (),
    ) -> list[Point]:
        extra = list(extra)
        return [self.draw_on(chart, extra, fixed, guards) for _ in range(count)]


def default_sampler() -> PointSampler:
    return PointSampler(sampling_settings.default_seed)
