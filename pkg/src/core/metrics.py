"""Prometheus metrics for check runs and engine internals."""

import time
from contextlib import contextmanager
from typing import Generator

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, write_to_textfile


REGISTRY = CollectorRegistry(auto_describe=True)

checks_total = Counter(
    "verify_checks_total",
    "Total number of checks executed",
    ["verdict"],
    registry=REGISTRY,
)

check_duration = Histogram(
    "verify_check_duration_seconds",
    "Check execution time in seconds",
    ["section"],
    buckets=[0.01, 0.1, 0.5, 1.0, 5.0, 15.0, 30.0, 60.0, 120.0, 300.0],
    registry=REGISTRY,
)

canonicalizations_total = Counter(
    "verify_canonicalizations_total",
    "Number of scalar canonicalizations performed by the kernel",
    registry=REGISTRY,
)

rank_checks_total = Counter(
    "verify_rank_checks_total",
    "Symbolic/numeric rank cross-checks by outcome",
    ["outcome"],
    registry=REGISTRY,
)

pool_threads = Gauge(
    "verify_pool_threads",
    "Worker threads used by the last run",
    registry=REGISTRY,
)


def record_check(verdict: str) -> None:
    checks_total.labels(verdict=verdict).inc()


def record_canonicalization() -> None:
    canonicalizations_total.inc()


def record_rank_check(agreed: bool) -> None:
    rank_checks_total.labels(outcome="agree" if agreed else "disagree").inc()


def record_pool_size(threads: int) -> None:
    pool_threads.set(threads)


@contextmanager
def track_check_latency(section: str) -> Generator[None, None, None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        duration = time.perf_counter() - start
        check_duration.labels(section=section).observe(duration)


def write_metrics(path: str) -> None:
    write_to_textfile(path, REGISTRY)
