"""Service that expands check instances, runs them on a worker pool and assembles the report."""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Optional

import structlog

from src import __version__
from src.application.checks import CheckRegistry, registry
from src.application.dto import RunOutcome, RunRequest
from src.core.context import check_context, run_context
from src.core.metrics import record_check, record_pool_size, track_check_latency
from src.domain.entities import Check, CheckParameters, CheckResult, ParamMode, Report, Verdict
from src.domain.exceptions import DomainViolation, EngineException, GuardViolation, InternalInconsistency

logger = structlog.get_logger(__name__)

Instance = tuple[Check, CheckParameters]


class VerificationService:
    """Runs a selection of registered checks and merges their results in a fixed order."""

    def __init__(self, checks: Optional[CheckRegistry] = None):
        self._registry = checks or registry

    def expand(self, request: RunRequest) -> list[Instance]:
        """One instance per check and parameter value, in check-id then parameter order."""
        base = CheckParameters(
            c=request.c,
            seed=request.seed,
            points=request.points,
            tolerance=request.tolerance,
            dump=request.dump,
        )
        instances: list[Instance] = []
        for check in self._registry.select(list(request.checks)):
            if check.slow and request.skip_slow:
                continue
            if check.mode == ParamMode.NONE:
                instances.append((check, base))
            elif check.mode == ParamMode.BETA_GAMMA:
                instances.append((check, replace(base, beta=request.beta, gamma=request.gamma)))
            else:
                for alpha in request.alphas:
                    if alpha is None and check.mode == ParamMode.ALPHA_RATIONAL:
                        continue
                    instances.append((check, replace(base, alpha=alpha)))
        return instances

    def run(self, request: RunRequest) -> RunOutcome:
        instances = self.expand(request)
        threads = max(1, min(request.threads, len(instances)))
        record_pool_size(threads)

        with run_context() as run_id:
            logger.info("run_started", instances=len(instances), threads=threads, seed=request.seed)
            with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="verify") as pool:
                futures = [pool.submit(self._execute, check, params, run_id) for check, params in instances]
                executed = [future.result() for future in futures]

            results = [result for result, _ in executed]
            internal = [message for _, message in executed if message is not None]
            report = Report(engine_version=__version__, seed=request.seed, results=results)
            logger.info("run_completed", run_id=run_id, **report.counts())
        return RunOutcome(report=report, run_id=run_id, internal_errors=internal)

    def _execute(self, check: Check, params: CheckParameters, run_id: str) -> tuple[CheckResult, Optional[str]]:
        instance = check.instance_id(params)
        internal: Optional[str] = None
        with check_context(check.id, instance, run_id):
            log = logger.bind(section=check.section)
            log.info("check_started")
            start = time.perf_counter()
            with track_check_latency(check.section):
                try:
                    outcome = check.body(params)
                    verdict = Verdict.PASS if outcome.passed else Verdict.FAIL
                    payload = outcome.payload
                except (GuardViolation, DomainViolation) as e:
                    verdict = Verdict.DOMAIN_SKIP
                    payload = {"error": e.code, "message": e.message}
                except InternalInconsistency as e:
                    verdict = Verdict.FAIL
                    payload = {"error": e.code, "message": e.message}
                    internal = f"{instance}: {e.message}"
                    log.error("check_internal_inconsistency", error=e.code, message=e.message)
                except EngineException as e:
                    verdict = Verdict.FAIL
                    payload = {"error": e.code, "message": e.message}
            elapsed = time.perf_counter() - start
            record_check(verdict.value)
            log.info("check_completed", verdict=verdict.value, elapsed=round(elapsed, 3))

        result = CheckResult(
            check_id=check.id,
            instance_id=instance,
            section=check.section,
            verdict=verdict,
            parameters=params.to_dict(),
            payload=payload,
            elapsed=elapsed,
        )
        return result, internal
