"""
Fixtures for integration tests.

Provides:
- A CLI runner that captures stdout and stderr
- A checks registry holding fast stand-in checks
"""

from dataclasses import dataclass
from io import StringIO
from typing import Callable

import pytest

from src.application.checks import CheckRegistry
from src.domain.entities import Check, CheckOutcome, CheckParameters, ParamMode, Severity
from src.domain.exceptions import GuardViolation
from src.presentation.cli import run_cli


@dataclass
class CliResult:
    code: int
    out: str
    err: str


CliRunner = Callable[..., CliResult]


@pytest.fixture
def cli() -> CliRunner:
    """Run `verify` in-process with the given arguments."""

    def run(*argv: str) -> CliResult:
        out, err = StringIO(), StringIO()
        code = run_cli(list(argv), out=out, err=err)
        return CliResult(code, out.getvalue(), err.getvalue())

    return run


def _alpha_body(params: CheckParameters) -> CheckOutcome:
    if params.alpha is not None and params.alpha**2 == 1:
        raise GuardViolation("alpha^2 - 1 != 0", f"alpha={params.alpha}")
    return CheckOutcome(True, {"alpha": params.to_dict()["alpha"]})


@pytest.fixture
def stand_in_checks() -> CheckRegistry:
    """Two cheap checks, one of them guarded on alpha^2 != 1."""
    checks = CheckRegistry()
    checks.register(
        Check(
            id="T.constant",
            title="always passes",
            anchor="",
            section="T",
            severity=Severity.IDENTITY,
            mode=ParamMode.NONE,
            body=lambda params: CheckOutcome(True),
        )
    )
    checks.register(
        Check(
            id="T.guarded",
            title="skips on the guard locus",
            anchor="",
            section="T",
            severity=Severity.IDENTITY,
            mode=ParamMode.ALPHA,
            body=_alpha_body,
        )
    )
    return checks
