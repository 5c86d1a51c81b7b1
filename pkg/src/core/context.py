"""Run and check identifiers propagated through context variables."""

import uuid
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Generator, Optional

import structlog

run_id_var: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


def get_run_id() -> Optional[str]:
    return run_id_var.get()


@contextmanager
def run_context(run_id: Optional[str] = None) -> Generator[str, None, None]:
    """Binds a run id for the duration of a verification run."""
    run_id = run_id or str(uuid.uuid4())
    token = run_id_var.set(run_id)
    structlog.contextvars.bind_contextvars(run_id=run_id)
    try:
        yield run_id
    finally:
        structlog.contextvars.unbind_contextvars("run_id")
        run_id_var.reset(token)


@contextmanager
def check_context(
    check_id: str,
    instance: str,
    run_id: Optional[str] = None,
) -> Generator[None, None, None]:
    """Binds the check being executed so nested log lines carry it.

    Worker threads do not inherit the submitting thread's context, so the
    run id is passed in explicitly.
    """
    bound = structlog.contextvars.bound_contextvars(
        run_id=run_id or get_run_id(),
        check_id=check_id,
        instance=instance,
    )
    with bound:
        yield
