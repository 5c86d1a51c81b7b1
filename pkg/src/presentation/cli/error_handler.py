"""Maps engine exceptions onto the CLI exit-code contract."""

import sys
from typing import Callable, Optional, TextIO

import structlog

from src.core.context import get_run_id
from src.domain.exceptions import (
    EngineException,
    InternalInconsistency,
    MalformedParameter,
    UnknownCheck,
    UnknownModel,
)
from src.presentation.schemas import ErrorResponseSchema

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

USAGE_ERRORS = (UnknownCheck, UnknownModel, MalformedParameter)


class UsageError(EngineException):
    """Options that parse but do not describe a runnable request."""

    def __init__(self, message: str):
        super().__init__(message=message, code="INVALID_REQUEST")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (*USAGE_ERRORS, UsageError)):
        return EXIT_USAGE
    if isinstance(exc, InternalInconsistency):
        return EXIT_INTERNAL
    if isinstance(exc, EngineException):
        return EXIT_FAILED
    return EXIT_INTERNAL


def write_error(body: ErrorResponseSchema, stream: Optional[TextIO] = None) -> None:
    (stream or sys.stderr).write(body.to_line())


def run_guarded(command: Callable[[], int], stream: Optional[TextIO] = None) -> int:
    """Run a command, turning exceptions into an error line and an exit code."""
    try:
        return command()
    except EngineException as e:
        code = exit_code_for(e)
        if code == EXIT_INTERNAL:
            logger.error("internal_inconsistency", error=e.code, message=e.message)
        else:
            logger.warning("command_rejected", error=e.code, message=e.message)
        write_error(ErrorResponseSchema.from_exception(e, code, get_run_id()), stream)
        return code
    except Exception as e:
        logger.exception("unhandled_exception", error=str(e), error_type=type(e).__name__)
        body = ErrorResponseSchema(
            error="INTERNAL_ERROR",
            message="An unexpected error occurred",
            exit_code=EXIT_INTERNAL,
            run_id=get_run_id(),
        )
        write_error(body, stream)
        return EXIT_INTERNAL
