"""Command-line interface for the verification suite."""

import sys
from typing import Optional, Sequence, TextIO

from src.core.config import get_settings
from src.core.logging import setup_logging

from .commands import attach_negative_values, build_parser, dispatch, parse_alpha, parse_rational
from .error_handler import EXIT_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, exit_code_for, run_guarded


def run_cli(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Parse arguments and run one command; argparse usage errors return 2."""
    settings = get_settings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(attach_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(level=args.log_level)
    return run_guarded(lambda: dispatch(args, settings, out or sys.stdout), err)


__all__ = [
    "EXIT_FAILED",
    "EXIT_INTERNAL",
    "EXIT_OK",
    "EXIT_USAGE",
    "attach_negative_values",
    "build_parser",
    "exit_code_for",
    "parse_alpha",
    "parse_rational",
    "run_cli",
]
