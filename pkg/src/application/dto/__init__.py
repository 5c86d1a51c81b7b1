"""Data Transfer Objects for application layer."""

from .run import RunOutcome, RunRequest

__all__ = [
    "RunOutcome",
    "RunRequest",
]
