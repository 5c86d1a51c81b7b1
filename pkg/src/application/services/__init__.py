"""Application services (use cases)."""

from .verification_service import VerificationService

__all__ = [
    "VerificationService",
]
