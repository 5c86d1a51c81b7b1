"""
Registered verification checks.

Importing the section modules populates the registry.
"""

from . import section2, section3, section4, section5  # noqa: F401
from .registry import CheckRegistry, check, registry

__all__ = [
    "CheckRegistry",
    "check",
    "registry",
]
