"""Configurable tolerances for connection solving and curvature checks."""

from functools import lru_cache
from typing import Literal

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class CurvatureSettings(BaseSettings):
    """Environment-configurable Weyl verdict thresholds and oracle parameters."""
    model_config = SettingsConfigDict(
        env_prefix="CURVATURE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    flat_tolerance: float = Field(
        default=1e-9,
        gt=0.0,
        description="Relative Weyl norm below which a point counts as conformally flat",
    )
    nonflat_floor: float = Field(
        default=1e-3,
        gt=0.0,
        description="Relative Weyl norm above which a point counts as not flat",
    )
    fd_step: float = Field(
        default=1e-5,
        gt=0.0,
        description="Central-difference step of the finite-difference oracle",
    )
    fd_precision: Literal["float64", "mpmath"] = Field(
        default="mpmath",
        description="Arithmetic used to evaluate the metric for finite differences",
    )
    oracle_tolerance: float = Field(
        default=1e-4,
        gt=0.0,
        description="Allowed Weyl disagreement between the two differentiation paths",
    )
    isotropy_tolerance: float = Field(
        default=1e-9,
        gt=0.0,
        description="Bound on g(X, X) for kernel fields of the distribution",
    )
    bianchi_tolerance: float = Field(
        default=1e-9,
        gt=0.0,
        description="Relative bound on first-Bianchi and Weyl trace residuals",
    )
    conformal_tolerance: float = Field(
        default=1e-6,
        gt=0.0,
        description="Relative change of C^a_bcd allowed under a conformal rescaling",
    )
    min_points: int = Field(
        default=5,
        ge=1,
        description="Fewest sample points accepted by the Weyl certificate",
    )

    @model_validator(mode="after")
    def validate_thresholds(self) -> "CurvatureSettings":
        if self.flat_tolerance >= self.nonflat_floor:
            raise ValueError(
                f"flat_tolerance ({self.flat_tolerance}) must be below nonflat_floor ({self.nonflat_floor})"
            )
        return self


@lru_cache
def get_curvature_settings() -> CurvatureSettings:
    return CurvatureSettings()


curvature_settings = get_curvature_settings()
