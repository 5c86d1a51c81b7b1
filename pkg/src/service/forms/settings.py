"""Configurable settings for admissible-point sampling and rank cross-checks."""

from fractions import Fraction
from functools import lru_cache

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class SamplingSettings(BaseSettings):
    """Environment-configurable sampling grid and numeric rank tolerances."""
    model_config = SettingsConfigDict(
        env_prefix="SAMPLING_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    grid_denominator: int = Field(
        default=6,
        ge=1,
        description="Sample coordinates are multiples of 1/grid_denominator",
    )
    grid_low: int = Field(
        default=2,
        ge=1,
        description="Smallest grid numerator (2/6 = 1/3)",
    )
    grid_high: int = Field(
        default=18,
        ge=1,
        description="Largest grid numerator (18/6 = 3)",
    )
    default_seed: int = Field(
        default=42,
        description="Seed used when a caller does not supply a sampler",
    )
    rank_samples: int = Field(
        default=5,
        ge=1,
        description="Points used for the numeric rank cross-check",
    )
    max_redraws: int = Field(
        default=500,
        ge=1,
        description="Draws attempted before giving up on the guard locus",
    )
    rank_tolerance: float = Field(
        default=1e-9,
        gt=0.0,
        description="Singular values below tolerance * largest are treated as zero",
    )
    guard_tolerance: float = Field(
        default=1e-12,
        gt=0.0,
        description="Guard values within tolerance of zero count as violated",
    )

    @model_validator(mode="after")
    def validate_grid(self) -> "SamplingSettings":
        if self.grid_low > self.grid_high:
            raise ValueError(f"grid_low ({self.grid_low}) > grid_high ({self.grid_high})")
        return self

    @property
    def grid(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(k, self.grid_denominator) for k in range(self.grid_low, self.grid_high + 1)
        )


@lru_cache
def get_sampling_settings() -> SamplingSettings:
    return SamplingSettings()


sampling_settings = get_sampling_settings()
