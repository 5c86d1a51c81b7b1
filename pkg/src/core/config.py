"""Application configuration loaded from environment variables."""

from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


SYMBOLIC_TOKENS = frozenset({"symbolic", "sym"})

ALPHA_PRESETS = {
    "acceptance": "symbolic,3,-3,1/3,-1/3,2,1/2,5/7,1",
    "maximal": "3,-3,1/3,-1/3",
}


def alpha_items(text: str) -> list[str]:
    """Comma separated alpha tokens with preset names expanded."""
    items: list[str] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        preset = ALPHA_PRESETS.get(item.lower())
        items.extend(alpha_items(preset) if preset else [item])
    return items


class Settings(BaseSettings):
    """Runner settings with defaults for every configuration option."""
    model_config = SettingsConfigDict(
        env_prefix="VERIFY_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    app_name: str = "monge-rolling-verify"
    app_version: str = "0.1.0"

    threads: int = Field(
        default=4,
        ge=1,
        le=64,
        description="Upper bound on the worker pool used to run checks",
    )
    seed: int = Field(
        default=42,
        description="Seed for every random admissible point draw",
    )
    points: int = Field(
        default=20,
        ge=1,
        description="Sample points per numeric curvature certificate",
    )
    alphas: str = Field(
        default="symbolic,3,1/3,2",
        description="Comma separated alpha values or preset names; \"symbolic\" keeps alpha as a parameter",
    )
    beta: str = "3"
    gamma: str = "3"
    c: str = "1"

    report_format: Literal["json", "text"] = "json"
    report_timings: bool = False
    metrics_file: Optional[str] = None

    log_level: str = "WARNING"
    log_format: Literal["json", "console"] = "console"

    @field_validator("alphas")
    @classmethod
    def validate_alphas(cls, v: str) -> str:
        for item in alpha_items(v):
            if item in SYMBOLIC_TOKENS:
                continue
            try:
                Fraction(item)
            except (ValueError, ZeroDivisionError) as e:
                raise ValueError(f"Invalid rational in alphas: {item!r}") from e
        return v

    @property
    def alpha_values(self) -> list[Optional[Fraction]]:
        """Parsed alphas; None stands for the symbolic instance."""
        return [None if item in SYMBOLIC_TOKENS else Fraction(item) for item in alpha_items(self.alphas)]


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
