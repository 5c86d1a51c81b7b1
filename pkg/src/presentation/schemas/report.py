"""Pydantic schemas for the versioned verification report."""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.domain.entities import Check, Report, Verdict

SCHEMA_VERSION = "1.0"


class CheckResultSchema(BaseModel):
    """One executed check instance."""
    model_config = ConfigDict(populate_by_name=True)

    id: str = Field(
        ...,
        description="Instance id: check id plus its parameter values",
        examples=["S5.weyl-flat[alpha=3]"],
    )
    check: str = Field(..., description="Registered check id", examples=["S5.weyl-flat"])
    section: str = Field(..., examples=["S5"])
    verdict: Verdict
    parameters: dict[str, str] = Field(default_factory=dict)
    payload: dict[str, Any] = Field(
        default_factory=dict,
        description="Residuals, certificates or Weyl samples backing the verdict",
    )
    elapsed_seconds: Optional[float] = Field(
        None,
        description="Only present when timings are requested",
    )


class SummarySchema(BaseModel):
    passed: int = Field(0, ge=0, alias="pass")
    failed: int = Field(0, ge=0, alias="fail")
    skipped: int = Field(0, ge=0, alias="domain-skip")

    model_config = ConfigDict(populate_by_name=True)


class ReportSchema(BaseModel):
    """Versioned report; the text format renders this same payload."""

    schema_version: str = SCHEMA_VERSION
    engine_version: str
    seed: int
    summary: SummarySchema
    conventions: dict[str, str]
    results: list[CheckResultSchema]

    @classmethod
    def from_report(cls, report: Report, timings: bool = False) -> "ReportSchema":
        return cls(
            engine_version=report.engine_version,
            seed=report.seed,
            summary=SummarySchema.model_validate(report.counts()),
            conventions=report.conventions,
            results=[CheckResultSchema.model_validate(r.to_dict(timings)) for r in report.results],
        )

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


class CheckInfoSchema(BaseModel):
    """Listing entry for `verify list` and `verify explain`."""

    id: str
    title: str
    anchor: str = Field(..., description="Verbatim source passage the check certifies")
    section: str
    severity: str
    parameters: str
    slow: bool = False
    models: list[str] = Field(default_factory=list)

    @classmethod
    def from_check(cls, check: Check) -> "CheckInfoSchema":
        return cls(**check.to_dict(), slow=check.slow)
