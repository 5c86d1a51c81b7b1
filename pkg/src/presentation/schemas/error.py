"""Pydantic schema for the error line a failed command writes to stderr."""

from typing import Optional

from pydantic import BaseModel, Field

from src.domain.exceptions import EngineException


class ErrorResponseSchema(BaseModel):
    """One JSON object per failed command."""
    error: str = Field(..., description="Stable error code", examples=["UNKNOWN_CHECK"])
    message: str = Field(..., description="Human-readable message", examples=["Unknown check: nope"])
    exit_code: Optional[int] = Field(None, ge=0, le=3, description="Process exit status")
    run_id: Optional[str] = Field(None, description="Run ID shared with the log lines")

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "error": "MALFORMED_PARAMETER",
                    "message": "Malformed parameter alpha='x': expected an exact rational",
                    "exit_code": 2,
                }
            ]
        }
    }

    @classmethod
    def from_exception(
        cls,
        exc: EngineException,
        exit_code: Optional[int] = None,
        run_id: Optional[str] = None,
    ) -> "ErrorResponseSchema":
        return cls(error=exc.code, message=exc.message, exit_code=exit_code, run_id=run_id)

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True) + "\n"
