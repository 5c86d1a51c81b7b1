"""Data transfer objects for verification runs."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from src.domain.entities import Report


@dataclass(frozen=True)
class RunRequest:
    """Selection and parameters for one run; alpha None stands for the symbolic instance."""

    checks: tuple[str, ...] = ()
    alphas: tuple[Optional[Fraction], ...] = (None,)
    beta: Fraction = Fraction(3)
    gamma: Fraction = Fraction(3)
    c: Optional[Fraction] = Fraction(1)
    seed: int = 42
    points: int = 20
    tolerance: Optional[float] = None
    dump: bool = False
    skip_slow: bool = False
    threads: int = 1

    def validate(self) -> List[str]:
        errors = []

        if self.points < 1:
            errors.append("points must be positive")

        if self.threads < 1:
            errors.append("threads must be positive")

        if self.tolerance is not None and self.tolerance <= 0:
            errors.append("tol must be positive")

        if not self.alphas:
            errors.append("at least one alpha is required")

        return errors


@dataclass
class RunOutcome:
    """Finished report plus the run id it was logged under."""

    report: Report
    run_id: str
    internal_errors: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.internal_errors:
            return 3
        return 1 if self.report.failed else 0
