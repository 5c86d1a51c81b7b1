"""Check registry and the decorator the section modules register through."""

from typing import Callable

import structlog

from src.domain.entities import Check, CheckBody, ParamMode, Severity
from src.domain.exceptions import UnknownCheck

logger = structlog.get_logger(__name__)


class CheckRegistry:
    """Checks keyed by id; listing is sorted by id."""

    def __init__(self) -> None:
        self._checks: dict[str, Check] = {}

    def register(self, check: Check) -> Check:
        if check.id in self._checks:
            raise ValueError(f"duplicate check id {check.id}")
        self._checks[check.id] = check
        return check

    def get(self, check_id: str) -> Check:
        check = self._checks.get(check_id)
        if check is None:
            raise UnknownCheck(check_id)
        return check

    def all(self) -> list[Check]:
        return [self._checks[k] for k in sorted(self._checks)]

    def select(self, ids: list[str]) -> list[Check]:
        if not ids or ids == ["all"]:
            return self.all()
        chosen = {self.get(i).id for i in ids}
        return [c for c in self.all() if c.id in chosen]

    def __len__(self) -> int:
        return len(self._checks)


registry = CheckRegistry()


def check(
    check_id: str,
    title: str,
    anchor: str,
    severity: Severity,
    mode: ParamMode = ParamMode.NONE,
    slow: bool = False,
    models: tuple[str, ...] = (),
) -> Callable[[CheckBody], CheckBody]:
    """Register the decorated function as a check; the section is the id prefix."""

    def decorator(body: CheckBody) -> CheckBody:
        registry.register(
            Check(
                id=check_id,
                title=title,
                anchor=anchor,
                section=check_id.split(".", 1)[0],
                severity=severity,
                mode=mode,
                body=body,
                slow=slow,
                models=models,
            )
        )
        return body

    return decorator
