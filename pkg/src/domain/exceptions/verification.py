from .base import EngineException


class UnknownCheck(EngineException):
    def __init__(self, check_id: str):
        super().__init__(
            message=f"Unknown check: {check_id}",
            code="UNKNOWN_CHECK",
        )
        self.check_id = check_id


class GuardViolation(EngineException):
    def __init__(self, guard: str, params: str = ""):
        super().__init__(
            message=f"Guard violated: {guard}{' at ' + params if params else ''}",
            code="GUARD_VIOLATION",
        )
        self.guard = guard


class MalformedParameter(EngineException):
    def __init__(self, name: str, value: str, expected: str = "an exact rational"):
        super().__init__(
            message=f"Malformed parameter {name}={value!r}: expected {expected}",
            code="MALFORMED_PARAMETER",
        )
        self.name = name
        self.value = value


class UnknownModel(EngineException):
    def __init__(self, name: str):
        super().__init__(
            message=f"Unknown model or constant table: {name}",
            code="UNKNOWN_MODEL",
        )
        self.name = name
