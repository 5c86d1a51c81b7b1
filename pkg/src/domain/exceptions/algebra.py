from .base import EngineException


class DivisionByZero(EngineException):
    def __init__(self, expression: str = ""):
        super().__init__(
            message=f"Division by a zero scalar{': ' + expression if expression else ''}",
            code="DIVISION_BY_ZERO",
        )
        self.expression = expression


class UnknownSymbol(EngineException):
    def __init__(self, name: str, reason: str = "not registered"):
        super().__init__(
            message=f"Unknown symbol {name!r}: {reason}",
            code="UNKNOWN_SYMBOL",
        )
        self.name = name


class SubstitutionOutsideClass(EngineException):
    def __init__(self, message: str):
        super().__init__(
            message=message,
            code="SUBSTITUTION_OUTSIDE_CLASS",
        )


class DomainViolation(EngineException):
    def __init__(self, message: str):
        super().__init__(
            message=message,
            code="DOMAIN_VIOLATION",
        )


class ExpressionSyntaxError(EngineException):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(
            message=f"{message} at position {position}",
            code="EXPRESSION_SYNTAX_ERROR",
        )
        self.position = position
        self.text = text
