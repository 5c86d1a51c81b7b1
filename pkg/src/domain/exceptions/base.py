class EngineException(Exception):
    def __init__(self, message: str, code: str = "ENGINE_ERROR"):
        self.message = message
        self.code = code
        super().__init__(self.message)


class InternalInconsistency(EngineException):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, code: str = "INTERNAL_INCONSISTENCY"):
        super().__init__(message=message, code=code)
