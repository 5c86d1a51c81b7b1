from .base import EngineException, InternalInconsistency


class NoSolution(EngineException):
    def __init__(self, residuals: dict[str, str]):
        super().__init__(
            message=f"Structure equations have no solution; {len(residuals)} residual components",
            code="NO_SOLUTION",
        )
        self.residuals = residuals


class SingularMetric(EngineException):
    def __init__(self, point: str):
        super().__init__(
            message=f"Metric is singular at {point}",
            code="SINGULAR_METRIC",
        )
        self.point = point


class OracleDisagreement(InternalInconsistency):
    def __init__(self, quantity: str, difference: float, tolerance: float):
        super().__init__(
            message=(
                f"Symbolic and finite-difference {quantity} differ by "
                f"{difference:.3e} (tolerance {tolerance:.1e})"
            ),
            code="ORACLE_DISAGREEMENT",
        )
        self.quantity = quantity
        self.difference = difference
        self.tolerance = tolerance
