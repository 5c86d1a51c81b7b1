from .base import EngineException, InternalInconsistency


class ChartMismatch(EngineException):
    def __init__(self, left: str, right: str):
        super().__init__(
            message=f"Operands live on different charts: {left} vs {right}",
            code="CHART_MISMATCH",
        )
        self.left = left
        self.right = right


class DegreeOverflow(EngineException):
    def __init__(self, degree: int, dimension: int):
        super().__init__(
            message=f"Form degree {degree} exceeds chart dimension {dimension}",
            code="DEGREE_OVERFLOW",
        )
        self.degree = degree
        self.dimension = dimension


class DependentForms(EngineException):
    def __init__(self, rank: int, count: int):
        super().__init__(
            message=f"Forms are dependent: rank {rank} < {count}",
            code="DEPENDENT_FORMS",
        )
        self.rank = rank
        self.count = count


class InconsistentRank(InternalInconsistency):
    def __init__(self, symbolic: int, numeric: list[int]):
        super().__init__(
            message=f"Symbolic rank {symbolic} disagrees with numeric ranks {numeric}",
            code="INCONSISTENT_RANK",
        )
        self.symbolic = symbolic
        self.numeric = numeric


class NotEquivalent(EngineException):
    def __init__(self, index: int, residual: str):
        super().__init__(
            message=f"Pulled-back form {index} is not in the ideal; residual {residual}",
            code="NOT_EQUIVALENT",
        )
        self.index = index
        self.residual = residual


class NotSolvable(EngineException):
    def __init__(self, message: str):
        super().__init__(
            message=message,
            code="NOT_SOLVABLE",
        )
