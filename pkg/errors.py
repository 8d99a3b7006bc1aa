"""
Error taxonomy for the polytope semiring toolkit
"""
from typing import Any, Dict, List, Optional


class PolySemiError(Exception):
    """Base class for every error raised by the toolkit"""


class MixedDimension(PolySemiError):
    """Operands live in different ambient dimensions"""

    def __init__(self, dims: List[int]):
        self.dims = list(dims)
        super().__init__(f"Mixed ambient dimensions: {sorted(set(self.dims))}")


class NegativeCoordinate(PolySemiError):
    """A lattice point has a coordinate below zero"""

    def __init__(self, point: Any):
        self.point = tuple(point)
        super().__init__(f"Negative coordinate in point {self.point}")


class ZeroElement(PolySemiError):
    """The operation is undefined on the zero element 0_A"""


class BudgetExceeded(PolySemiError):
    """A bounded search ran out of steps; `partial` holds what was found so far"""

    def __init__(self, message: str, budget: int, partial: Any = None):
        self.budget = budget
        self.partial = partial
        super().__init__(f"{message} (budget {budget} exhausted)")


class MixedDegree(PolySemiError):
    """Polytopes that should share a degree do not"""


class NotGraded(PolySemiError):
    """A sub-semimodule has a generator without a degree"""


class Inconclusive(PolySemiError):
    """No certificate was found up to the degree bound"""

    def __init__(self, bound: int, report: Optional[Dict[str, Any]] = None):
        self.bound = bound
        self.report = report or {}
        super().__init__(f"Inconclusive up to degree {bound}")


class Unstable(PolySemiError):
    """Generic-coefficient trials disagree"""

    def __init__(self, details: Dict[str, Any]):
        self.details = details
        super().__init__(f"Generic trials disagree: {details}")


class NotTypeOne(PolySemiError):
    """Syzygy record is not of type 1"""


class IndexNotInIndexSet(PolySemiError):
    """Pivot index is not in the type-1 index set"""


class IndexOutOfRange(PolySemiError):
    """Slot index outside 1..r or not i < j"""


class LengthMismatch(PolySemiError):
    """Tuples that must have equal length do not"""


class NotAPolynomialSyzygy(PolySemiError):
    """The polynomial tuples do not satisfy sum f_i g_i = 0"""


class ParseError(PolySemiError):
    """Text input could not be parsed; line and column are 1-based"""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")
