from typing import Optional


class GmpError(ValueError):
    """Base class for all gmp_pooling errors."""


class NonFiniteInputError(GmpError):
    """Raised when NaN or Inf values reach a solver or encoder."""


class EmptyInputError(GmpError):
    """Raised for empty matrices, descriptor sets or codebooks."""


class DimensionMismatchError(GmpError):
    """Raised when operand shapes disagree."""


class MissingBlockStructureError(GmpError):
    """Raised when a block path is requested for a dense encoding."""


class QuadratureNotConvergedError(GmpError):
    """Raised when halving the quadrature step moves the integral too much."""

    def __init__(self, message: str, change: float):
        super().__init__(message)
        self.change = change


class SolverError(GmpError):
    """Base class for linear solver failures, tagged with the solver method."""

    def __init__(self, message: str, method: str):
        super().__init__(f"[{method}] {message}")
        self.method = method


class AsymmetricMatrixError(SolverError):
    """Raised when a matrix expected to be symmetric is not, beyond rounding."""


class FactorizationError(SolverError):
    """Raised when a Cholesky factorization hits a non-positive pivot.

    Args:
        pivot: zero-based index of the failing pivot (within its block when
            ``block`` is set)
        block: index of the failing diagonal block, if any
    """

    def __init__(self, message: str, method: str, pivot: int, block: Optional[int] = None):
        super().__init__(message, method)
        self.pivot = pivot
        self.block = block


class SingularKernelError(SolverError):
    """Raised for an unregularized dual solve on a singular kernel matrix."""


class ConfigError(GmpError):
    """Raised by config validation; ``field`` is the dotted path of the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class DescriptorParseError(GmpError):
    """Raised for malformed descriptor files; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
