from typing import Any, Optional


class CsqError(Exception):
    """Base class for every error raised by csquant"""


class ConfigError(CsqError):
    pass


class CapacityError(CsqError):
    """A quadrature rule would exceed the configured node budget"""


class EvaluationError(CsqError):
    """A function returned a non-finite value at a quadrature node"""

    def __init__(self, message: str, node: Optional[Any] = None):
        super().__init__(message)
        self.node = node


class ConvergenceError(CsqError):
    """Adaptive integration stopped before two iterates agreed"""

    def __init__(self, message: str, previous: Any = None, current: Any = None):
        super().__init__(message)
        self.previous = previous
        self.current = current


class FamilyError(CsqError):
    """Function family failed the Gram (orthonormality) check"""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class DegeneratePointError(CsqError):
    """The weight N(x) vanishes, so |x> cannot be normalized"""

    def __init__(self, message: str, node: Optional[Any] = None):
        super().__init__(message)
        self.node = node


class DimensionError(CsqError):
    pass


class NotHermitianError(CsqError):
    def __init__(self, message: str, asymmetry: float = float("nan")):
        super().__init__(message)
        self.asymmetry = asymmetry


class NumericalError(CsqError):
    """Eigensolver non-convergence or a non-finite spectral function"""


class UnrepresentableError(CsqError):
    """No upper symbol exists inside the candidate basis"""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class ObservableError(CsqError):
    pass


class UsageError(CsqError):
    """Invalid command-line arguments; exit code 2"""
