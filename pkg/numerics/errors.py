"""
Numerics Errors
Exception hierarchy shared by the special-function, quadrature, tricomi and airfoil modules.
The command layer maps these onto process return codes (see runner.py).
"""


class NumericsError(Exception):
    """Base class for every error raised by the numerics package."""


class DomainError(NumericsError, ValueError):
    """
    A precondition on an argument was violated.

    Raised for arguments outside the documented domain of an operation, e.g.
    ln_gamma(x) with x <= 0, an expansion order above 3 or |a| >= 1.
    """


class ConvergenceError(NumericsError, ArithmeticError):
    """
    An iteration, series or quadrature could not reach its tolerance.

    Attributes:
        estimate: Best value available when the computation stopped (may be None)
        err_estimate: Error estimate attached to that value (may be None)
    """

    def __init__(self, message: str, estimate: float = None, err_estimate: float = None):
        super().__init__(message)
        self.estimate = estimate
        self.err_estimate = err_estimate
