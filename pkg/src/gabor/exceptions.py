"""
Gabor toolkit exception classes.

This module defines custom exception classes for the finite Gabor analysis
toolkit, providing specific error types for different failure scenarios.
"""

from typing import Optional, Dict, Any


class GaborError(Exception):
    """
    Base exception class for all toolkit errors.

    Attributes:
        message (str): The error message.
        details (Dict[str, Any]): Additional error details.
        operation (str): The operation that raised the error.
    """

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.message = message
        self.details = details or {}
        self.operation = operation
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.operation:
            return f"[{self.operation}] {self.message}"
        return self.message


class DimensionError(GaborError):
    """
    Exception raised when signal lengths, matrix sizes or lattices disagree.
    """

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        super().__init__(f"Dimension Error: {message}", details, operation)


class LatticeSpecError(GaborError):
    """
    Exception raised for unparsable lattice specifications.

    This includes malformed "sep:"/"gen:" strings and separable steps
    that do not divide N.
    """

    def __init__(self, message: str, spec: Optional[str] = None, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.spec = spec
        error_msg = f"Lattice Spec Error: {message}"
        if spec is not None:
            error_msg = f"Lattice Spec Error [{spec}]: {message}"
        super().__init__(error_msg, details, operation)


class NotInvertibleError(GaborError):
    """
    Exception raised when an element of the twisted group algebra has no inverse.
    """

    def __init__(self, message: str, residual: Optional[float] = None, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.residual = residual
        error_msg = f"Not Invertible: {message}"
        if residual is not None:
            error_msg += f" (residual {residual:.3e})"
        super().__init__(error_msg, details, operation)


class NotAFrameError(GaborError):
    """
    Exception raised when a Gabor system has a vanishing lower frame bound.

    The frame report, when available, is stored in ``details['report']``.
    """

    def __init__(self, message: str, report: Optional[Any] = None, operation: Optional[str] = None):
        self.report = report
        details = {}
        if report is not None:
            details['report'] = report
        super().__init__(f"Not A Frame: {message}", details, operation)


class ConvergenceError(GaborError):
    """
    Exception raised when an iterative kernel exceeds its iteration cap.
    """

    def __init__(self, message: str, iterations: Optional[int] = None, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.iterations = iterations
        error_msg = f"Convergence Error: {message}"
        if iterations is not None:
            error_msg += f" (after {iterations} iterations)"
        super().__init__(error_msg, details, operation)


class NotPositiveDefiniteError(GaborError):
    """
    Exception raised when conjugate gradients meets non-positive curvature.
    """

    def __init__(self, message: str, curvature: Optional[float] = None, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.curvature = curvature
        super().__init__(f"Not Positive Definite: {message}", details, operation)


class NotHermitianError(GaborError):
    """
    Exception raised when an operator violates the Hermitian contract.
    """

    def __init__(self, message: str, deviation: Optional[float] = None, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.deviation = deviation
        super().__init__(f"Not Hermitian: {message}", details, operation)


class SingularMatrixError(GaborError):
    """
    Exception raised when LU factorization meets a pivot below threshold.
    """

    def __init__(self, message: str, pivot_index: Optional[int] = None, details: Optional[Dict[str, Any]] = None, operation: Optional[str] = None):
        self.pivot_index = pivot_index
        error_msg = f"Singular Matrix: {message}"
        if pivot_index is not None:
            error_msg += f" (pivot {pivot_index})"
        super().__init__(error_msg, details, operation)
