"""
Dense numerical kernels used by the frame and algebra layers.

Conjugate gradients, cyclic complex Jacobi, power iteration and partially
pivoted LU. Every kernel is deterministic: the power-iteration start
vector comes from a fixed seed, and loops run in a fixed order.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from .exceptions import (
    ConvergenceError, DimensionError, NotHermitianError,
    NotPositiveDefiniteError, SingularMatrixError
)
from ..utils.constants import (
    CG_CURVATURE_GUARD, CG_ITERATION_FACTOR, CG_TOLERANCE, HERMITIAN_SAMPLES,
    HERMITIAN_TOLERANCE, JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG_THRESHOLD,
    LU_GROWTH_WARNING, LU_PIVOT_THRESHOLD, LU_RESIDUAL_TOLERANCE,
    POWER_ITERATION_SEED, POWER_MAX_ITERATIONS, POWER_TOLERANCE
)

logger = logging.getLogger(__name__)

Vector = NDArray[np.complex128]
Matrix = NDArray[np.complex128]


@dataclass(frozen=True)
class SolverSettings:
    """
    Tolerances and caps handed to the solvers by the frame layer.

    Attributes:
        cg_tolerance (float): Relative residual target for conjugate gradients.
        cg_iteration_factor (int): CG cap per unit of dimension.
        jacobi_threshold (float): Relative off-diagonal norm at which Jacobi stops.
        jacobi_max_sweeps (int): Jacobi sweep cap.
    """
    cg_tolerance: float = CG_TOLERANCE
    cg_iteration_factor: int = CG_ITERATION_FACTOR
    jacobi_threshold: float = JACOBI_OFFDIAG_THRESHOLD
    jacobi_max_sweeps: int = JACOBI_MAX_SWEEPS

    def cg_cap(self, dimension: int) -> int:
        return self.cg_iteration_factor * dimension


DEFAULT_SOLVER = SolverSettings()


def _random_vector(rng: np.random.Generator, n: int) -> Vector:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@dataclass
class HermitianOperator:
    """
    A linear map on C^N promised to be Hermitian.

    The promise is checked on construction against a few seeded random
    vectors: |<Af, g> - <f, Ag>| must stay within HERMITIAN_TOLERANCE,
    relative to the size of the terms.

    Attributes:
        dimension (int): N.
        apply (Callable): Deterministic map from a length-N vector to a length-N vector.
        matrix (Optional[Matrix]): Dense matrix, when the operator came from one.
    """
    dimension: int
    apply: Callable[[Vector], Vector]
    matrix: Optional[Matrix] = field(default=None, repr=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionError("operator dimension must be positive", operation="HermitianOperator")
        rng = np.random.default_rng(POWER_ITERATION_SEED)
        for _ in range(HERMITIAN_SAMPLES):
            f = _random_vector(rng, self.dimension)
            g = _random_vector(rng, self.dimension)
            af = np.asarray(self.apply(f), dtype=np.complex128)
            ag = np.asarray(self.apply(g), dtype=np.complex128)
            if af.shape != (self.dimension,):
                raise DimensionError(f"operator returned shape {af.shape}", operation="HermitianOperator")
            lhs = np.vdot(g, af)
            rhs = np.vdot(ag, f)
            scale = max(1.0, np.linalg.norm(af) * np.linalg.norm(g), np.linalg.norm(f) * np.linalg.norm(ag))
            deviation = abs(lhs - rhs) / scale
            if deviation > HERMITIAN_TOLERANCE:
                raise NotHermitianError("sampled inner products disagree", deviation, operation="HermitianOperator")

    @classmethod
    def from_matrix(cls, matrix) -> 'HermitianOperator':
        """Wrap a dense square matrix."""
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {matrix.shape}", operation="from_matrix")
        return cls(matrix.shape[0], lambda v: matrix @ v, matrix)

    def __call__(self, v: Vector) -> Vector:
        return self.apply(v)


@dataclass
class EigenDecomposition:
    """
    Eigenvalues in ascending order with unitary eigenvector columns.

    Attributes:
        values (NDArray[np.float64]): Real eigenvalues, ascending.
        vectors (Matrix): Column k is the eigenvector of values[k].
        sweeps (int): Jacobi sweeps used.
    """
    values: NDArray[np.float64]
    vectors: Matrix
    sweeps: int = 0

    def reconstruct(self) -> Matrix:
        """Return V diag(values) V^H."""
        return (self.vectors * self.values) @ self.vectors.conj().T

    def function(self, fn: Callable[[NDArray[np.float64]], NDArray[np.float64]]) -> Matrix:
        """Apply a scalar function spectrally: V diag(fn(values)) V^H."""
        return (self.vectors * fn(self.values)) @ self.vectors.conj().T


def _square(matrix, operation: str) -> Matrix:
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {matrix.shape}", operation=operation)
    return matrix


def cg_solve(op: HermitianOperator, b, tol: float = CG_TOLERANCE,
             max_iterations: Optional[int] = None) -> Vector:
    """
    Solve op(x) = b by conjugate gradients.

    Args:
        op (HermitianOperator): Positive definite operator on the relevant space.
        b: Right-hand side.
        tol (float): Relative residual target ||op(x) - b|| <= tol ||b||.
        max_iterations (Optional[int]): Iteration cap, 10 N by default.
    Returns:
        Vector: The solution; zero when b = 0.
    Raises:
        NotPositiveDefiniteError: If a search direction has non-positive curvature.
        ConvergenceError: If the cap is reached first.
    """
    b = np.asarray(b, dtype=np.complex128)
    if b.shape != (op.dimension,):
        raise DimensionError(f"right-hand side has shape {b.shape}", operation="cg_solve")
    if max_iterations is None:
        max_iterations = CG_ITERATION_FACTOR * op.dimension

    x = np.zeros_like(b)
    b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        return x

    target = tol * b_norm
    r = b.copy()
    p = r.copy()
    rs = np.vdot(r, r).real
    for iteration in range(1, max_iterations + 1):
        ap = op.apply(p)
        curvature = np.vdot(p, ap).real
        p_sq = np.vdot(p, p).real
        if curvature < CG_CURVATURE_GUARD * p_sq:
            raise NotPositiveDefiniteError("negative curvature direction", curvature / p_sq, operation="cg_solve")
        if curvature <= 0.0:
            raise NotPositiveDefiniteError("search direction lies in the kernel", 0.0, operation="cg_solve")
        alpha = rs / curvature
        x = x + alpha * p
        r = r - alpha * ap
        rs_new = np.vdot(r, r).real
        if np.sqrt(rs_new) <= target:
            # recurrence residual drifts; confirm with the true one
            r_true = b - op.apply(x)
            if np.linalg.norm(r_true) <= target:
                logger.debug(f"CG converged in {iteration} iterations")
                return x
            r = r_true
            rs_new = np.vdot(r, r).real
            p = r.copy()
            rs = rs_new
            continue
        p = r + (rs_new / rs) * p
        rs = rs_new

    raise ConvergenceError("conjugate gradients did not reach the tolerance", max_iterations, operation="cg_solve")


def _check_hermitian(matrix: Matrix, operation: str):
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    deviation = float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0
    if deviation > HERMITIAN_TOLERANCE * scale:
        raise NotHermitianError(f"matrix deviates from its adjoint by {deviation:.3e}", deviation, operation=operation)


def _rotate(a: Matrix, v: Matrix, p: int, q: int):
    apq = a[p, q]
    magnitude = abs(apq)
    phase = apq / magnitude
    tau = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ rot
    a[idx, :] = rot.conj().T @ a[idx, :]
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ rot


def jacobi_eig(matrix, threshold: float = JACOBI_OFFDIAG_THRESHOLD,
               max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the (p, q) entry with a diagonal
    unitary and then applies the real symmetric Jacobi rotation, so the
    2 x 2 Hermitian subproblem is solved exactly.

    Args:
        matrix: Hermitian matrix.
        threshold (float): Stop when the off-diagonal Frobenius norm is at most threshold * ||M||_F.
        max_sweeps (int): Sweep cap.
    Returns:
        EigenDecomposition: Ascending eigenvalues and unitary eigenvectors.
    Raises:
        NotHermitianError: If the input is not Hermitian.
        ConvergenceError: If the sweep cap is reached.
    """
    m = _square(matrix, "jacobi_eig")
    _check_hermitian(m, "jacobi_eig")
    n = m.shape[0]
    a = 0.5 * (m + m.conj().T)
    v = np.eye(n, dtype=np.complex128)
    total = np.linalg.norm(a)

    sweeps = 0
    while True:
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
        if total == 0.0 or off <= threshold * total:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError("Jacobi sweeps exhausted", sweeps, {'offdiag': off}, operation="jacobi_eig")
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
        sweeps += 1
        logger.debug(f"Jacobi sweep {sweeps}: off-diagonal norm {off:.3e}")

    values = np.real(np.diag(a)).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], v[:, order], sweeps)


def _power(apply: Callable[[Vector], Vector], n: int, tol: float, max_iterations: int) -> float:
    rng = np.random.default_rng(POWER_ITERATION_SEED)
    v = _random_vector(rng, n)
    v /= np.linalg.norm(v)
    previous = None
    for iteration in range(1, max_iterations + 1):
        w = np.asarray(apply(v), dtype=np.complex128)
        quotient = float(np.vdot(v, w).real)
        w_norm = np.linalg.norm(w)
        if w_norm == 0.0:
            return 0.0
        if previous is not None and abs(quotient - previous) <= tol * max(abs(quotient), np.finfo(float).tiny):
            logger.debug(f"Power iteration converged in {iteration} iterations")
            return quotient
        previous = quotient
        v = w / w_norm
    logger.warning(f"Power iteration hit its cap of {max_iterations} iterations")
    raise ConvergenceError("power iteration did not settle", max_iterations, operation="extreme_eigs")


def extreme_eigs(op: HermitianOperator, tol: float = POWER_TOLERANCE,
                 max_iterations: int = POWER_MAX_ITERATIONS) -> Tuple[float, float]:
    """
    Smallest and largest eigenvalue of a positive semidefinite operator.

    The largest comes from power iteration on op; the smallest from power
    iteration on (max Id - op).

    Returns:
        Tuple[float, float]: (min, max).
    Raises:
        ConvergenceError: If either iteration reaches the cap.
    """
    n = op.dimension
    largest = _power(op.apply, n, tol, max_iterations)
    if largest == 0.0:
        return 0.0, 0.0
    spread = _power(lambda v: largest * v - op.apply(v), n, tol, max_iterations)
    return largest - spread, largest


def operator_norm(matrix) -> float:
    """Spectral norm, the square root of the largest eigenvalue of M^H M."""
    m = _square(matrix, "operator_norm")
    gram = m.conj().T @ m
    values = jacobi_eig(0.5 * (gram + gram.conj().T)).values
    return float(np.sqrt(max(values[-1], 0.0)))


@dataclass
class LUFactorization:
    """
    Packed PA = LU factorization with partial pivoting.

    Attributes:
        lu (Matrix): Unit-lower L below the diagonal, U on and above it.
        permutation (NDArray[np.int64]): Row order, so PA = A[permutation].
        growth_factor (float): max |U| / max |A|.
    """
    lu: Matrix
    permutation: NDArray[np.int64]
    growth_factor: float

    def solve(self, b) -> Vector:
        """Forward and back substitution for A x = b."""
        b = np.asarray(b, dtype=np.complex128)
        n = self.lu.shape[0]
        if b.shape != (n,):
            raise DimensionError(f"right-hand side has shape {b.shape}", operation="LUFactorization.solve")
        y = b[self.permutation].copy()
        for i in range(1, n):
            y[i] -= self.lu[i, :i] @ y[:i]
        x = y
        for i in range(n - 1, -1, -1):
            x[i] = (x[i] - self.lu[i, i + 1:] @ x[i + 1:]) / self.lu[i, i]
        return x


def lu_factor(matrix, pivot_threshold: float = LU_PIVOT_THRESHOLD) -> LUFactorization:
    """
    Doolittle LU with partial pivoting.

    Raises:
        SingularMatrixError: If a pivot falls below pivot_threshold * max |A|.
    """
    a = _square(matrix, "lu_factor").copy()
    n = a.shape[0]
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        raise SingularMatrixError("matrix is zero", 0, operation="lu_factor")
    permutation = np.arange(n)

    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot_row, k]) <= pivot_threshold * scale:
            raise SingularMatrixError("pivot below threshold", k, operation="lu_factor")
        if pivot_row != k:
            a[[k, pivot_row], :] = a[[pivot_row, k], :]
            permutation[[k, pivot_row]] = permutation[[pivot_row, k]]
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])

    growth = float(np.max(np.abs(np.triu(a)))) / scale
    return LUFactorization(a, permutation, growth)


def lu_solve(matrix, b, pivot_threshold: float = LU_PIVOT_THRESHOLD,
             residual_tolerance: float = LU_RESIDUAL_TOLERANCE) -> Vector:
    """
    Solve M x = b by partially pivoted LU.

    Args:
        matrix: Square matrix.
        b: Right-hand side.
        pivot_threshold (float): Relative pivot threshold.
        residual_tolerance (float): Accept only if ||Mx - b|| <= residual_tolerance ||b||.
    Returns:
        Vector: The solution.
    Raises:
        SingularMatrixError: On a small pivot or an unacceptable residual.
    """
    m = _square(matrix, "lu_solve")
    factorization = lu_factor(m, pivot_threshold)
    if factorization.growth_factor > LU_GROWTH_WARNING:
        logger.warning(f"LU growth factor {factorization.growth_factor:.3e} exceeds {LU_GROWTH_WARNING:.0e}")
    x = factorization.solve(b)
    residual = float(np.linalg.norm(m @ x - np.asarray(b, dtype=np.complex128)))
    if residual > residual_tolerance * float(np.linalg.norm(b)):
        raise SingularMatrixError(f"residual {residual:.3e} above tolerance", details={'residual': residual},
                                  operation="lu_solve")
    return x
