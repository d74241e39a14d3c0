"""
Twisted group algebra of a lattice: the finite noncommutative torus.

An element is a coefficient vector a over the lattice L in canonical order,
standing for the operator sum_lambda a(lambda) pi(lambda). The product is
twisted convolution with the cocycle, the involution matches the operator
adjoint, and represent / extract_coefficients pass between coefficients and
N x N matrices.

Elements carry a twist of +1 or -1. Twist -1 is the algebra with the
conjugate cocycle; it is represented by lambda -> conj(pi(lambda)), which is
multiplicative for that cocycle, and it hosts the right module structure
over the adjoint lattice.
"""

import logging
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from .exceptions import DimensionError, NotInvertibleError, SingularMatrixError
from .lattice import Lattice
from .numerics import lu_solve
from .phase_space import OperatorMatrix, PhasePoint, unit_root
from ..utils.constants import GRAM_TOLERANCE, INVERT_RESIDUAL_TOLERANCE

logger = logging.getLogger(__name__)

TWISTS = (1, -1)


@dataclass(eq=False)
class AlgebraElement:
    """
    Coefficients of an element of the twisted group algebra of a lattice.

    Attributes:
        lattice (Lattice): Support lattice.
        coeffs (NDArray[np.complex128]): One coefficient per lattice point, canonical order.
        twist (int): +1 for the cocycle algebra, -1 for the conjugate-cocycle algebra.
    """
    lattice: Lattice
    coeffs: NDArray[np.complex128]
    twist: int = 1

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.lattice.size,):
            raise DimensionError(f"expected {self.lattice.size} coefficients, got shape {self.coeffs.shape}",
                                 operation="AlgebraElement")
        if self.twist not in TWISTS:
            raise ValueError(f"twist must be +1 or -1, got {self.twist}")

    @classmethod
    def zeros(cls, lattice: Lattice, twist: int = 1) -> 'AlgebraElement':
        return cls(lattice, np.zeros(lattice.size, dtype=np.complex128), twist)

    @classmethod
    def delta(cls, lattice: Lattice, point: PhasePoint, value: complex = 1.0, twist: int = 1) -> 'AlgebraElement':
        """The element value * delta_point."""
        coeffs = np.zeros(lattice.size, dtype=np.complex128)
        coeffs[lattice.index_of(point)] = value
        return cls(lattice, coeffs, twist)

    @classmethod
    def identity(cls, lattice: Lattice, twist: int = 1) -> 'AlgebraElement':
        """Unit element delta at (0,0)."""
        return cls.delta(lattice, PhasePoint(0, 0), 1.0, twist)

    @classmethod
    def from_mapping(cls, lattice: Lattice, values: Mapping[PhasePoint, complex], twist: int = 1) -> 'AlgebraElement':
        """Build an element from a sparse point -> coefficient mapping."""
        coeffs = np.zeros(lattice.size, dtype=np.complex128)
        for point, value in values.items():
            coeffs[lattice.index_of(point)] += value
        return cls(lattice, coeffs, twist)

    def coefficient(self, point: PhasePoint) -> complex:
        return complex(self.coeffs[self.lattice.index_of(point)])

    def _check_compatible(self, other: 'AlgebraElement', operation: str):
        if self.lattice != other.lattice:
            raise DimensionError("elements live on different lattices", operation=operation)
        if self.twist != other.twist:
            raise DimensionError("elements have different twists", operation=operation)

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._check_compatible(other, "add")
        return AlgebraElement(self.lattice, self.coeffs + other.coeffs, self.twist)

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._check_compatible(other, "sub")
        return AlgebraElement(self.lattice, self.coeffs - other.coeffs, self.twist)

    def __rmul__(self, scalar: complex) -> 'AlgebraElement':
        return AlgebraElement(self.lattice, complex(scalar) * self.coeffs, self.twist)

    def __neg__(self) -> 'AlgebraElement':
        return AlgebraElement(self.lattice, -self.coeffs, self.twist)

    def allclose(self, other: 'AlgebraElement', atol: float = 1e-12) -> bool:
        """Coefficientwise comparison on the same lattice and twist."""
        self._check_compatible(other, "allclose")
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))


def _cocycle_table(lattice: Lattice, twist: int) -> NDArray[np.complex128]:
    """Entry [i, j] is the (possibly conjugated) cocycle of points[i], points[j]."""
    xs, ws = lattice.coords[:, 0], lattice.coords[:, 1]
    return unit_root(-twist * np.outer(xs, ws), lattice.n)


def twisted_convolve(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """
    Twisted convolution a # b.

    out(lambda) = sum_mu a(mu) b(lambda - mu) cocycle(mu, lambda - mu)

    Raises:
        DimensionError: If the lattices or twists differ.
    """
    a._check_compatible(b, "twisted_convolve")
    lattice = a.lattice
    products = np.outer(a.coeffs, b.coeffs) * _cocycle_table(lattice, a.twist)
    out = np.zeros(lattice.size, dtype=np.complex128)
    np.add.at(out, lattice.addition_table.ravel(), products.ravel())
    return AlgebraElement(lattice, out, a.twist)


def involution(a: AlgebraElement) -> AlgebraElement:
    """
    Involution matching the operator adjoint.

    out(lambda) = phase(lambda) conj(a(-lambda)) with phase(x, w) = e^{-2 pi i x w / N}
    (conjugated for twist -1), so represent(involution(a)) = represent(a)^H.
    """
    lattice = a.lattice
    xs, ws = lattice.coords[:, 0], lattice.coords[:, 1]
    phase = unit_root(-a.twist * xs * ws, lattice.n)
    return AlgebraElement(lattice, phase * np.conj(a.coeffs[lattice.negation_index]), a.twist)


def _diagonal_positions(lattice: Lattice):
    n = lattice.n
    t = np.arange(n)
    rows = np.broadcast_to(t, (lattice.size, n))
    cols = (t[None, :] - lattice.coords[:, 0][:, None]) % n
    return rows, cols


def represent(a: AlgebraElement) -> OperatorMatrix:
    """
    Matrix of sum_lambda a(lambda) pi(lambda) (entrywise conjugated shifts for twist -1).
    """
    lattice = a.lattice
    n = lattice.n
    t = np.arange(n)
    phases = unit_root(a.twist * np.outer(lattice.coords[:, 1], t), n)
    rows, cols = _diagonal_positions(lattice)
    matrix = np.zeros((n, n), dtype=np.complex128)
    np.add.at(matrix, (rows, cols), a.coeffs[:, None] * phases)
    return matrix


def extract_coefficients(matrix, lattice: Lattice, twist: int = 1) -> AlgebraElement:
    """
    Hilbert-Schmidt projection of a matrix onto the shifts of a lattice.

    out(lambda) = trace(pi(lambda)^H M) / N

    Raises:
        DimensionError: If the matrix is not N x N.
    """
    n = lattice.n
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (n, n):
        raise DimensionError(f"expected a {n}x{n} matrix, got {matrix.shape}", operation="extract_coefficients")
    t = np.arange(n)
    phases = unit_root(-twist * np.outer(lattice.coords[:, 1], t), n)
    rows, cols = _diagonal_positions(lattice)
    coeffs = np.sum(phases * matrix[rows, cols], axis=1) / n
    return AlgebraElement(lattice, coeffs, twist)


def left_multiplication_matrix(a: AlgebraElement) -> NDArray[np.complex128]:
    """
    Matrix L of b -> a # b on coefficient vectors.

    L[i, j] = a(lambda_i - nu_j) cocycle(lambda_i - nu_j, nu_j)
    """
    lattice = a.lattice
    diff = lattice.addition_table[:, lattice.negation_index]
    xs, ws = lattice.coords[:, 0], lattice.coords[:, 1]
    exponents = -a.twist * xs[diff] * ws[None, :]
    return a.coeffs[diff] * unit_root(exponents, lattice.n)


def invert(a: AlgebraElement, residual_tolerance: float = INVERT_RESIDUAL_TOLERANCE) -> AlgebraElement:
    """
    Inverse in the twisted group algebra.

    Solves the |L| x |L| system of left twisted convolution by a against the
    unit, then checks both a # b and b # a against the unit.

    Raises:
        NotInvertibleError: If the solve fails or the residual exceeds the tolerance.
    """
    lattice = a.lattice
    unit = AlgebraElement.identity(lattice, a.twist)
    try:
        coeffs = lu_solve(left_multiplication_matrix(a), unit.coeffs)
    except SingularMatrixError as e:
        raise NotInvertibleError(e.message, details=e.details, operation="invert") from e
    b = AlgebraElement(lattice, coeffs, a.twist)

    residual = max(
        float(np.max(np.abs(twisted_convolve(a, b).coeffs - unit.coeffs))),
        float(np.max(np.abs(twisted_convolve(b, a).coeffs - unit.coeffs))),
    )
    if residual > residual_tolerance:
        raise NotInvertibleError("inverse does not reproduce the unit", residual, operation="invert")
    logger.debug(f"Inverted element on {lattice.size} points, residual {residual:.3e}")
    return b


def _shift_vectors(lattice: Lattice) -> NDArray[np.complex128]:
    rows = []
    for index in range(lattice.size):
        coeffs = np.zeros(lattice.size, dtype=np.complex128)
        coeffs[index] = 1.0
        rows.append(represent(AlgebraElement(lattice, coeffs)).ravel())
    return np.array(rows)


def linear_independence_check(lattice: Lattice, tol: float = GRAM_TOLERANCE) -> bool:
    """
    True iff the shifts of the lattice are Hilbert-Schmidt orthonormal after scaling.

    Gram entry (lambda, mu) is trace(pi(lambda)^H pi(mu)) / N.
    """
    vectors = _shift_vectors(lattice)
    gram = np.conj(vectors) @ vectors.T / lattice.n
    return bool(np.max(np.abs(gram - np.eye(lattice.size))) <= tol)


def span_rank(lattice: Lattice) -> int:
    """Rank of the shifts of the lattice as vectors in C^{N x N}."""
    return int(np.linalg.matrix_rank(_shift_vectors(lattice)))


def l1_norm(a: AlgebraElement) -> float:
    return float(np.sum(np.abs(a.coeffs)))


def commutator(a: AlgebraElement, b: AlgebraElement) -> float:
    """Largest coefficient of a # b - b # a."""
    return float(np.max(np.abs(twisted_convolve(a, b).coeffs - twisted_convolve(b, a).coeffs)))
