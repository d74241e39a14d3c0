"""
Signals as a bimodule over the shift algebras of a lattice and its adjoint.

The left algebra lives on L with the cocycle; the right algebra lives on the
adjoint lattice L0 with the conjugate cocycle (twist -1). Finite constants:

    inner_A(f, g)(lambda) = <f, pi(lambda) g>
    inner_B(f, g)(nu)     = (|L| / N) <pi(nu) g, f>
    act_right(g, b)       = sum_nu b(nu) pi(nu)^H g

With these, inner_A(f, g) h = act_right(f, inner_B(g, h)) holds exactly,
the full lattice gives inner_B(f, g) = N <g, f> delta_0, and
trace_B(inner_B(g, f)) = (|L| / N) trace_A(inner_A(f, g)).
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .exceptions import DimensionError
from .lattice import Lattice, adjoint_lattice
from .numerics import jacobi_eig, operator_norm
from .phase_space import OperatorMatrix, PhasePoint, Signal, _check_signal
from .tf_transforms import SampledCoefficients, gabor_synthesis, shift_orbit, stft_sampled
from .twisted_algebra import AlgebraElement, represent

logger = logging.getLogger(__name__)

MODULE_SIDES = ("A", "B")


@dataclass(frozen=True)
class ModulePair:
    """
    A lattice together with its adjoint.

    Attributes:
        lattice (Lattice): The lattice L acting on the left.
        adjoint (Lattice): L0, acting on the right.
    """
    lattice: Lattice
    adjoint: Lattice

    def __post_init__(self):
        if self.lattice.n != self.adjoint.n:
            raise DimensionError("lattice and adjoint live in different phase spaces", operation="ModulePair")
        if self.lattice.size * self.adjoint.size != self.lattice.n ** 2:
            raise DimensionError("|L| |L0| must equal N^2", operation="ModulePair")

    @classmethod
    def from_lattice(cls, lattice: Lattice) -> 'ModulePair':
        return cls(lattice, adjoint_lattice(lattice))

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def scale(self) -> float:
        """|L| / N, the constant shared by inner_B and the Janssen coefficients."""
        return self.lattice.size / self.lattice.n


def _signal(f, m: ModulePair, operation: str) -> Signal:
    f = _check_signal(f, operation)
    if f.shape[0] != m.n:
        raise DimensionError(f"signal length {f.shape[0]} does not match N={m.n}", operation=operation)
    return f


def inner_A(f, g, m: ModulePair) -> AlgebraElement:
    """Left inner product, coefficients <f, pi(lambda) g> over L."""
    f = _signal(f, m, "inner_A")
    g = _signal(g, m, "inner_A")
    return AlgebraElement(m.lattice, stft_sampled(f, g, m.lattice).values, 1)


def inner_B(f, g, m: ModulePair) -> AlgebraElement:
    """Right inner product, coefficients (|L| / N) <pi(nu) g, f> over L0, twist -1."""
    f = _signal(f, m, "inner_B")
    g = _signal(g, m, "inner_B")
    coeffs = m.scale * (shift_orbit(g, m.adjoint) @ np.conj(f))
    return AlgebraElement(m.adjoint, coeffs, -1)


def act_left(a: AlgebraElement, g) -> Signal:
    """Left action sum_lambda a(lambda) pi(lambda) g."""
    if a.twist != 1:
        raise DimensionError("left action needs a twist +1 element", operation="act_left")
    return gabor_synthesis(SampledCoefficients(a.lattice, a.coeffs), g)


def right_operator(b: AlgebraElement) -> OperatorMatrix:
    """Matrix of g -> act_right(g, b), the transpose of represent(b)."""
    if b.twist != -1:
        raise DimensionError("right action needs a twist -1 element", operation="right_operator")
    return represent(b).T


def act_right(g, b: AlgebraElement) -> Signal:
    """Right action sum_nu b(nu) pi(nu)^H g."""
    g = _check_signal(g, "act_right")
    if g.shape[0] != b.lattice.n:
        raise DimensionError(f"signal length {g.shape[0]} does not match N={b.lattice.n}", operation="act_right")
    return right_operator(b) @ g


def figa_check(f1, g1, f2, g2, m: ModulePair) -> Tuple[complex, complex]:
    """
    Both sides of the fundamental identity of Gabor analysis.

    lhs = sum over L of V_{g1} f1 conj(V_{g2} f2)
    rhs = (N / |L0|) sum over L0 of <f1, pi(nu) f2> conj(<g1, pi(nu) g2>)
    """
    f1, g1, f2, g2 = (_signal(s, m, "figa_check") for s in (f1, g1, f2, g2))
    lhs = np.vdot(stft_sampled(f2, g2, m.lattice).values, stft_sampled(f1, g1, m.lattice).values)
    left = stft_sampled(f1, f2, m.adjoint).values
    right = stft_sampled(g1, g2, m.adjoint).values
    rhs = (m.n / m.adjoint.size) * np.vdot(right, left)
    return complex(lhs), complex(rhs)


def rank_one(f, g, m: ModulePair) -> OperatorMatrix:
    """
    Matrix of h -> sum_lambda <h, pi(lambda) f> pi(lambda) g.

    Analysis window f, synthesis window g; rank_one(g, g) is the frame operator.
    """
    f = _signal(f, m, "rank_one")
    g = _signal(g, m, "rank_one")
    return shift_orbit(g, m.lattice).T @ np.conj(shift_orbit(f, m.lattice))


def janssen_coefficients(g, gamma, m: ModulePair) -> AlgebraElement:
    """
    Coefficients of rank_one(gamma, g) over the adjoint lattice.

    J(nu) = (|L| / N) <g, pi(nu) gamma>, so represent(J) = rank_one(gamma, g).
    """
    g = _signal(g, m, "janssen_coefficients")
    gamma = _signal(gamma, m, "janssen_coefficients")
    return AlgebraElement(m.adjoint, m.scale * stft_sampled(g, gamma, m.adjoint).values, 1)


def associativity_residual(f, g, h, m: ModulePair) -> float:
    """Norm of inner_A(f, g) h - f inner_B(g, h)."""
    left = act_left(inner_A(f, g, m), h)
    right = act_right(_signal(f, m, "associativity_residual"), inner_B(g, h, m))
    return float(np.linalg.norm(left - right))


def trace_A(a: AlgebraElement) -> complex:
    """Coefficient at the origin."""
    return a.coefficient(PhasePoint(0, 0))


def trace_B(b: AlgebraElement) -> complex:
    """Coefficient at the origin of an element over the adjoint lattice."""
    return b.coefficient(PhasePoint(0, 0))


def noncommutative_poisson(f, g, m: ModulePair) -> Tuple[complex, complex]:
    """
    Both sides of the trace relation between the two inner products.

    Returns:
        Tuple[complex, complex]: (trace_B(inner_B(g, f)), (|L| / N) trace_A(inner_A(f, g))).
    """
    lhs = trace_B(inner_B(g, f, m))
    rhs = m.scale * trace_A(inner_A(f, g, m))
    return lhs, rhs


def positivity_check(f, m: ModulePair) -> float:
    """Smallest eigenvalue of represent(inner_A(f, f))."""
    return float(jacobi_eig(represent(inner_A(f, f, m))).values[0])


def positivity_check_B(f, m: ModulePair) -> float:
    """Smallest eigenvalue of represent(inner_B(f, f))."""
    return float(jacobi_eig(represent(inner_B(f, f, m))).values[0])


def fullness_rank(m: ModulePair, side: str = "A") -> int:
    """
    Dimension of the span of inner products of standard basis vectors.

    Full means |L| for side 'A' and |L0| for side 'B'.
    """
    if side not in MODULE_SIDES:
        raise ValueError(f"side must be one of {MODULE_SIDES}, got {side}")
    basis = np.eye(m.n, dtype=np.complex128)
    inner = inner_A if side == "A" else inner_B
    rows = [inner(basis[i], basis[j], m).coeffs for i in range(m.n) for j in range(m.n)]
    return int(np.linalg.matrix_rank(np.array(rows)))


def boundedness_check(a: AlgebraElement, f, m: ModulePair) -> Tuple[float, float]:
    """
    Operator-norm bound for the left action.

    Returns:
        Tuple[float, float]: (||represent(inner_A(af, af))||, ||represent(a)||^2 ||represent(inner_A(f, f))||).
    """
    af = act_left(a, f)
    lhs = operator_norm(represent(inner_A(af, af, m)))
    rhs = operator_norm(represent(a)) ** 2 * operator_norm(represent(inner_A(f, f, m)))
    return lhs, rhs
