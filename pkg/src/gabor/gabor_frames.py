"""
Gabor frames over a lattice: frame operator, bounds, dual and tight windows,
Wexler-Raz duality and multi-window systems.

The frame operator of g over L is S = rank_one(g, g). Its Janssen expansion
over L0 has coefficients (|L| / N) <g, pi(nu) g>, so a pair (g, gamma) is dual
exactly when (|L| / N) <g, pi(nu) gamma> vanishes off the origin and equals 1
at it.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

from .exceptions import DimensionError, NotAFrameError
from .hilbert_module import ModulePair, _signal, rank_one
from .lattice import redundancy
from .numerics import DEFAULT_SOLVER, HermitianOperator, SolverSettings, cg_solve, jacobi_eig
from .phase_space import OperatorMatrix, PhasePoint, Signal
from .tf_transforms import gabor_synthesis, shift_orbit, stft_sampled
from ..utils.constants import (
    FRAME_TOLERANCE, SQRT_EIGENVALUE_FLOOR, WEXLER_RAZ_TOLERANCE
)

logger = logging.getLogger(__name__)


@dataclass
class FrameReport:
    """
    Frame bounds of a Gabor system.

    Attributes:
        lower_bound (float): A, the smallest eigenvalue of the frame operator (clamped at 0).
        upper_bound (float): B, the largest eigenvalue.
        is_frame (bool): True iff A exceeds the frame tolerance.
        redundancy (Fraction): |L| / N.
        condition_number (float): B / A, infinite when A = 0.
    """
    lower_bound: float
    upper_bound: float
    is_frame: bool
    redundancy: Fraction
    condition_number: float

    @property
    def is_tight(self) -> bool:
        """Check if both bounds agree to the frame tolerance."""
        return self.is_frame and abs(self.upper_bound - self.lower_bound) <= FRAME_TOLERANCE * self.upper_bound

    def as_dict(self) -> Dict[str, object]:
        """Report fields in a stable order."""
        return {
            'lower_bound': self.lower_bound,
            'upper_bound': self.upper_bound,
            'is_frame': self.is_frame,
            'redundancy': self.redundancy,
            'condition_number': self.condition_number,
        }


@dataclass
class WexlerRazReport:
    """
    Deviation of (|L| / N) <g, pi(nu) gamma> from delta at the origin over L0.

    Attributes:
        residuals (Dict[PhasePoint, complex]): Residual per adjoint point, canonical order.
        max_residual (float): Largest residual modulus.
        passes (bool): True iff max_residual is below the tolerance.
    """
    residuals: Dict[PhasePoint, complex] = field(repr=False)
    max_residual: float
    passes: bool

    def as_dict(self) -> Dict[str, object]:
        return {'max_residual': self.max_residual, 'passes': self.passes}


@dataclass
class TightFrameReport:
    """
    Tightness of a Gabor system and orthogonality of its adjoint system.

    Attributes:
        bound (float): Expected tight bound (|L| / N) ||g||^2.
        frame_deviation (float): max |S - bound Id|.
        gram_deviation (float): max |Gram over L0 - ||g||^2 Id|.
        is_tight (bool): frame_deviation within tolerance.
        is_orthogonal (bool): gram_deviation within tolerance.
    """
    bound: float
    frame_deviation: float
    gram_deviation: float
    is_tight: bool
    is_orthogonal: bool


def frame_operator(g, m: ModulePair) -> OperatorMatrix:
    """Frame operator S f = sum_lambda <f, pi(lambda) g> pi(lambda) g."""
    return rank_one(g, g, m)


def frame_bounds(g, m: ModulePair, tol: float = FRAME_TOLERANCE,
                 solver: SolverSettings = DEFAULT_SOLVER) -> FrameReport:
    """
    Optimal frame bounds from the extreme eigenvalues of the frame operator.

    Args:
        g: Window.
        m (ModulePair): Lattice and adjoint.
        tol (float): Lower bounds at or below tol mean "not a frame".
        solver (SolverSettings): Jacobi threshold and sweep cap.
    Returns:
        FrameReport: Bounds, frame flag, redundancy and condition number.
    """
    values = jacobi_eig(frame_operator(g, m), solver.jacobi_threshold, solver.jacobi_max_sweeps).values
    lower = max(float(values[0]), 0.0)
    upper = max(float(values[-1]), 0.0)
    is_frame = lower > tol
    condition = upper / lower if is_frame else float('inf')
    report = FrameReport(lower, upper, is_frame, redundancy(m.lattice), condition)
    logger.debug(f"Frame bounds A={lower:.6g} B={upper:.6g} over {m.lattice.size} points")
    return report


def _require_frame(g, m: ModulePair, tol: float, solver: SolverSettings, operation: str) -> FrameReport:
    report = frame_bounds(g, m, tol, solver)
    if not report.is_frame:
        raise NotAFrameError(f"lower frame bound {report.lower_bound:.3e} is not above {tol:.0e}",
                             report, operation=operation)
    return report


def canonical_dual(g, m: ModulePair, tol: float = FRAME_TOLERANCE,
                   solver: SolverSettings = DEFAULT_SOLVER) -> Signal:
    """
    Canonical dual window S^{-1} g by conjugate gradients.

    Raises:
        NotAFrameError: If the system is not a frame.
    """
    g = _signal(g, m, "canonical_dual")
    _require_frame(g, m, tol, solver, "canonical_dual")
    op = HermitianOperator.from_matrix(frame_operator(g, m))
    return cg_solve(op, g, solver.cg_tolerance, solver.cg_cap(m.n))


def tight_window(g, m: ModulePair, tol: float = FRAME_TOLERANCE,
                 solver: SolverSettings = DEFAULT_SOLVER) -> Signal:
    """
    Canonical tight window S^{-1/2} g, whose frame operator is the identity.

    Raises:
        NotAFrameError: If the system is not a frame or an eigenvalue is below the square-root floor.
    """
    g = _signal(g, m, "tight_window")
    report = _require_frame(g, m, tol, solver, "tight_window")
    decomposition = jacobi_eig(frame_operator(g, m), solver.jacobi_threshold, solver.jacobi_max_sweeps)
    if decomposition.values[0] < SQRT_EIGENVALUE_FLOOR:
        raise NotAFrameError("frame operator too close to singular for a square root", report,
                             operation="tight_window")
    inverse_root = decomposition.function(lambda v: 1.0 / np.sqrt(v))
    return inverse_root @ g


def _residual_report(values, m: ModulePair, tol: float) -> WexlerRazReport:
    residuals = m.scale * np.asarray(values, dtype=np.complex128)
    residuals[0] -= 1.0
    table = {point: complex(r) for point, r in zip(m.adjoint.points, residuals)}
    max_residual = float(np.max(np.abs(residuals)))
    return WexlerRazReport(table, max_residual, max_residual < tol)


def wexler_raz_check(g, gamma, m: ModulePair, tol: float = WEXLER_RAZ_TOLERANCE) -> WexlerRazReport:
    """
    Wexler-Raz residuals (|L| / N) <g, pi(nu) gamma> - delta(nu) over L0.

    The check passes exactly when rank_one(gamma, g) is the identity.
    """
    g = _signal(g, m, "wexler_raz_check")
    gamma = _signal(gamma, m, "wexler_raz_check")
    return _residual_report(stft_sampled(g, gamma, m.adjoint).values, m, tol)


def biorthogonality_check(g, gamma, m: ModulePair, tol: float = WEXLER_RAZ_TOLERANCE) -> bool:
    """
    True iff <pi(nu) gamma, pi(mu) g> = (N / |L|) delta(nu, mu) for all nu, mu in L0.

    Deviations are measured after scaling by |L| / N so the verdict matches wexler_raz_check.
    """
    g = _signal(g, m, "biorthogonality_check")
    gamma = _signal(gamma, m, "biorthogonality_check")
    gram = shift_orbit(gamma, m.adjoint) @ np.conj(shift_orbit(g, m.adjoint)).T
    deviation = np.max(np.abs(m.scale * gram - np.eye(m.adjoint.size)))
    return bool(deviation < tol)


def _check_pairs(pairs: Sequence[Tuple[Signal, Signal]], operation: str):
    if not pairs:
        raise DimensionError("window list is empty", operation=operation)


def multiwindow_frame_operator(pairs: Sequence[Tuple[Signal, Signal]], m: ModulePair) -> OperatorMatrix:
    """
    Sum of rank_one(gamma_i, g_i) over the window pairs (g_i, gamma_i).

    Raises:
        DimensionError: If the list is empty or a length is off.
    """
    _check_pairs(pairs, "multiwindow_frame_operator")
    total = np.zeros((m.n, m.n), dtype=np.complex128)
    for g, gamma in pairs:
        total += rank_one(gamma, g, m)
    return total


def multiwindow_wexler_raz_check(pairs: Sequence[Tuple[Signal, Signal]], m: ModulePair,
                                 tol: float = WEXLER_RAZ_TOLERANCE) -> WexlerRazReport:
    """Residuals (|L| / N) sum_i <g_i, pi(nu) gamma_i> - delta(nu) over L0."""
    _check_pairs(pairs, "multiwindow_wexler_raz_check")
    summed = np.zeros(m.adjoint.size, dtype=np.complex128)
    for g, gamma in pairs:
        summed += stft_sampled(_signal(g, m, "multiwindow_wexler_raz_check"),
                               _signal(gamma, m, "multiwindow_wexler_raz_check"), m.adjoint).values
    return _residual_report(summed, m, tol)


def tight_frame_check(g, m: ModulePair, tol: float = WEXLER_RAZ_TOLERANCE) -> TightFrameReport:
    """
    Compare tightness over L with orthogonality of the shifts over L0.

    A system over L is tight with bound (|L| / N) ||g||^2 exactly when the
    shifts of g over L0 are orthogonal with common norm ||g||.
    """
    g = _signal(g, m, "tight_frame_check")
    energy = float(np.vdot(g, g).real)
    bound = m.scale * energy
    frame_deviation = float(np.max(np.abs(frame_operator(g, m) - bound * np.eye(m.n))))
    orbit = shift_orbit(g, m.adjoint)
    gram = np.conj(orbit) @ orbit.T
    gram_deviation = float(np.max(np.abs(gram - energy * np.eye(m.adjoint.size))))
    return TightFrameReport(bound, frame_deviation, gram_deviation,
                            frame_deviation < tol * max(1.0, bound),
                            gram_deviation < tol * max(1.0, energy))


def reconstruct(f, g, gamma, m: ModulePair) -> Signal:
    """Synthesize sum_lambda <f, pi(lambda) g> pi(lambda) gamma."""
    f = _signal(f, m, "reconstruct")
    g = _signal(g, m, "reconstruct")
    return gabor_synthesis(stft_sampled(f, g, m.lattice), gamma)


def inverse_frame_operator(g, m: ModulePair, tol: float = FRAME_TOLERANCE,
                           solver: SolverSettings = DEFAULT_SOLVER) -> OperatorMatrix:
    """S^{-1}, computed as the frame operator of the canonical dual."""
    return frame_operator(canonical_dual(g, m, tol, solver), m)


def frame_energy(f, g, m: ModulePair) -> float:
    """sum_lambda |<f, pi(lambda) g>|^2."""
    values = stft_sampled(_signal(f, m, "frame_energy"), _signal(g, m, "frame_energy"), m.lattice).values
    return float(np.sum(np.abs(values) ** 2))
