"""
Finite Gabor analysis on Z_N.

This package provides time-frequency shifts on Z_N, lattices in the phase
space and their adjoints, the short-time Fourier transform, the twisted
group algebra of a lattice, the bimodule structure of signals over a lattice
and its adjoint, and Gabor frame tools built on these.
"""

from .exceptions import (
    GaborError, DimensionError, LatticeSpecError, NotInvertibleError, NotAFrameError,
    ConvergenceError, NotPositiveDefiniteError, NotHermitianError, SingularMatrixError
)
from .phase_space import (
    TorusSize, PhasePoint, translate, modulate, tf_shift, tf_shift_matrix, cocycle,
    heisenberg_bicharacter, involution_phase, unit_root, dft, inner, norm
)
from .lattice import (
    LatticeSpec, Lattice, PointSet, parse_lattice_spec, check_lattice_spec, enumerate_lattice, enumerate_subgroups,
    full_lattice, trivial_lattice, adjoint_set, adjoint_lattice, is_isotropic, is_maximal_isotropic,
    redundancy, covolume
)
from .tf_transforms import (
    PhaseFunction, SampledCoefficients, stft, stft_sampled, gabor_synthesis, reconstruct_full,
    symplectic_ft, poisson_sum, moyal_check, s0_norm, periodized_gaussian, box_window, delta_window
)
from .twisted_algebra import (
    AlgebraElement, twisted_convolve, involution, represent, extract_coefficients, invert,
    linear_independence_check, span_rank, l1_norm
)
from .hilbert_module import (
    ModulePair, inner_A, inner_B, act_left, act_right, right_operator, figa_check, rank_one,
    janssen_coefficients, associativity_residual, trace_A, trace_B, noncommutative_poisson,
    positivity_check, positivity_check_B, fullness_rank, boundedness_check
)
from .gabor_frames import (
    FrameReport, WexlerRazReport, TightFrameReport, frame_operator, frame_bounds, canonical_dual,
    tight_window, wexler_raz_check, biorthogonality_check, multiwindow_frame_operator,
    multiwindow_wexler_raz_check, tight_frame_check, reconstruct, inverse_frame_operator
)
from .numerics import (
    HermitianOperator, EigenDecomposition, LUFactorization, SolverSettings, cg_solve, jacobi_eig, extreme_eigs,
    lu_factor, lu_solve
)

__all__ = [
    'GaborError',
    'DimensionError',
    'LatticeSpecError',
    'NotInvertibleError',
    'NotAFrameError',
    'ConvergenceError',
    'NotPositiveDefiniteError',
    'NotHermitianError',
    'SingularMatrixError',
    'TorusSize',
    'PhasePoint',
    'translate',
    'modulate',
    'tf_shift',
    'tf_shift_matrix',
    'cocycle',
    'heisenberg_bicharacter',
    'involution_phase',
    'unit_root',
    'dft',
    'inner',
    'norm',
    'LatticeSpec',
    'Lattice',
    'PointSet',
    'parse_lattice_spec',
    'check_lattice_spec',
    'enumerate_lattice',
    'enumerate_subgroups',
    'full_lattice',
    'trivial_lattice',
    'adjoint_set',
    'adjoint_lattice',
    'is_isotropic',
    'is_maximal_isotropic',
    'redundancy',
    'covolume',
    'PhaseFunction',
    'SampledCoefficients',
    'stft',
    'stft_sampled',
    'gabor_synthesis',
    'reconstruct_full',
    'symplectic_ft',
    'poisson_sum',
    'moyal_check',
    's0_norm',
    'periodized_gaussian',
    'box_window',
    'delta_window',
    'AlgebraElement',
    'twisted_convolve',
    'involution',
    'represent',
    'extract_coefficients',
    'invert',
    'linear_independence_check',
    'span_rank',
    'l1_norm',
    'ModulePair',
    'inner_A',
    'inner_B',
    'act_left',
    'act_right',
    'right_operator',
    'figa_check',
    'rank_one',
    'janssen_coefficients',
    'associativity_residual',
    'trace_A',
    'trace_B',
    'noncommutative_poisson',
    'positivity_check',
    'positivity_check_B',
    'fullness_rank',
    'boundedness_check',
    'FrameReport',
    'WexlerRazReport',
    'TightFrameReport',
    'frame_operator',
    'frame_bounds',
    'canonical_dual',
    'tight_window',
    'wexler_raz_check',
    'biorthogonality_check',
    'multiwindow_frame_operator',
    'multiwindow_wexler_raz_check',
    'tight_frame_check',
    'reconstruct',
    'inverse_frame_operator',
    'HermitianOperator',
    'EigenDecomposition',
    'LUFactorization',
    'SolverSettings',
    'cg_solve',
    'jacobi_eig',
    'extreme_eigs',
    'lu_factor',
    'lu_solve'
]
