"""
Short-time Fourier transform on Z_N and the transforms built from it.

    stft(f, g)[x][w] = <f, pi(x, w) g> = sum_t f[t] conj(g[t - x]) e^{-2 pi i w t / N}

Phase-space arrays are indexed [x][w]. With these normalizations the
finite Moyal constant is N, the symplectic transform applied twice is N^2
times the identity, and Poisson summation over a lattice carries the
factor 1 / |L0|.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from .exceptions import DimensionError
from .lattice import Lattice, adjoint_lattice
from .phase_space import PhasePoint, Signal, SizeLike, _check_signal, as_size, unit_root
from ..utils.constants import GAUSSIAN_PERIODS

logger = logging.getLogger(__name__)

STFT_METHODS = ("direct", "fft")


@dataclass(eq=False)
class PhaseFunction:
    """
    A complex function on Z_N x Z_N.

    Attributes:
        n (int): The modulus N.
        values (NDArray[np.complex128]): N x N array indexed [x][w].
    """
    n: int
    values: NDArray[np.complex128]

    def __post_init__(self):
        self.n = as_size(self.n)
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.n, self.n):
            raise DimensionError(f"expected shape ({self.n}, {self.n}), got {self.values.shape}",
                                 operation="PhaseFunction")

    def __getitem__(self, point: PhasePoint) -> complex:
        return complex(self.values[point.x % self.n, point.w % self.n])

    def magnitude(self) -> NDArray[np.float64]:
        return np.abs(self.values)


@dataclass(eq=False)
class SampledCoefficients:
    """
    One complex value per lattice point, in canonical lattice order.

    Attributes:
        lattice (Lattice): Sampling lattice.
        values (NDArray[np.complex128]): Values aligned with lattice.points.
    """
    lattice: Lattice
    values: NDArray[np.complex128]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.lattice.size,):
            raise DimensionError(f"expected {self.lattice.size} values, got shape {self.values.shape}",
                                 operation="SampledCoefficients")

    def __getitem__(self, point: PhasePoint) -> complex:
        return complex(self.values[self.lattice.index_of(point)])


def _pair(f, g, operation: str) -> Tuple[Signal, Signal]:
    f = _check_signal(f, operation)
    g = _check_signal(g, operation)
    if f.shape != g.shape:
        raise DimensionError(f"length mismatch {f.shape[0]} != {g.shape[0]}", operation=operation)
    return f, g


def shift_orbit(g, lattice: Lattice) -> NDArray[np.complex128]:
    """
    Stack the shifted windows pi(lambda) g, one row per lattice point.

    Returns:
        NDArray: Array of shape (|L|, N); row i is tf_shift(g, lattice.points[i]).
    """
    g = _check_signal(g, "shift_orbit")
    n = g.shape[0]
    if n != lattice.n:
        raise DimensionError(f"signal length {n} does not match lattice N={lattice.n}", operation="shift_orbit")
    t = np.arange(n)
    xs, ws = lattice.coords[:, 0], lattice.coords[:, 1]
    return g[(t[None, :] - xs[:, None]) % n] * unit_root(np.outer(ws, t), n)


def stft(f, g, method: str = "direct") -> PhaseFunction:
    """
    Short-time Fourier transform of f with window g.

    Args:
        f: Signal.
        g: Window of the same length.
        method (str): 'direct' evaluates the N^3 kernel product, 'fft' runs one FFT per time shift.
    Returns:
        PhaseFunction: values[x][w] = <f, pi(x, w) g>.
    Raises:
        DimensionError: If the lengths differ.
    """
    f, g = _pair(f, g, "stft")
    if method not in STFT_METHODS:
        raise ValueError(f"Unknown STFT method '{method}'. Must be one of: {', '.join(STFT_METHODS)}")
    n = f.shape[0]
    t = np.arange(n)
    # products[x, t] = f[t] conj(g[t - x])
    products = f[None, :] * np.conj(g[(t[None, :] - t[:, None]) % n])
    if method == "fft":
        values = np.fft.fft(products, axis=1)
    else:
        kernel = unit_root(-np.outer(t, t), n)
        values = products @ kernel
    return PhaseFunction(n, values)


def stft_sampled(f, g, lattice: Lattice) -> SampledCoefficients:
    """Restriction of stft(f, g) to a lattice, in canonical order."""
    f, g = _pair(f, g, "stft_sampled")
    orbit = shift_orbit(g, lattice)
    return SampledCoefficients(lattice, np.conj(orbit) @ f)


def gabor_synthesis(coefficients: SampledCoefficients, g) -> Signal:
    """
    Gabor expansion sum_lambda a(lambda) pi(lambda) g.

    Args:
        coefficients (SampledCoefficients): Coefficients on a lattice.
        g: Synthesis window.
    Returns:
        Signal: The synthesized signal.
    """
    orbit = shift_orbit(g, coefficients.lattice)
    return coefficients.values @ orbit


def reconstruct_full(coefficients: SampledCoefficients, g) -> Signal:
    """
    Invert a full-lattice STFT: f = gabor_synthesis(V_g f, g) / (N ||g||^2).

    Raises:
        DimensionError: If the coefficients are not on the full lattice or g = 0.
    """
    lattice = coefficients.lattice
    if lattice.size != lattice.n * lattice.n:
        raise DimensionError("reconstruction needs the full lattice", {'size': lattice.size},
                             operation="reconstruct_full")
    g = _check_signal(g, "reconstruct_full")
    energy = float(np.vdot(g, g).real)
    if energy == 0.0:
        raise DimensionError("window is zero", operation="reconstruct_full")
    return gabor_synthesis(coefficients, g) / (lattice.n * energy)


def symplectic_ft(F: PhaseFunction) -> PhaseFunction:
    """
    Unnormalized symplectic Fourier transform.

    output[y][eta] = sum_{x,w} F[x][w] e^{2 pi i (y w - x eta) / N}
    """
    n = F.n
    k = np.arange(n)
    forward = unit_root(np.outer(k, k), n)
    backward = unit_root(-np.outer(k, k), n)
    # inner sum over w, then over x
    partial = F.values @ forward
    return PhaseFunction(n, partial.T @ backward)


def poisson_sum(F: PhaseFunction, lattice: Lattice) -> Tuple[complex, complex]:
    """
    Both sides of Poisson summation over a lattice.

    Returns:
        Tuple[complex, complex]: (sum of F over L, |L0|^{-1} times the sum of symplectic_ft(F) over L0).
    """
    if F.n != lattice.n:
        raise DimensionError(f"function on Z_{F.n} but lattice in Z_{lattice.n}", operation="poisson_sum")
    adjoint = adjoint_lattice(lattice)
    lhs = complex(np.sum(F.values[lattice.coords[:, 0], lattice.coords[:, 1]]))
    transformed = symplectic_ft(F).values
    rhs = complex(np.sum(transformed[adjoint.coords[:, 0], adjoint.coords[:, 1]])) / adjoint.size
    return lhs, rhs


def moyal_check(f1, f2, g1, g2) -> Tuple[complex, complex]:
    """
    Both sides of the orthogonality relation for the STFT.

    Returns:
        Tuple[complex, complex]: (sum of V_{g1} f1 conj(V_{g2} f2), N <f1, f2> conj(<g1, g2>)).
    """
    f1, f2 = _pair(f1, f2, "moyal_check")
    g1, g2 = _pair(g1, g2, "moyal_check")
    _pair(f1, g1, "moyal_check")
    n = f1.shape[0]
    lhs = complex(np.vdot(stft(f2, g2).values, stft(f1, g1).values))
    rhs = n * complex(np.vdot(f2, f1)) * np.conj(complex(np.vdot(g2, g1)))
    return lhs, complex(rhs)


def periodized_gaussian(n: SizeLike) -> Signal:
    """
    Unit-norm Gaussian of width sqrt(N) wrapped onto Z_N.

    g[t] proportional to sum_{|k| <= 3} exp(-pi (t + k N)^2 / N).
    """
    n = as_size(n)
    t = np.arange(n)
    k = np.arange(-GAUSSIAN_PERIODS, GAUSSIAN_PERIODS + 1)
    values = np.exp(-np.pi * (t[:, None] + k[None, :] * n) ** 2 / n).sum(axis=1)
    values = values / np.linalg.norm(values)
    return values.astype(np.complex128)


def box_window(n: SizeLike) -> Signal:
    """
    Unit-norm box of width round(sqrt(N)) centred on index 0.

    For even widths the extra sample sits on the negative side.
    """
    n = as_size(n)
    width = max(1, int(round(np.sqrt(n))))
    half = width // 2
    out = np.zeros(n, dtype=np.complex128)
    out[(np.arange(width) - half) % n] = 1.0
    return out / np.sqrt(width)


def delta_window(n: SizeLike) -> Signal:
    """Unit impulse at index 0."""
    n = as_size(n)
    out = np.zeros(n, dtype=np.complex128)
    out[0] = 1.0
    return out


def s0_norm(f) -> float:
    """Finite S0-style norm: l1 norm of the STFT against the periodized Gaussian."""
    f = _check_signal(f, "s0_norm")
    window = periodized_gaussian(f.shape[0])
    return float(np.sum(np.abs(stft(f, window).values)))
