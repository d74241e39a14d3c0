"""
Finite phase space Z_N x Z_N and its time-frequency shifts.

Signals are complex numpy vectors of length N. The time-frequency shift of
a signal by the point (x, w) is pi(x, w) = M_w T_x, with

    (T_x f)[t] = f[t - x],    (M_w f)[t] = exp(2 pi i w t / N) f[t].

All phases are looked up from the integer exponent reduced mod N, never
accumulated in floating point, so the group identities below hold to
rounding of a single table entry.

Conventions fixed here and used everywhere downstream:

    pi(X) pi(Y) = cocycle(X, Y) pi(X + Y),   cocycle(X, Y) = e^{-2 pi i x eta / N}
    pi(X) pi(Y) = rho(X, Y) pi(Y) pi(X),      rho(X, Y) = e^{2 pi i (y w - x eta) / N}
    pi(X)^*     = phase(X) pi(-X),            phase(X) = e^{-2 pi i x w / N}

for X = (x, w), Y = (y, eta).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from numpy.typing import NDArray

from .exceptions import DimensionError
from ..core.validation import ValidationError
from ..utils.constants import MIN_TORUS_SIZE

logger = logging.getLogger(__name__)

Signal = NDArray[np.complex128]
OperatorMatrix = NDArray[np.complex128]
UnitComplex = complex


@dataclass(frozen=True)
class TorusSize:
    """
    The modulus N of the cyclic group Z_N.

    Attributes:
        n (int): The modulus; all indices live in Z_N.
    """
    n: int

    def __post_init__(self):
        """Validate the modulus after initialization."""
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ValidationError("Torus size must be an integer", "n")
        if self.n < MIN_TORUS_SIZE:
            raise ValidationError(f"Torus size must be at least {MIN_TORUS_SIZE}", "n")

    def __int__(self) -> int:
        return int(self.n)


SizeLike = Union[int, TorusSize]


def as_size(n: SizeLike) -> int:
    """Return the plain integer modulus, validating it on the way."""
    if isinstance(n, TorusSize):
        return int(n.n)
    return int(TorusSize(n).n)


@dataclass(frozen=True, order=True)
class PhasePoint:
    """
    A point (x, w) of the phase space Z_N x Z_N.

    Ordering is lexicographic on (x, w), which is the canonical lattice order.

    Attributes:
        x (int): Time shift, 0 <= x < N.
        w (int): Frequency shift, 0 <= w < N.
    """
    x: int
    w: int

    def __post_init__(self):
        if self.x < 0 or self.w < 0:
            raise ValidationError("Phase point coordinates must be reduced residues", "x" if self.x < 0 else "w")

    @classmethod
    def reduced(cls, x: int, w: int, n: SizeLike) -> 'PhasePoint':
        """Create a point from arbitrary integers, reducing both coordinates mod n."""
        n = as_size(n)
        return cls(int(x) % n, int(w) % n)

    def add(self, other: 'PhasePoint', n: SizeLike) -> 'PhasePoint':
        """Group addition in Z_N x Z_N."""
        return PhasePoint.reduced(self.x + other.x, self.w + other.w, n)

    def neg(self, n: SizeLike) -> 'PhasePoint':
        """Group negation in Z_N x Z_N."""
        return PhasePoint.reduced(-self.x, -self.w, n)

    def __str__(self) -> str:
        return f"({self.x},{self.w})"


@lru_cache(maxsize=None)
def _root_table(n: int) -> NDArray[np.complex128]:
    k = np.arange(n)
    table = np.exp(2j * np.pi * k / n)
    table.setflags(write=False)
    return table


def unit_root(k, n: SizeLike):
    """
    Evaluate e^{2 pi i k / N} from the integer k reduced mod N.

    Accepts a scalar or an integer array; returns a complex or a complex array.
    """
    n = as_size(n)
    table = _root_table(n)
    if np.ndim(k) == 0:
        return complex(table[int(k) % n])
    return table[np.mod(np.asarray(k, dtype=np.int64), n)]


def _check_signal(f, operation: str) -> Signal:
    arr = np.asarray(f, dtype=np.complex128)
    if arr.ndim != 1:
        raise DimensionError("signal must be a one-dimensional vector", {'shape': arr.shape}, operation)
    if arr.shape[0] < MIN_TORUS_SIZE:
        raise DimensionError(f"signal length must be at least {MIN_TORUS_SIZE}", {'shape': arr.shape}, operation)
    return arr


def translate(f: Signal, x: int) -> Signal:
    """
    Translate a signal: output[t] = f[(t - x) mod N].

    Args:
        f (Signal): Input signal.
        x (int): Time shift.
    Returns:
        Signal: The translated signal.
    """
    f = _check_signal(f, "translate")
    return np.roll(f, int(x) % f.shape[0])


def modulate(f: Signal, w: int) -> Signal:
    """
    Modulate a signal: output[t] = e^{2 pi i w t / N} f[t].

    Args:
        f (Signal): Input signal.
        w (int): Frequency shift.
    Returns:
        Signal: The modulated signal.
    """
    f = _check_signal(f, "modulate")
    n = f.shape[0]
    return unit_root(int(w) * np.arange(n), n) * f


def tf_shift(f: Signal, point: PhasePoint) -> Signal:
    """Apply pi(point) = M_w T_x to a signal."""
    return modulate(translate(f, point.x), point.w)


def tf_shift_matrix(point: PhasePoint, n: SizeLike) -> OperatorMatrix:
    """
    Return the N x N matrix of pi(point).

    Entry [t, s] is e^{2 pi i w t / N} when s = t - x and zero otherwise.
    """
    n = as_size(n)
    t = np.arange(n)
    matrix = np.zeros((n, n), dtype=np.complex128)
    matrix[t, (t - point.x) % n] = unit_root(point.w * t, n)
    return matrix


def cocycle(X: PhasePoint, Y: PhasePoint, n: SizeLike) -> UnitComplex:
    """
    Cocycle of the projective representation: pi(X) pi(Y) = cocycle(X, Y) pi(X + Y).

    Returns e^{-2 pi i X.x Y.w / N}.
    """
    return unit_root(-X.x * Y.w, n)


def heisenberg_bicharacter(X: PhasePoint, Y: PhasePoint, n: SizeLike) -> UnitComplex:
    """
    Heisenberg bicharacter rho(X, Y) = cocycle(X, Y) / cocycle(Y, X).

    It is the scalar in pi(X) pi(Y) pi(X)^{-1} pi(Y)^{-1} = rho(X, Y) Id.
    """
    return unit_root(Y.x * X.w - X.x * Y.w, n)


def bicharacter_exponent(X: PhasePoint, Y: PhasePoint, n: SizeLike) -> int:
    """Integer exponent k with heisenberg_bicharacter(X, Y) = e^{2 pi i k / N}."""
    n = as_size(n)
    return (Y.x * X.w - X.x * Y.w) % n


def involution_phase(point: PhasePoint, n: SizeLike) -> UnitComplex:
    """Unit scalar with pi(point)^* = involution_phase(point) pi(-point)."""
    return unit_root(-point.x * point.w, n)


def dft(f: Signal) -> Signal:
    """
    Unitary discrete Fourier transform.

    output[w] = N^{-1/2} sum_t f[t] e^{-2 pi i w t / N}
    """
    f = _check_signal(f, "dft")
    return np.fft.fft(f, norm="ortho")


def inner(f: Signal, g: Signal) -> complex:
    """
    Inner product sum_t f[t] conj(g[t]), linear in the first argument.

    Raises:
        DimensionError: If the lengths differ.
    """
    f = _check_signal(f, "inner")
    g = _check_signal(g, "inner")
    if f.shape != g.shape:
        raise DimensionError(f"length mismatch {f.shape[0]} != {g.shape[0]}", operation="inner")
    return complex(np.vdot(g, f))


def norm(f: Signal) -> float:
    """Euclidean norm of a signal."""
    return float(np.linalg.norm(_check_signal(f, "norm")))


def delta(n: SizeLike, index: int = 0) -> Signal:
    """Unit impulse at ``index``."""
    n = as_size(n)
    out = np.zeros(n, dtype=np.complex128)
    out[int(index) % n] = 1.0
    return out
