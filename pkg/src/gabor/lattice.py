"""
Subgroups of the finite phase space, adjoint sets and lattices.

A lattice is a subgroup of Z_N x Z_N stored as a lexicographically sorted
tuple of points; every iteration over a lattice uses that order. The
adjoint of a point set A collects the points Y whose shifts commute with
every shift in A, i.e. rho(Y, a) = 1 for all a in A. Membership is
decided on integer exponents mod N, so all duality statements here are
exact.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from .exceptions import DimensionError, LatticeSpecError
from .phase_space import PhasePoint, SizeLike, as_size

logger = logging.getLogger(__name__)

_SEP_PATTERN = re.compile(r'^\s*sep\s*:\s*(-?\d+)\s*,\s*(-?\d+)\s*$')
_GEN_PATTERN = re.compile(r'^\s*gen\s*:(.*)$')
_POINT_PATTERN = re.compile(r'^\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$')


@dataclass(frozen=True)
class LatticeSpec:
    """
    Description of a lattice before enumeration.

    Exactly one of ``generators`` or ``separable`` is set.

    Attributes:
        generators (Optional[Tuple[Tuple[int, int], ...]]): Generating points (unreduced).
        separable (Optional[Tuple[int, int]]): Steps (a, b) meaning aZ_N x bZ_N.
        text (Optional[str]): Source string when parsed.
    """
    generators: Optional[Tuple[Tuple[int, int], ...]] = None
    separable: Optional[Tuple[int, int]] = None
    text: Optional[str] = None

    def __post_init__(self):
        if (self.generators is None) == (self.separable is None):
            raise LatticeSpecError("exactly one of generators or separable must be given", self.text)
        if self.separable is not None:
            a, b = self.separable
            if a <= 0 or b <= 0:
                raise LatticeSpecError("separable steps must be positive", self.text)

    @classmethod
    def separable_steps(cls, a: int, b: int) -> 'LatticeSpec':
        return cls(separable=(int(a), int(b)), text=f"sep:{a},{b}")

    @classmethod
    def generated_by(cls, points: Iterable[Tuple[int, int]]) -> 'LatticeSpec':
        gens = tuple((int(x), int(w)) for x, w in points)
        text = "gen:" + ";".join(f"({x},{w})" for x, w in gens)
        return cls(generators=gens, text=text)


def parse_lattice_spec(text: str) -> LatticeSpec:
    """
    Parse the CLI lattice syntax.

    Accepted forms are ``sep:a,b`` for aZ_N x bZ_N and
    ``gen:(x1,w1);(x2,w2);...`` for generated subgroups (``gen:`` alone is
    the trivial subgroup).

    Raises:
        LatticeSpecError: If the string matches neither form.
    """
    if text is None:
        raise LatticeSpecError("lattice spec is required")

    match = _SEP_PATTERN.match(text)
    if match:
        a, b = int(match.group(1)), int(match.group(2))
        if a <= 0 or b <= 0:
            raise LatticeSpecError("separable steps must be positive", text)
        return LatticeSpec(separable=(a, b), text=text.strip())

    match = _GEN_PATTERN.match(text)
    if match:
        body = match.group(1).strip()
        generators = []
        if body:
            for chunk in body.split(';'):
                if not chunk.strip():
                    continue
                point = _POINT_PATTERN.match(chunk)
                if not point:
                    raise LatticeSpecError(f"cannot parse generator '{chunk.strip()}'", text)
                generators.append((int(point.group(1)), int(point.group(2))))
        return LatticeSpec(generators=tuple(generators), text=text.strip())

    raise LatticeSpecError("expected 'sep:a,b' or 'gen:(x,w);...'", text)


def _origin_mask(n: int) -> NDArray[np.bool_]:
    mask = np.zeros((n, n), dtype=bool)
    mask[0, 0] = True
    return mask


def _extend_span(span: NDArray[np.bool_], x: int, w: int, n: int) -> NDArray[np.bool_]:
    """
    Span of a subgroup mask and one more point.

    Each doubling step adds the translate by the current multiple, so after
    t steps the mask covers span + {0, g, ..., (2^t - 1) g}; N.bit_length()
    steps reach every multiple.
    """
    for _ in range(n.bit_length()):
        span = span | np.roll(span, (x, w), axis=(0, 1))
        x, w = (2 * x) % n, (2 * w) % n
    return span


def _spanning_points(mask: NDArray[np.bool_], n: int) -> Tuple[List[PhasePoint], NDArray[np.bool_]]:
    """
    Greedy generators for the subgroup spanned by a mask of points.

    Picks, in canonical order, the first point not yet spanned. Each pick at
    least doubles the span, so at most 2 log2 N points are returned.

    Returns:
        Tuple[List[PhasePoint], NDArray]: Generators taken from the mask, and the spanned subgroup mask.
    """
    span = _origin_mask(n)
    generators: List[PhasePoint] = []
    while True:
        remaining = mask & ~span
        if not remaining.any():
            return generators, span
        x, w = divmod(int(np.argmax(remaining)), n)
        generators.append(PhasePoint(x, w))
        span = _extend_span(span, x, w, n)


def _span_of(generators: Iterable[PhasePoint], n: int) -> NDArray[np.bool_]:
    span = _origin_mask(n)
    for g in generators:
        span = _extend_span(span, g.x, g.w, n)
    return span


def _points_of_mask(mask: NDArray[np.bool_]) -> Tuple[PhasePoint, ...]:
    xs, ws = np.nonzero(mask)
    return tuple(PhasePoint(int(x), int(w)) for x, w in zip(xs, ws))


@dataclass(frozen=True)
class PointSet:
    """
    A sorted set of distinct phase points with no subgroup requirement.

    Attributes:
        n (int): The modulus N.
        points (Tuple[PhasePoint, ...]): Sorted distinct points.
    """
    n: int
    points: Tuple[PhasePoint, ...]

    def __post_init__(self):
        as_size(self.n)
        if any(p.x >= self.n or p.w >= self.n for p in self.points):
            raise DimensionError("point outside Z_N x Z_N", {'n': self.n}, "PointSet")
        if list(self.points) != sorted(set(self.points)):
            raise DimensionError("points must be sorted and distinct", operation="PointSet")

    @classmethod
    def from_points(cls, n: SizeLike, points: Iterable) -> 'PointSet':
        """Build a point set from points or (x, w) pairs, reducing mod n."""
        n = as_size(n)
        reduced = {_as_point(p, n) for p in points}
        return cls(n, tuple(sorted(reduced)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point: PhasePoint) -> bool:
        return bool(self.membership[point.x % self.n, point.w % self.n])

    @cached_property
    def coords(self) -> NDArray[np.int64]:
        """Points as an integer array of shape (len, 2)."""
        return np.array([(p.x, p.w) for p in self.points], dtype=np.int64).reshape(-1, 2)

    @cached_property
    def membership(self) -> NDArray[np.bool_]:
        """Boolean N x N mask of the points."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        mask[self.coords[:, 0], self.coords[:, 1]] = True
        return mask


@dataclass(frozen=True)
class Lattice:
    """
    A subgroup of Z_N x Z_N in canonical (lexicographic) order.

    Attributes:
        n (int): The modulus N.
        points (Tuple[PhasePoint, ...]): Sorted distinct points closed under the group law.
    """
    n: int
    points: Tuple[PhasePoint, ...] = field(repr=False)

    def __post_init__(self):
        as_size(self.n)
        n = self.n
        if not self.points or self.points[0] != PhasePoint(0, 0):
            raise DimensionError("lattice must contain (0,0)", operation="Lattice")
        coords = self.coords
        if coords.max() >= n:
            raise DimensionError("lattice point outside Z_N x Z_N", {'n': n}, "Lattice")
        if np.any(np.diff(coords[:, 0] * n + coords[:, 1]) <= 0):
            raise DimensionError("lattice points must be sorted and distinct", operation="Lattice")
        if (n * n) % len(self.points) != 0:
            raise DimensionError("lattice size must divide N^2", {'size': len(self.points)}, "Lattice")
        _, span = _spanning_points(self.membership, n)
        if int(span.sum()) != len(self.points):
            raise DimensionError(f"point set is not closed under addition; it spans {int(span.sum())} points",
                                 operation="Lattice")

    @cached_property
    def generators(self) -> Tuple[PhasePoint, ...]:
        """A small generating set drawn from the lattice points in canonical order."""
        return tuple(_spanning_points(self.membership, self.n)[0])

    @classmethod
    def from_mask(cls, mask: NDArray[np.bool_]) -> 'Lattice':
        """Build a lattice from an N x N membership mask."""
        return cls(mask.shape[0], _points_of_mask(mask))

    @classmethod
    def from_points(cls, n: SizeLike, points: Iterable) -> 'Lattice':
        """Build a lattice from points or (x, w) pairs; they must already form a subgroup."""
        n = as_size(n)
        reduced = {_as_point(p, n) for p in points}
        return cls(n, tuple(sorted(reduced)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point: PhasePoint) -> bool:
        return bool(self.membership[point.x % self.n, point.w % self.n])

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def coords(self) -> NDArray[np.int64]:
        """Points as an integer array of shape (|L|, 2) in canonical order."""
        return np.array([(p.x, p.w) for p in self.points], dtype=np.int64).reshape(-1, 2)

    @cached_property
    def membership(self) -> NDArray[np.bool_]:
        """Boolean N x N mask of lattice points."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        mask[self.coords[:, 0], self.coords[:, 1]] = True
        return mask

    @cached_property
    def index_grid(self) -> NDArray[np.int64]:
        """N x N array holding the canonical index of each lattice point, -1 elsewhere."""
        grid = np.full((self.n, self.n), -1, dtype=np.int64)
        grid[self.coords[:, 0], self.coords[:, 1]] = np.arange(self.size)
        return grid

    def index_of(self, point: PhasePoint) -> int:
        """Canonical index of a lattice point."""
        idx = int(self.index_grid[point.x % self.n, point.w % self.n])
        if idx < 0:
            raise DimensionError(f"{point} is not a lattice point", operation="index_of")
        return idx

    @cached_property
    def addition_table(self) -> NDArray[np.int64]:
        """Entry [i, j] is the index of points[i] + points[j]."""
        xs, ws = self.coords[:, 0], self.coords[:, 1]
        sx = (xs[:, None] + xs[None, :]) % self.n
        sw = (ws[:, None] + ws[None, :]) % self.n
        return self.index_grid[sx, sw]

    @cached_property
    def negation_index(self) -> NDArray[np.int64]:
        """Entry [i] is the index of -points[i]."""
        xs, ws = self.coords[:, 0], self.coords[:, 1]
        return self.index_grid[(-xs) % self.n, (-ws) % self.n]

    def listing(self) -> str:
        """Space-separated canonical listing such as '(0,0) (0,2)'."""
        return " ".join(str(p) for p in self.points)


def _as_point(p, n: int) -> PhasePoint:
    if isinstance(p, PhasePoint):
        return PhasePoint.reduced(p.x, p.w, n)
    x, w = p
    return PhasePoint.reduced(x, w, n)


def check_lattice_spec(spec: LatticeSpec, n: SizeLike):
    """
    Check a spec against N without enumerating it.

    Raises:
        LatticeSpecError: If a separable step does not divide N.
    """
    n = as_size(n)
    if spec.separable is not None:
        a, b = spec.separable
        if n % a != 0 or n % b != 0:
            raise LatticeSpecError(f"separable steps ({a},{b}) must divide N={n}", spec.text)


def enumerate_lattice(spec: LatticeSpec, n: SizeLike) -> Lattice:
    """
    Enumerate the subgroup described by a lattice spec.

    Args:
        spec (LatticeSpec): Separable steps or generators.
        n (SizeLike): The modulus N.
    Returns:
        Lattice: The smallest subgroup containing the generators, canonically sorted.
    Raises:
        LatticeSpecError: If a separable step does not divide N.
    """
    n = as_size(n)
    check_lattice_spec(spec, n)
    if spec.separable is not None:
        a, b = spec.separable
        mask = np.zeros((n, n), dtype=bool)
        mask[::a, ::b] = True
    else:
        mask = _span_of((PhasePoint.reduced(x, w, n) for x, w in spec.generators), n)
    lattice = Lattice.from_mask(mask)
    logger.debug(f"Enumerated lattice {spec.text} for N={n}: {lattice.size} points")
    return lattice


def full_lattice(n: SizeLike) -> Lattice:
    """The whole phase space Z_N x Z_N."""
    return enumerate_lattice(LatticeSpec.separable_steps(1, 1), n)


def trivial_lattice(n: SizeLike) -> Lattice:
    """The trivial subgroup {(0,0)}."""
    n = as_size(n)
    return Lattice(n, (PhasePoint(0, 0),))


def enumerate_subgroups(n: SizeLike) -> List[Lattice]:
    """
    Enumerate every subgroup of Z_N x Z_N.

    Subgroups correspond to integer lattices between N Z^2 and Z^2; each has a
    unique Hermite basis (a, b), (0, d) with a | N, d | N, 0 <= b < d and
    d | (N / a) b.

    Returns:
        List[Lattice]: All subgroups, ordered by (size, points).
    """
    n = as_size(n)
    divisors = [k for k in range(1, n + 1) if n % k == 0]
    subgroups = []
    for a in divisors:
        for d in divisors:
            for b in range(d):
                if ((n // a) * b) % d != 0:
                    continue
                basis = [PhasePoint.reduced(a, b, n), PhasePoint.reduced(0, d, n)]
                subgroups.append(Lattice.from_mask(_span_of(basis, n)))
    subgroups.sort(key=lambda lat: (lat.size, lat.points))
    logger.debug(f"Enumerated {len(subgroups)} subgroups of Z_{n}^2")
    return subgroups


def _commutant_mask(generators: List[PhasePoint], n: int) -> NDArray[np.bool_]:
    """Mask of the Y with heisenberg_bicharacter(Y, g) = 1 for every generator g."""
    yx, yw = np.indices((n, n), dtype=np.int64)
    mask = np.ones((n, n), dtype=bool)
    for g in generators:
        mask &= (yw * g.x - yx * g.w) % n == 0
    return mask


def adjoint_set(points: PointSet) -> Lattice:
    """
    Adjoint set of an arbitrary point set.

    Returns {Y : heisenberg_bicharacter(Y, a) = 1 for all a in A}. The
    bicharacter is multiplicative in a, so it is enough to test a generating
    set of the subgroup spanned by A. The result is always a subgroup.
    """
    generators, _ = _spanning_points(points.membership, points.n)
    return Lattice.from_mask(_commutant_mask(generators, points.n))


def adjoint_lattice(lattice: Lattice) -> Lattice:
    """Adjoint lattice of a subgroup; satisfies |L| |L0| = N^2 and L00 = L."""
    return Lattice.from_mask(_commutant_mask(list(lattice.generators), lattice.n))


def _contained_in(lattice: Lattice, other: Lattice) -> bool:
    coords = lattice.coords
    return bool(other.membership[coords[:, 0], coords[:, 1]].all())


def is_isotropic(lattice: Lattice, adjoint: Optional[Lattice] = None) -> bool:
    """
    True iff the lattice is contained in its adjoint (all its shifts commute).

    Pass the adjoint when it is already at hand.
    """
    return _contained_in(lattice, adjoint if adjoint is not None else adjoint_lattice(lattice))


def is_maximal_isotropic(lattice: Lattice) -> bool:
    """True iff the lattice equals its adjoint."""
    return adjoint_lattice(lattice) == lattice


def redundancy(lattice: Lattice) -> Fraction:
    """Exact redundancy |L| / N."""
    return Fraction(lattice.size, lattice.n)


def covolume(lattice: Lattice) -> int:
    """Covolume N^2 / |L|, which equals the size of the adjoint lattice."""
    return (lattice.n * lattice.n) // lattice.size


def lattice_summary(lattice: Lattice) -> Dict[str, object]:
    """Size, adjoint size, redundancy and isotropy in one dictionary."""
    adjoint = adjoint_lattice(lattice)
    return {
        'size': lattice.size,
        'adjoint_size': adjoint.size,
        'redundancy': redundancy(lattice),
        'covolume': covolume(lattice),
        'is_isotropic': _contained_in(lattice, adjoint),
    }
