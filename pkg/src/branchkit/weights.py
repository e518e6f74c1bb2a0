"""Exact weight arithmetic in orthogonal (eps | delta) coordinates.

Every functional the branching formulas touch (Harish-Chandra parameters,
rho-shifts, root vectors, partition targets) is a Weight: a fixed-length
vector of rationals over a two-block orthogonal basis.  All arithmetic is
exact; nothing in this module ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction

Scalar = Union[int, Fraction]


class BasisMismatch(ValueError):
    """Mixed weights from two different bases in one operation."""


class WeightParseError(ValueError):
    """Text form of a weight did not parse."""


@dataclass(frozen=True)
class Basis:
    """Orthogonal basis of it* split into an eps-block and a delta-block.

    eps_count is the number of eps coordinates (written first), delta_count
    the number of delta coordinates.  The label keeps bases for different
    spaces (g-level vs folded u-level) from being mixed accidentally.
    """

    eps_count: int
    delta_count: int
    label: str = ""

    @property
    def rank(self) -> int:
        return self.eps_count + self.delta_count

    def weight(self, coords: Iterable[Scalar]) -> "Weight":
        return Weight(self, tuple(Rat(c) for c in coords))

    def zero(self) -> "Weight":
        return self.weight([0] * self.rank)

    def eps(self, i: int) -> "Weight":
        """Unit vector eps_i, 1-based as in the formulas."""
        if not 1 <= i <= self.eps_count:
            raise IndexError(f"eps_{i} out of range for {self}")
        return self.weight([1 if k == i - 1 else 0 for k in range(self.rank)])

    def delta(self, j: int) -> "Weight":
        """Unit vector delta_j, 1-based."""
        if not 1 <= j <= self.delta_count:
            raise IndexError(f"delta_{j} out of range for {self}")
        pos = self.eps_count + j - 1
        return self.weight([1 if k == pos else 0 for k in range(self.rank)])


@dataclass(frozen=True)
class Weight:
    """A rational vector over a fixed Basis.  Immutable and hashable."""

    basis: Basis
    coords: tuple

    def __post_init__(self):
        coords = tuple(Rat(c) for c in self.coords)
        if len(coords) != self.basis.rank:
            raise ValueError(
                f"expected {self.basis.rank} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    def _require_same_basis(self, other: "Weight") -> None:
        if self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def __add__(self, other: "Weight") -> "Weight":
        self._require_same_basis(other)
        return Weight(
            self.basis, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "Weight") -> "Weight":
        self._require_same_basis(other)
        return Weight(
            self.basis, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "Weight":
        return Weight(self.basis, tuple(-a for a in self.coords))

    def __mul__(self, scalar: Scalar) -> "Weight":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return Weight(self.basis, tuple(a * scalar for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    @property
    def eps_part(self) -> tuple:
        return self.coords[: self.basis.eps_count]

    @property
    def delta_part(self) -> tuple:
        return self.coords[self.basis.eps_count:]

    def __repr__(self) -> str:
        return f"Weight({format_weight(self)!r})"


def inner(a: Weight, b: Weight) -> Rat:
    """Euclidean pairing in the orthogonal basis.  Bilinear, symmetric."""
    a._require_same_basis(b)
    return sum((x * y for x, y in zip(a.coords, b.coords)), Rat(0))


def is_regular(lam: Weight, roots: Iterable[Weight]) -> bool:
    """True iff (lam, alpha) != 0 for every root alpha."""
    return all(inner(lam, alpha) != 0 for alpha in roots)


@dataclass(frozen=True)
class IntegralityLattice:
    """Affine integrality test: lam passes iff every row functional pairs
    integrally with lam + offset.

    Rows are coroot-style functionals (2a/(a,a) for the default analytic
    rule); offset is typically rho of the reference positive system.
    """

    basis: Basis
    generator_matrix: tuple
    offset: Weight

    def contains(self, lam: Weight) -> bool:
        shifted = lam + self.offset
        return all(
            inner(row, shifted).denominator == 1 for row in self.generator_matrix
        )


def is_integral(lam: Weight, lattice: IntegralityLattice) -> bool:
    """True iff lam lies in the affine lattice of its catalog entry."""
    if lam.basis != lattice.basis:
        raise BasisMismatch(f"{lam.basis} vs {lattice.basis}")
    return lattice.contains(lam)


def format_weight(w: Weight) -> str:
    """Canonical text form "a1,...,am | b1,...,bn"; blocks may be empty."""
    left = ",".join(str(c) for c in w.eps_part)
    right = ",".join(str(c) for c in w.delta_part)
    if left and right:
        return f"{left} | {right}"
    if left:
        return f"{left} |"
    return f"| {right}"


def parse_weight(text: str, basis: Basis) -> Weight:
    """Inverse of format_weight; bit-exact round-trip.

    Accepts arbitrary whitespace around entries and the separator, so both
    "3,1 | 5/2" and "3,1|5/2" parse.
    """
    if text.count("|") != 1:
        raise WeightParseError(f"expected exactly one '|' in {text!r}")
    left_text, _, right_text = text.partition("|")

    def block(chunk: str, expected: int, name: str) -> list:
        chunk = chunk.strip()
        if not chunk:
            entries = []
        else:
            try:
                entries = [Rat(p.strip()) for p in chunk.split(",")]
            except (ValueError, ZeroDivisionError) as exc:
                raise WeightParseError(f"bad {name}-block in {text!r}: {exc}") from None
        if len(entries) != expected:
            raise WeightParseError(
                f"{name}-block of {text!r} has {len(entries)} entries, "
                f"expected {expected}"
            )
        return entries

    eps = block(left_text, basis.eps_count, "eps")
    delta = block(right_text, basis.delta_count, "delta")
    return basis.weight(eps + delta)


def doubled_coords(w: Weight) -> tuple:
    """2 * coords as plain ints.

    Every weight that reaches lattice-point enumeration or serialization is
    integral or half-integral; anything else is a bug upstream, so fail loud.
    """
    out = []
    for c in w.coords:
        d = c * 2
        if d.denominator != 1:
            raise ValueError(f"coordinate {c} is not half-integral in {w!r}")
        out.append(int(d))
    return tuple(out)


def require_half_integral(w: Weight, context: str = "") -> Weight:
    """Assert all denominators are 1 or 2; returns w for chaining."""
    doubled_coords(w)
    return w
