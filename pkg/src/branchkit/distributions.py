"""Partition counts and truncated weight distributions.

Two counting conventions live here and are never interchanged:

  * kostant_partition counts sums n_i * gamma_i with n_i >= 0 -- the
    partition function "based at zero" that drives the Blattner formula;
  * heaviside materializes the convolution of the shifted series
    y_gamma = sum_{n>=0} delta_{gamma/2 + n*gamma}, one factor per multiset
    slot -- the half-shifted convention of the partition-sum formula.

Both require an acyclicity certificate: a functional strictly positive on
every element of the multiset.  Without one the counts are infinite and we
refuse to proceed.  Callers that know a certificate (a rho of a positive
system, usually) pass it in; otherwise we try the sum of the multiset and
fall back to an exact linear program.

All truncation is by level of a fixed functional.  A WeightDistribution
carries the bound up to which its coefficients are exact, and every
operation propagates that bound honestly: results never claim exactness
beyond what the inputs support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from . import _lp
from .roots import PositiveSystem, is_dominant
from .weights import Rat, Weight, doubled_coords, format_weight, inner


class AcyclicityError(ValueError):
    """No functional separates the multiset from zero; counts diverge."""


class WindowError(ValueError):
    """Truncation window incompatible with the requested operation."""


class MultisetError(ValueError):
    """Strict multiset difference asked to remove an element not present."""


@dataclass(frozen=True)
class WeightMultiset:
    """Finite multiset of weights with positive integer repetitions.

    items is canonically sorted by coordinates, so equal multisets compare
    and hash equal.
    """

    basis: object
    items: tuple  # ((Weight, reps), ...)

    @staticmethod
    def from_weights(basis, weights: Iterable[Weight]) -> "WeightMultiset":
        counts = {}
        for w in weights:
            if w.basis != basis:
                raise MultisetError(f"weight basis {w.basis} != {basis}")
            counts[w] = counts.get(w, 0) + 1
        return WeightMultiset._of(basis, counts)

    @staticmethod
    def from_pairs(basis, pairs: Iterable) -> "WeightMultiset":
        counts = {}
        for w, reps in pairs:
            if reps < 0 or int(reps) != reps:
                raise MultisetError(f"repetition {reps!r} of {w!r}")
            if w.basis != basis:
                raise MultisetError(f"weight basis {w.basis} != {basis}")
            counts[w] = counts.get(w, 0) + int(reps)
        return WeightMultiset._of(basis, counts)

    @staticmethod
    def _of(basis, counts: dict) -> "WeightMultiset":
        items = tuple(
            (w, r) for w, r in sorted(counts.items(), key=lambda p: p[0].coords) if r
        )
        return WeightMultiset(basis, items)

    def _counts(self) -> dict:
        return {w: r for w, r in self.items}

    def union(self, other: "WeightMultiset") -> "WeightMultiset":
        """Additive union: repetitions add."""
        counts = self._counts()
        for w, r in other.items:
            counts[w] = counts.get(w, 0) + r
        return WeightMultiset._of(self.basis, counts)

    def difference(self, other: "WeightMultiset") -> "WeightMultiset":
        """Strict removal: every slot of other must be present here."""
        counts = self._counts()
        for w, r in other.items:
            have = counts.get(w, 0)
            if have < r:
                raise MultisetError(
                    f"removing {r} x {w!r} but only {have} present"
                )
            counts[w] = have - r
        return WeightMultiset._of(self.basis, counts)

    def intersection(self, other: "WeightMultiset") -> "WeightMultiset":
        theirs = other._counts()
        counts = {w: min(r, theirs.get(w, 0)) for w, r in self.items}
        return WeightMultiset._of(self.basis, counts)

    def map_weights(self, f: Callable[[Weight], Weight]) -> "WeightMultiset":
        counts = {}
        basis = self.basis
        for w, r in self.items:
            fw = f(w)
            basis = fw.basis
            counts[fw] = counts.get(fw, 0) + r
        return WeightMultiset._of(basis, counts)

    def expanded(self) -> list:
        out = []
        for w, r in self.items:
            out.extend([w] * r)
        return out

    def total(self) -> Weight:
        acc = Weight(self.basis, (Rat(0),) * self.basis.rank)
        for w, r in self.items:
            acc = acc + r * w
        return acc

    def count(self) -> int:
        return sum(r for _, r in self.items)

    def is_empty(self) -> bool:
        return not self.items

    def reps(self, w: Weight) -> int:
        for v, r in self.items:
            if v == w:
                return r
        return 0

    def __iter__(self):
        return iter(self.expanded())

    def __len__(self) -> int:
        return self.count()


@dataclass(frozen=True)
class TruncationWindow:
    """Half-space cutoff: keep weights with level(w) = (functional, w) <= bound."""

    functional: Weight
    bound: Rat

    def level(self, w: Weight) -> Rat:
        return inner(self.functional, w)

    def admits(self, w: Weight) -> bool:
        return self.level(w) <= self.bound

    def with_bound(self, bound) -> "TruncationWindow":
        return TruncationWindow(self.functional, Fraction(bound))

    def validate_certificate(self, S: WeightMultiset) -> None:
        for w, _ in S.items:
            if self.level(w) <= 0:
                raise WindowError(
                    f"functional is not strictly positive on {w!r}"
                )


class WeightDistribution:
    """Finitely many exact integer coefficients below a level bound.

    Coefficients at levels above window.bound are unknown (truncated away),
    not zero.  Operations compute the largest bound up to which the result
    is still exact and tag the result with it.
    """

    __slots__ = ("window", "_coeffs")

    def __init__(self, window: TruncationWindow, coeffs: dict = None):
        self.window = window
        self._coeffs = {}
        if coeffs:
            for w, c in coeffs.items():
                if c == 0:
                    continue
                if int(c) != c:
                    raise ValueError(f"non-integer coefficient {c!r} at {w!r}")
                if not window.admits(w):
                    raise WindowError(
                        f"{w!r} lies above the window bound {window.bound}"
                    )
                self._coeffs[w] = int(c)

    @staticmethod
    def zero(window: TruncationWindow) -> "WeightDistribution":
        return WeightDistribution(window)

    @staticmethod
    def delta(w: Weight, window: TruncationWindow) -> "WeightDistribution":
        return WeightDistribution(window, {w: 1})

    def coefficient(self, w: Weight) -> int:
        if not self.window.admits(w):
            raise WindowError(
                f"coefficient at {w!r} is beyond the exact bound {self.window.bound}"
            )
        return self._coeffs.get(w, 0)

    def support(self) -> list:
        return sorted(self._coeffs, key=lambda w: (self.window.level(w), w.coords))

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_level(self) -> Rat:
        """Smallest support level; the bound itself when support is empty."""
        if not self._coeffs:
            return self.window.bound
        return min(self.window.level(w) for w in self._coeffs)

    def _require_same_functional(self, other: "WeightDistribution") -> None:
        if self.window.functional != other.window.functional:
            raise WindowError("distributions truncate along different functionals")

    def add(self, other: "WeightDistribution") -> "WeightDistribution":
        self._require_same_functional(other)
        bound = min(self.window.bound, other.window.bound)
        window = self.window.with_bound(bound)
        coeffs = {}
        for w, c in list(self._coeffs.items()) + list(other._coeffs.items()):
            if window.admits(w):
                coeffs[w] = coeffs.get(w, 0) + c
        return WeightDistribution(window, coeffs)

    def scale(self, k: int) -> "WeightDistribution":
        return WeightDistribution(
            self.window, {w: k * c for w, c in self._coeffs.items()}
        )

    def negate(self) -> "WeightDistribution":
        return self.scale(-1)

    def translate(self, v: Weight) -> "WeightDistribution":
        """Shift support by v; the exact region shifts with it."""
        shift = self.window.level(v)
        window = self.window.with_bound(self.window.bound + shift)
        return WeightDistribution(
            window, {w + v: c for w, c in self._coeffs.items()}
        )

    def convolve(self, other: "WeightDistribution") -> "WeightDistribution":
        """Multiplication of generating functions.

        Exact up to min(A + min_level(b), B + min_level(a)): a truncated tail
        of one factor can only affect levels above the other factor's lowest
        contribution.
        """
        self._require_same_functional(other)
        bound = min(
            self.window.bound + other.min_level(),
            other.window.bound + self.min_level(),
        )
        window = self.window.with_bound(bound)
        coeffs = {}
        for w1, c1 in self._coeffs.items():
            for w2, c2 in other._coeffs.items():
                w = w1 + w2
                if window.admits(w):
                    coeffs[w] = coeffs.get(w, 0) + c1 * c2
        return WeightDistribution(window, coeffs)

    def restricted(self, bound) -> "WeightDistribution":
        """Shrink the exactness claim; never extend it."""
        bound = Fraction(bound)
        if bound > self.window.bound:
            raise WindowError(
                f"cannot extend exactness from {self.window.bound} to {bound}"
            )
        window = self.window.with_bound(bound)
        return WeightDistribution(
            window, {w: c for w, c in self._coeffs.items() if window.admits(w)}
        )

    def dump(self) -> str:
        lines = [f"{format_weight(w)}\t{self._coeffs[w]}" for w in self.support()]
        return "\n".join(lines)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return self.window == other.window and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return (
            f"WeightDistribution(bound={self.window.bound}, "
            f"support={len(self._coeffs)})"
        )


def convolve(a: WeightDistribution, b: WeightDistribution) -> WeightDistribution:
    return a.convolve(b)


def acyclicity_certificate(S: WeightMultiset, xi: Weight = None) -> Weight:
    """A functional strictly positive on every element of S.

    Tries xi, then the multiset total; as a last resort solves an exact LP
    (maximize sum s_i subject to s_i <= (gamma_i, xi+ - xi-), s_i <= 1; the
    optimum reaches the number of distinct elements iff some functional is
    simultaneously positive on all of them, by scaling).
    """
    distinct = [w for w, _ in S.items]
    if not distinct:
        return Weight(S.basis, (Rat(0),) * S.basis.rank)
    if xi is not None:
        if all(inner(xi, g) > 0 for g in distinct):
            return xi
        raise AcyclicityError(f"supplied functional vanishes on part of {S!r}")
    total = S.total()
    if all(inner(total, g) > 0 for g in distinct):
        return total

    n = S.basis.rank
    k = len(distinct)
    # variables: xi_plus (n), xi_minus (n), s (k)
    nvars = 2 * n + k
    objective = [Rat(0)] * (2 * n) + [Rat(1)] * k
    rows, rhs = [], []
    for i, g in enumerate(distinct):
        row = list(g.coords) + [-c for c in g.coords] + [Rat(0)] * k
        row[2 * n + i] = Rat(-1)
        rows.append([-x for x in row])  # s_i - (g, xi) <= 0
        rhs.append(Rat(0))
    for i in range(k):
        row = [Rat(0)] * nvars
        row[2 * n + i] = Rat(1)
        rows.append(row)
        rhs.append(Rat(1))
    value, x = _lp.maximize(objective, rows, rhs)
    if value < k:
        raise AcyclicityError(
            "multiset spans a line through zero; no positive functional exists"
        )
    coords = tuple(x[i] - x[n + i] for i in range(n))
    xi = Weight(S.basis, coords)
    assert all(inner(xi, g) > 0 for g in distinct)
    return xi


def kostant_partition(S: WeightMultiset, target: Weight, xi: Weight = None) -> int:
    """Number of ways to write target as a nonnegative integer combination
    of the elements of S, counted slot by slot (an element of repetition r
    contributes a multichoose factor, handled in closed form)."""
    if S.is_empty():
        return 1 if target.is_zero() else 0
    cert = acyclicity_certificate(S, xi)
    target_level = inner(cert, target)
    if target_level < 0:
        return 0
    if target_level == 0:
        return 1 if target.is_zero() else 0
    doubled_coords(target)
    for g, _ in S.items:
        doubled_coords(g)
    slots = tuple(
        (doubled_coords(g), reps, inner(cert, g)) for g, reps in S.items
    )
    return _count_partitions(slots, doubled_coords(target), target_level)


def _count_partitions(slots: tuple, target: tuple, level: Rat) -> int:
    """DP over doubled integer coordinates; memo keyed by (slot index, rest)."""

    @lru_cache(maxsize=None)
    def count(i: int, rest: tuple, lvl) -> int:
        if all(c == 0 for c in rest):
            # remaining slots all take n = 0; one way
            return 1
        if i == len(slots) or lvl <= 0:
            return 0
        g, reps, h = slots[i]
        total = 0
        n = 0
        while n * h <= lvl:
            sub = count(
                i + 1,
                tuple(c - n * gc for c, gc in zip(rest, g)),
                lvl - n * h,
            )
            if sub:
                # n identical copies spread over reps labelled slots
                total += math.comb(n + reps - 1, reps - 1) * sub
            n += 1
        return total

    try:
        return count(0, target, level)
    finally:
        count.cache_clear()


def heaviside(S: WeightMultiset, window: TruncationWindow) -> WeightDistribution:
    """Convolution of y_gamma = sum_{n>=0} delta_{gamma/2 + n*gamma} over S.

    The result is materialized within the requested window; the empty
    multiset gives delta_0.
    """
    window.validate_certificate(S)
    if window.bound < 0:
        return WeightDistribution.zero(window)
    basis = S.basis
    zero = Weight(basis, (Rat(0),) * basis.rank)
    dist = WeightDistribution.delta(zero, window)
    for g in S.expanded():
        doubled_coords(g)
        dist = _geometric(dist, g).restricted(window.bound)
    return dist


def _geometric(dist: WeightDistribution, g: Weight) -> WeightDistribution:
    """dist convolved with the full series sum_{n>=0} delta_{g/2 + n*g}.

    The series is exact everywhere with lowest term g/2, so the result is
    exact up to dist's bound plus level(g)/2.  Output points sit on fibers
    x, x+g, x+2g, …; along each fiber the result is the running sum of the
    (shifted) input, so one upward sweep per fiber computes everything.
    """
    step = dist.window.level(g)
    half = Fraction(1, 2) * g
    window = dist.window.with_bound(dist.window.bound + step / 2)
    level = window.level
    bound = window.bound

    landed = {}
    for w, c in dist.items():
        p = w + half
        landed[p] = landed.get(p, 0) + c

    # group landing points by fiber: the projection along g to level zero
    # plus the fractional g-offset determine the chain x, x+g, x+2g, …
    # (two points with the same projection can still sit a non-integer
    # multiple of g apart)
    fibers = {}
    for p in landed:
        r = level(p) / step
        key = (p - r * g, r - (r.numerator // r.denominator))
        fibers.setdefault(key, []).append(p)

    coeffs = {}
    for points in fibers.values():
        points.sort(key=level)
        running = 0
        x = points[0]
        idx = 0
        while True:
            if idx < len(points) and points[idx] == x:
                running += landed[x]
                idx += 1
            if running:
                coeffs[x] = running
                x = x + g
                if level(x) > bound:
                    break
            elif idx < len(points):
                x = points[idx]  # all chain points between carry zero
            else:
                break
    return WeightDistribution(window, coeffs)


def skew_project(dist: WeightDistribution, psi_c: PositiveSystem) -> dict:
    """Dominant-chamber readout of a skew-symmetric distribution.

    A skew-symmetric distribution is determined by its coefficients at
    strictly dominant (hence regular) points; values elsewhere are redundant
    and values at singular points vanish.  Summing sign-folded orbit points
    instead would multiply every value by its orbit size, so no folding
    happens here: keep the strictly dominant support, drop the rest.
    """
    out = {}
    for w, c in dist.items():
        if is_dominant(w, psi_c, strict=True):
            out[w] = c
    return out
