"""Root systems with compact/noncompact coloring, positive systems, Weyl groups.

Roots carry an explicit compact flag instead of deriving it from an
involution: the catalog writes the coloring down directly, exactly as the
source tables do.  Weyl group elements are dense rational matrices stored as
tuples of coordinate rows, enumerated breadth-first so every listing is
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Tuple

from .weights import Basis, Rat, Weight, inner

Matrix = Tuple[tuple, ...]  # row i = coordinates of the image of e_i


class NotRegular(ValueError):
    """Weight pairs to zero against some root; no chamber is defined."""


class WeylCeilingExceeded(RuntimeError):
    """Reflection group enumeration passed the configured element ceiling."""


@dataclass(frozen=True)
class ColoredRoot:
    vector: Weight
    compact: bool

    def __neg__(self) -> "ColoredRoot":
        return ColoredRoot(-self.vector, self.compact)

    def __repr__(self) -> str:
        kind = "c" if self.compact else "n"
        return f"ColoredRoot({self.vector!r}, {kind})"


def reflect_weight(v: Weight, alpha: Weight) -> Weight:
    """Reflection of v in the hyperplane orthogonal to alpha."""
    scale = 2 * inner(v, alpha) / inner(alpha, alpha)
    return v - scale * alpha


@dataclass(frozen=True)
class RootSystem:
    basis: Basis
    roots: frozenset
    name: str = ""

    def __post_init__(self):
        roots = frozenset(self.roots)
        object.__setattr__(self, "roots", roots)
        by_vector = {}
        for r in roots:
            if r.vector.is_zero():
                raise ValueError("zero vector cannot be a root")
            if r.vector.coords in by_vector:
                raise ValueError(f"conflicting colors for root {r.vector!r}")
            by_vector[r.vector.coords] = r
        object.__setattr__(self, "_by_vector", by_vector)
        for r in roots:
            neg = by_vector.get((-r.vector).coords)
            if neg is None or neg.compact != r.compact:
                raise ValueError(f"root set not negation-symmetric at {r!r}")
        # every reflection must permute the set of root vectors
        for a in roots:
            for b in roots:
                if reflect_weight(b.vector, a.vector).coords not in by_vector:
                    raise ValueError(
                        f"reflection in {a.vector!r} does not preserve the roots"
                    )

    def contains_vector(self, v: Weight) -> bool:
        return v.coords in self._by_vector

    def color_of(self, v: Weight) -> bool:
        """compact flag of the root with vector v; KeyError if not a root."""
        return self._by_vector[v.coords].compact

    @property
    def compact_roots(self) -> list:
        return [r for r in sorted(self.roots, key=lambda r: r.vector.coords) if r.compact]

    @property
    def noncompact_roots(self) -> list:
        return [
            r for r in sorted(self.roots, key=lambda r: r.vector.coords) if not r.compact
        ]

    def root_vectors(self) -> list:
        return [r.vector for r in sorted(self.roots, key=lambda r: r.vector.coords)]


@dataclass(frozen=True)
class PositiveSystem:
    """A choice of positive roots, stored in canonical (lexicographic) order."""

    system: RootSystem
    positives: tuple
    name: str = ""

    def __post_init__(self):
        pos = tuple(sorted(self.positives, key=lambda r: r.vector.coords))
        object.__setattr__(self, "positives", pos)
        vecs = {r.vector.coords for r in pos}
        if len(vecs) != len(pos):
            raise ValueError("duplicate positive roots")
        neg = {(-r.vector).coords for r in pos}
        if vecs & neg:
            raise ValueError("positives contain a root and its negative")
        if vecs | neg != {r.vector.coords for r in self.system.roots}:
            raise ValueError("positives and their negatives must exhaust the roots")
        # additive closure: a sum of positives that is a root must be positive,
        # otherwise the set is no chamber and reflection folding may not stop
        for a in pos:
            for b in pos:
                s = (a.vector + b.vector).coords
                if s in neg:
                    raise ValueError(
                        f"{a.vector!r} + {b.vector!r} is a negative root; "
                        "positives are not a chamber"
                    )

    def same_positives(self, other: "PositiveSystem") -> bool:
        return {r.vector.coords for r in self.positives} == {
            r.vector.coords for r in other.positives
        }

    @property
    def compact_positives(self) -> list:
        return [r for r in self.positives if r.compact]

    @property
    def noncompact_positives(self) -> list:
        return [r for r in self.positives if not r.compact]

    @cached_property
    def simple_roots(self) -> tuple:
        """The indecomposable positives, in canonical order."""
        vecs = {r.vector.coords for r in self.positives}
        out = []
        for r in self.positives:
            decomposable = any(
                (r.vector - s.vector).coords in vecs
                for s in self.positives
                if s.vector.coords != r.vector.coords
            )
            if not decomposable:
                out.append(r)
        return tuple(out)

    @cached_property
    def rho(self) -> Weight:
        rho_c, rho_n = self._rho_parts
        total = Fraction(1, 2) * sum(
            (r.vector for r in self.positives), self.system.basis.zero()
        )
        assert total == rho_c + rho_n
        return total

    @cached_property
    def _rho_parts(self) -> tuple:
        half = Fraction(1, 2)
        zero = self.system.basis.zero()
        rho_c = half * sum((r.vector for r in self.compact_positives), zero)
        rho_n = half * sum((r.vector for r in self.noncompact_positives), zero)
        return rho_c, rho_n

    @property
    def rho_c(self) -> Weight:
        return self._rho_parts[0]

    @property
    def rho_n(self) -> Weight:
        return self._rho_parts[1]

    @cached_property
    def expansions(self) -> dict:
        """coords of each positive root -> integer coefficients over simples."""
        simples = self.simple_roots
        index = {s.vector.coords: i for i, s in enumerate(simples)}
        posvec = {r.vector.coords: r.vector for r in self.positives}
        memo = {}

        def expand(key):
            if key in memo:
                return memo[key]
            if key in index:
                e = [0] * len(simples)
                e[index[key]] = 1
                memo[key] = tuple(e)
                return memo[key]
            v = posvec[key]
            for i, s in enumerate(simples):
                rest = (v - s.vector).coords
                if rest in posvec:
                    e = list(expand(rest))
                    e[i] += 1
                    memo[key] = tuple(e)
                    return memo[key]
            raise ValueError(f"positive root {v!r} not reachable from simples")

        return {key: expand(key) for key in posvec}

    @cached_property
    def simple_components(self) -> tuple:
        """Indices of simple roots grouped by Dynkin-graph connectivity."""
        simples = self.simple_roots
        n = len(simples)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in range(i + 1, n):
                if inner(simples[i].vector, simples[j].vector) != 0:
                    parent[find(i)] = find(j)
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return tuple(tuple(g) for g in sorted(groups.values()))

    def component_highest_expansion(self, component: tuple) -> tuple:
        """Expansion of the highest root of one irreducible component."""
        comp = set(component)
        best = None
        for exp in self.expansions.values():
            support = {i for i, c in enumerate(exp) if c}
            if not support <= comp:
                if support & comp:
                    raise ValueError("root supported on two components")
                continue
            if best is None or sum(exp) > sum(best):
                best = exp
        assert best is not None
        return best


def chamber_system(lam: Weight, sys: RootSystem, name: str = "") -> PositiveSystem:
    """The positive system of all roots pairing strictly positively with lam."""
    positives = []
    for r in sorted(sys.roots, key=lambda r: r.vector.coords):
        p = inner(lam, r.vector)
        if p == 0:
            raise NotRegular(f"{lam!r} is orthogonal to root {r.vector!r}")
        if p > 0:
            positives.append(r)
    return PositiveSystem(sys, tuple(positives), name=name)


def rho_vectors(psi: PositiveSystem) -> tuple:
    return psi.rho, psi.rho_c, psi.rho_n


def is_dominant(lam: Weight, psi: PositiveSystem, strict: bool = False) -> bool:
    for r in psi.positives:
        p = inner(lam, r.vector)
        if p < 0 or (strict and p == 0):
            return False
    return True


def is_borel_de_siebenthal(psi: PositiveSystem) -> bool:
    """At most one noncompact simple root per irreducible component, with
    coefficient at most 2 in that component's highest root."""
    simples = psi.simple_roots
    for comp in psi.simple_components:
        noncompact = [i for i in comp if not simples[i].compact]
        if not noncompact:
            continue
        if len(noncompact) > 1:
            return False
        top = psi.component_highest_expansion(comp)
        if top[noncompact[0]] > 2:
            return False
    return True


# ---------------------------------------------------------------------------
# Weyl groups


def identity_matrix(basis: Basis) -> Matrix:
    n = basis.rank
    one, zero = Fraction(1), Fraction(0)
    return tuple(
        tuple(one if j == i else zero for j in range(n)) for i in range(n)
    )


def reflection_matrix(basis: Basis, alpha: Weight) -> Matrix:
    n = basis.rank
    norm = inner(alpha, alpha)
    rows = []
    for i in range(n):
        e = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
        scale = 2 * alpha.coords[i] / norm
        rows.append(tuple(e[j] - scale * alpha.coords[j] for j in range(n)))
    return tuple(rows)


def apply_matrix(mat: Matrix, w: Weight) -> Weight:
    n = len(mat)
    coords = [Fraction(0)] * n
    for i, c in enumerate(w.coords):
        if c == 0:
            continue
        row = mat[i]
        for k in range(n):
            if row[k]:
                coords[k] += c * row[k]
    return Weight(w.basis, tuple(coords))


def compose(a: Matrix, b: Matrix) -> Matrix:
    """Matrix of v -> a(b(v))."""
    n = len(a)
    rows = []
    for i in range(n):
        acc = [Fraction(0)] * n
        for j, c in enumerate(b[i]):
            if c == 0:
                continue
            row = a[j]
            for k in range(n):
                if row[k]:
                    acc[k] += c * row[k]
        rows.append(tuple(acc))
    return rows and tuple(rows) or ()


class WeylGroup:
    """Finite group generated by reflections, with the sign character.

    Elements are enumerated breadth-first from the identity, applying the
    generators in their given order, so the element stream is length-ordered
    and deterministic.  Sign is (-1)^(word length), well defined because word
    length parity is an invariant of the element.
    """

    def __init__(
        self,
        basis: Basis,
        reflection_roots: Sequence[Weight],
        name: str = "",
        ceiling: int = 10**6,
    ):
        self.basis = basis
        self.name = name
        self.generator_roots = tuple(reflection_roots)
        self.generators = tuple(
            reflection_matrix(basis, a) for a in self.generator_roots
        )
        self._elements = self._enumerate(ceiling)

    def _enumerate(self, ceiling: int) -> list:
        ident = identity_matrix(self.basis)
        seen = {ident}
        ordered = [(ident, 1)]
        frontier = [(ident, 1)]
        while frontier:
            nxt = []
            for el, sign in frontier:
                for g in self.generators:
                    cand = compose(el, g)
                    if cand in seen:
                        continue
                    seen.add(cand)
                    ordered.append((cand, -sign))
                    nxt.append((cand, -sign))
                    if len(ordered) > ceiling:
                        raise WeylCeilingExceeded(
                            f"more than {ceiling} elements in {self.name or 'group'}"
                        )
            frontier = nxt
        return ordered

    @property
    def order(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator:
        return iter(self._elements)


def weyl_elements(W: WeylGroup) -> Iterator:
    """Stream of (element, sign), deterministic length-first order."""
    return iter(W)


def weyl_group(psi: PositiveSystem, name: str = "", ceiling: int = 10**6) -> WeylGroup:
    """Weyl group generated by reflections in all simple roots of psi."""
    return WeylGroup(
        psi.system.basis,
        [s.vector for s in psi.simple_roots],
        name=name or f"W({psi.name})",
        ceiling=ceiling,
    )


def w_u_subgroup(psi: PositiveSystem, ceiling: int = 10**6) -> WeylGroup:
    """Subgroup generated by reflections in the compact simple roots only."""
    return WeylGroup(
        psi.system.basis,
        [s.vector for s in psi.simple_roots if s.compact],
        name=f"W_U({psi.name})",
        ceiling=ceiling,
    )


def to_dominant(psi: PositiveSystem, w: Weight) -> tuple:
    """Dominant representative of the orbit of w under the group of psi.

    Returns (dominant image, sign) with sign 0 when the orbit is singular
    (fixed by some reflection), otherwise the sign of the folding element.
    """
    simples = [s.vector for s in psi.simple_roots]
    cur = w
    sign = 1
    moved = True
    while moved:
        moved = False
        for s in simples:
            if inner(cur, s) < 0:
                cur = reflect_weight(cur, s)
                sign = -sign
                moved = True
    for s in simples:
        if inner(cur, s) == 0:
            return cur, 0
    return cur, sign
