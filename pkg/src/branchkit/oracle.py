"""Brute-force validators used by the test suite.

Everything here recomputes quantities of the main engine by a different
method: partition counts by exhaustive backtracking (no dynamic programming,
no memo), weight multiplicities by the Freudenthal recursion, compact
branching by character subtraction.  Agreement with the fast paths is
evidence, not tautology, so this module deliberately shares no counting code
with the distribution engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .roots import PositiveSystem, is_dominant, to_dominant
from .weights import Weight, inner


class DecompositionError(ValueError):
    """Character subtraction did not converge; the projection is wrong."""


def _slots(S):
    """Expanded list of weights, one entry per multiset slot."""
    items = getattr(S, "items", None)
    if items is not None:
        out = []
        for wgt, reps in items:
            out.extend([wgt] * reps)
        return out
    return list(S)


def enumerate_partitions(S, target: Weight, shifted: bool = False, xi=None) -> int:
    """Number of ways target = sum n_i * gamma_i (n_i >= 0), slot by slot.

    With shifted=True counts sum (n_i + 1/2) gamma_i = target instead, which
    is the Heaviside-convolution coefficient.  Pure backtracking.
    xi: strictly positive functional on all of S; defaults to the sum of S.
    """
    slots = _slots(S)
    if shifted:
        half = Fraction(1, 2)
        total = sum(slots[1:], slots[0]) if slots else None
        target = target - half * total if slots else target
    if not slots:
        return 1 if target.is_zero() else 0
    if xi is None:
        xi = sum(slots[1:], slots[0])
    heights = [inner(xi, g) for g in slots]
    if any(h <= 0 for h in heights):
        raise ValueError("xi is not strictly positive on the multiset")

    def count(i: int, remaining: Weight, level: Fraction) -> int:
        if level < 0:
            return 0
        if i == len(slots):
            return 1 if remaining.is_zero() else 0
        g, h = slots[i], heights[i]
        total = 0
        n = 0
        while n * h <= level:
            total += count(i + 1, remaining - n * g, level - n * h)
            n += 1
        return total

    return count(0, target, inner(xi, target))


def weyl_dim(psi: PositiveSystem, highest_weight: Weight) -> int:
    """Weyl dimension formula, exact."""
    rho = psi.rho
    num = Fraction(1)
    for r in psi.positives:
        num *= inner(highest_weight + rho, r.vector) / inner(rho, r.vector)
    assert num.denominator == 1 and num > 0, f"dimension {num} is not a positive integer"
    return int(num)


@dataclass(frozen=True)
class WeightSpaceTable:
    highest_weight: Weight
    multiplicities: dict

    def dimension(self) -> int:
        return sum(self.multiplicities.values())


def _dominant_integral(psi: PositiveSystem, hw: Weight) -> bool:
    for s in psi.simple_roots:
        pairing = 2 * inner(hw, s.vector) / inner(s.vector, s.vector)
        if pairing < 0 or pairing.denominator != 1:
            return False
    return True


def freudenthal(psi: PositiveSystem, highest_weight: Weight) -> WeightSpaceTable:
    """Exact weight multiplicities of the irreducible with given highest weight.

    Candidates are the box highest_weight - sum c_i * simple_i with c bounded
    by the expansion of highest_weight - lowest_weight, filtered by the norm
    inequality |mu + rho|^2 <= |hw + rho|^2; the recursion runs top down.
    """
    if not _dominant_integral(psi, highest_weight):
        raise ValueError(f"{highest_weight!r} is not dominant integral")
    simples = [s.vector for s in psi.simple_roots]
    rho = psi.rho
    lowest, _ = to_dominant(psi, -highest_weight)
    span = highest_weight + lowest  # = hw - w0(hw), a nonneg combo of simples
    caps = _expand_in_simples(span, simples)

    hw_norm = inner(highest_weight + rho, highest_weight + rho)
    levels = {highest_weight: 0}
    frontier = [highest_weight]
    level = 0
    candidates = [highest_weight]
    max_level = sum(caps)
    while frontier and level < max_level:
        level += 1
        nxt = []
        for w in frontier:
            for s in simples:
                cand = w - s
                if cand in levels:
                    continue
                levels[cand] = level
                nxt.append(cand)
                candidates.append(cand)
        frontier = nxt
    candidates = [
        c for c in candidates if inner(c + rho, c + rho) <= hw_norm
    ]
    candidates.sort(key=lambda w: (levels[w], w.coords))

    positives = [r.vector for r in psi.positives]
    mults = {highest_weight: 1}
    for mu in candidates[1:]:
        numerator = Fraction(0)
        for a in positives:
            k = 1
            while True:
                up = mu + k * a
                m = mults.get(up, 0)
                if levels.get(up) is None:
                    break
                if m:
                    numerator += m * inner(up, a)
                k += 1
        numerator *= 2
        denominator = hw_norm - inner(mu + rho, mu + rho)
        if denominator == 0:
            assert numerator == 0, "Freudenthal recursion hit a zero denominator"
            continue
        value = numerator / denominator
        assert value.denominator == 1 and value >= 0
        if value:
            mults[mu] = int(value)

    table = WeightSpaceTable(highest_weight, mults)
    expected = weyl_dim(psi, highest_weight)
    assert table.dimension() == expected, (
        f"Freudenthal total {table.dimension()} != Weyl dimension {expected}"
    )
    return table


def _expand_in_simples(v: Weight, simples: list) -> tuple:
    """Nonnegative integer coordinates of v over the simple roots."""
    # greedy: repeatedly subtract a simple that keeps us inside the cone
    # spanned by the simples; exact because simples are linearly independent
    coeffs = [0] * len(simples)
    rest = v
    while not rest.is_zero():
        for i, s in enumerate(simples):
            if _in_cone(rest - s, simples):
                coeffs[i] += 1
                rest = rest - s
                break
        else:
            raise ValueError(f"{v!r} is not a nonnegative combination of simples")
    return tuple(coeffs)


def _in_cone(v: Weight, simples: list) -> bool:
    """v in the nonnegative rational span of the simples (exact solve)."""
    # Gaussian elimination on the coefficient matrix [simples | v]
    n = v.basis.rank
    rows = [[s.coords[k] for s in simples] + [v.coords[k]] for k in range(n)]
    ncols = len(simples)
    pivot_rows = []
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, n):
            if rows[rr][c] != 0:
                pr = rr
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for rr in range(n):
            if rr != r and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
        pivot_rows.append((r, c))
        r += 1
    # consistency: zero rows must have zero rhs
    for rr in range(r, n):
        if rows[rr][ncols] != 0:
            return False
    sol = [Fraction(0)] * ncols
    for rr, c in pivot_rows:
        sol[c] = rows[rr][ncols]
    return all(x >= 0 for x in sol)


def brute_branch(big, small) -> dict:
    """Compact branching by restriction of the weight table.

    big: (PositiveSystem, highest weight); small: (PositiveSystem, projection
    callable it* -> iu*).  Returns {highest weight -> multiplicity}.
    """
    big_psi, big_hw = big
    small_psi, project = small
    restricted = {}
    for wgt, mult in freudenthal(big_psi, big_hw).multiplicities.items():
        key = project(wgt)
        restricted[key] = restricted.get(key, 0) + mult

    rho_s = small_psi.rho
    result = {}
    guard = sum(restricted.values())
    while True:
        live = {w: m for w, m in restricted.items() if m != 0}
        if not live:
            break
        top = max(live, key=lambda w: (inner(rho_s, w), w.coords))
        q = live[top]
        if q < 0 or not is_dominant(top, small_psi):
            raise DecompositionError(
                f"leading term {top!r} x {q} cannot start an irreducible"
            )
        for wgt, m in freudenthal(small_psi, top).multiplicities.items():
            restricted[wgt] = restricted.get(wgt, 0) - q * m
        result[top] = result.get(top, 0) + q
        guard -= 1
        if guard < 0:
            raise DecompositionError("subtraction does not terminate")
    return result
