"""Concrete root data behind the symmetric-pair catalog.

Every family is written down in a fixed orthogonal coordinate system with
colors (compact flags) stated explicitly, the same way the source tables
state them:

* su(m,n) on (eps_1..eps_m | delta_1..delta_n): block differences
  eps_i - eps_j and delta_r - delta_s are compact, eps_i - delta_r
  noncompact.
* so(2m,q), q = 2n or 2n+1, on (eps_1..eps_m | delta_1..delta_n): eps
  carries the so(2m) block.  For odd q the lone roots +-eps_i are
  noncompact and +-delta_r compact.
* sp(m,n) on (eps_1..eps_n | delta_1..delta_m): the delta block carries
  sp(m) and is written second, matching the way restriction spectra are
  reported for these pairs ("sp(n) part | sp(m) part").
* f4(4) on four coordinates: +-e_i +- e_j, +-e_i, (+-e_1..+-e_4)/2, a root
  being compact iff its pairing with e_1 + e_2 lies in {0, +-2}.
* e6(2) on (u, v | f_1..f_6): the su(6) block lives on the sum-zero part of
  the f coordinates, alpha_max = u + v, and the noncompact roots are
  eta*(u+v)/2 + w with w running over the weights of the third exterior
  power of C^6 (all f-coordinates +-1/2, exactly three plus signs).  Only
  the span of the roots matters; the two directions u - v and
  f_1 + ... + f_6 pair to zero with every root.

The e6 family is the one case where the restriction carries weights to a
smaller Cartan.  The fold identifies f_i with -f_{7-i}; its fixed space is
coordinatized by (alpha_max, f_1 - f_6, f_2 - f_5, f_3 - f_4), each divided
by its squared length.  In these coordinates the Euclidean form is twice
the true one, a harmless global scale: chambers, coroot pairings, Weyl
reflections, and partition counts are all scale-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .roots import ColoredRoot, PositiveSystem, RootSystem, chamber_system
from .weights import Basis, Weight, inner

Half = Fraction(1, 2)


def _with_negatives(entries):
    roots = []
    for vec, compact in entries:
        r = ColoredRoot(vec, compact)
        roots.append(r)
        roots.append(-r)
    return frozenset(roots)


def lex_chamber(system: RootSystem, axes, name: str = "") -> PositiveSystem:
    """Chamber of the lexicographic order given by the axis list: a root is
    positive iff its first nonzero pairing with the axes is positive."""
    positives = []
    for r in sorted(system.roots, key=lambda r: r.vector.coords):
        for axis in axes:
            p = inner(r.vector, axis)
            if p != 0:
                if p > 0:
                    positives.append(r)
                break
        else:
            raise ValueError(f"root {r.vector!r} is orthogonal to every axis")
    return PositiveSystem(system, tuple(positives), name=name)


def generated_system(basis: Basis, simple_vectors, color_rule, name: str = "") -> RootSystem:
    """Root system generated from the given simples by reflection closure."""
    vectors = {v.coords for v in simple_vectors}
    vectors |= {(-v).coords for v in simple_vectors}
    while True:
        fresh = set()
        current = [basis.weight(c) for c in vectors]
        for a in current:
            for b in current:
                scale = 2 * inner(b, a) / inner(a, a)
                image = b - scale * a
                if image.coords not in vectors:
                    fresh.add(image.coords)
        if not fresh:
            break
        vectors |= fresh
    roots = frozenset(
        ColoredRoot(basis.weight(c), bool(color_rule(basis.weight(c))))
        for c in vectors
    )
    return RootSystem(basis, roots, name=name)


def _nonzero_indices(w: Weight):
    return [k for k, c in enumerate(w.coords) if c != 0]


# ---------------------------------------------------------------------------
# su(m,n)


def su_system(m: int, n: int, basis: Basis = None) -> RootSystem:
    if m < 1 or n < 1 or m + n < 2:
        raise ValueError(f"su({m},{n}) is not a noncompact pair group")
    basis = basis or Basis(m, n, label=f"su({m},{n})")
    entries = []
    for i, j in combinations(range(1, m + 1), 2):
        entries.append((basis.eps(i) - basis.eps(j), True))
    for r, s in combinations(range(1, n + 1), 2):
        entries.append((basis.delta(r) - basis.delta(s), True))
    for i in range(1, m + 1):
        for r in range(1, n + 1):
            entries.append((basis.eps(i) - basis.delta(r), False))
    return RootSystem(basis, _with_negatives(entries), name=f"su({m},{n})")


def su_psi_a(sys: RootSystem, a: int) -> PositiveSystem:
    """Chamber of the order eps_1 > .. > eps_a > delta_1 > .. > delta_n >
    eps_{a+1} > .. > eps_m.  a = m and a = 0 are the two holomorphic ones."""
    basis = sys.basis
    m, n = basis.eps_count, basis.delta_count
    if not 0 <= a <= m:
        raise ValueError(f"a = {a} outside 0..{m}")
    axes = [basis.eps(i) for i in range(1, a + 1)]
    axes += [basis.delta(r) for r in range(1, n + 1)]
    axes += [basis.eps(i) for i in range(a + 1, m + 1)]
    return lex_chamber(sys, axes, name=f"Psi_a[{a}]")


def su_psi_tilde(sys: RootSystem, b: int) -> PositiveSystem:
    """Chamber of delta_1 > .. > delta_b > eps_1 > .. > eps_m > delta_{b+1} >
    .. > delta_n."""
    basis = sys.basis
    m, n = basis.eps_count, basis.delta_count
    if not 0 <= b <= n:
        raise ValueError(f"b = {b} outside 0..{n}")
    axes = [basis.delta(r) for r in range(1, b + 1)]
    axes += [basis.eps(i) for i in range(1, m + 1)]
    axes += [basis.delta(r) for r in range(b + 1, n + 1)]
    return lex_chamber(sys, axes, name=f"Psi_t[{b}]")


def su_block_roots(sys: RootSystem, eps_mask, delta_mask) -> frozenset:
    """Roots of the block subalgebra selected by the two membership masks:
    eps_mask[i-1] says whether eps_i belongs to the first factor, likewise
    delta_mask for delta_r.  A root survives iff both its coordinates sit in
    the same factor."""
    basis = sys.basis
    m = basis.eps_count
    if len(eps_mask) != m or len(delta_mask) != basis.delta_count:
        raise ValueError("mask lengths do not match the basis")

    def side(k):
        return eps_mask[k] if k < m else delta_mask[k - m]

    keep = []
    for r in sys.roots:
        nz = _nonzero_indices(r.vector)
        if side(nz[0]) == side(nz[1]):
            keep.append(r)
    return frozenset(keep)


def su_zeta(sys: RootSystem) -> Weight:
    """Generator of the center of k: n*(sum eps) - m*(sum delta)."""
    basis = sys.basis
    m, n = basis.eps_count, basis.delta_count
    total = basis.zero()
    for i in range(1, m + 1):
        total = total + n * basis.eps(i)
    for r in range(1, n + 1):
        total = total - m * basis.delta(r)
    return total


# ---------------------------------------------------------------------------
# so(2m, q)


def so_system(m: int, n: int, odd: bool, basis: Basis = None) -> RootSystem:
    q = 2 * n + (1 if odd else 0)
    if m < 1 or q < 1:
        raise ValueError(f"so({2 * m},{q}) out of range")
    basis = basis or Basis(m, n, label=f"so({2 * m},{q})")
    entries = []
    for i, j in combinations(range(1, m + 1), 2):
        entries.append((basis.eps(i) - basis.eps(j), True))
        entries.append((basis.eps(i) + basis.eps(j), True))
    for r, s in combinations(range(1, n + 1), 2):
        entries.append((basis.delta(r) - basis.delta(s), True))
        entries.append((basis.delta(r) + basis.delta(s), True))
    for i in range(1, m + 1):
        for r in range(1, n + 1):
            entries.append((basis.eps(i) - basis.delta(r), False))
            entries.append((basis.eps(i) + basis.delta(r), False))
    if odd:
        for i in range(1, m + 1):
            entries.append((basis.eps(i), False))
        for r in range(1, n + 1):
            entries.append((basis.delta(r), True))
    return RootSystem(basis, _with_negatives(entries), name=f"so({2 * m},{q})")


def _so_is_odd(sys: RootSystem) -> bool:
    return sys.basis.eps_count >= 1 and sys.contains_vector(sys.basis.eps(1))


def so_psi(sys: RootSystem, plus: bool) -> PositiveSystem:
    """The two admissible chambers: Psi+ is the order eps_1 > .. > eps_m >
    delta_1 > .. > delta_n, Psi- flips the sign of both eps_m and delta_n."""
    basis = sys.basis
    m, n = basis.eps_count, basis.delta_count
    axes = [basis.eps(i) for i in range(1, m)]
    axes.append(basis.eps(m) if plus else -basis.eps(m))
    if n:
        axes += [basis.delta(r) for r in range(1, n)]
        axes.append(basis.delta(n) if plus else -basis.delta(n))
    return lex_chamber(sys, axes, name="Psi+" if plus else "Psi-")


def so_split_roots(sys: RootSystem, c: int, attach_low: bool = True) -> frozenset:
    """Roots of so(2m,c)+so(q-c) inside so(2m,q).  The noncompact factor
    keeps the whole eps block plus c of the q minus-coordinates: k = c//2
    delta planes (the low ones when attach_low, the top ones otherwise) and,
    for odd c, the odd line."""
    basis = sys.basis
    m, n = basis.eps_count, basis.delta_count
    odd = _so_is_odd(sys)
    q = 2 * n + (1 if odd else 0)
    if not 0 <= c <= q:
        raise ValueError(f"split {c} outside 0..{q}")
    if not odd and c % 2:
        raise ValueError(
            f"so({2 * m},{q}) has no rank-preserving so({2 * m},{c}) factor"
        )
    k = c // 2
    attached = set(range(1, k + 1)) if attach_low else set(range(n - k + 1, n + 1))
    lone_attached = c % 2 == 1
    lone_rest = (q - c) % 2 == 1
    keep = []
    for r in sys.roots:
        nz = _nonzero_indices(r.vector)
        in_eps = [k_ < m for k_ in nz]
        if len(nz) == 2 and all(in_eps):
            keep.append(r)
        elif len(nz) == 2 and in_eps[0] != in_eps[1]:
            d = nz[0] - m + 1 if not in_eps[0] else nz[1] - m + 1
            if d in attached:
                keep.append(r)
        elif len(nz) == 2:
            d1, d2 = nz[0] - m + 1, nz[1] - m + 1
            if (d1 in attached) == (d2 in attached):
                keep.append(r)
        elif in_eps[0]:
            if lone_attached:
                keep.append(r)
        else:
            d = nz[0] - m + 1
            if (d in attached and lone_attached) or (d not in attached and lone_rest):
                keep.append(r)
    return frozenset(keep)


# ---------------------------------------------------------------------------
# sp(m,n)


def sp_system(m: int, n: int, basis: Basis = None) -> RootSystem:
    """sp(m,n) with the sp(n) block on the eps coordinates (written first)
    and the sp(m) block on the delta coordinates."""
    if m < 1 or n < 1:
        raise ValueError(f"sp({m},{n}) out of range")
    basis = basis or Basis(n, m, label=f"sp({m},{n})")
    entries = []
    for r, s in combinations(range(1, n + 1), 2):
        entries.append((basis.eps(r) - basis.eps(s), True))
        entries.append((basis.eps(r) + basis.eps(s), True))
    for r in range(1, n + 1):
        entries.append((2 * basis.eps(r), True))
    for i, j in combinations(range(1, m + 1), 2):
        entries.append((basis.delta(i) - basis.delta(j), True))
        entries.append((basis.delta(i) + basis.delta(j), True))
    for i in range(1, m + 1):
        entries.append((2 * basis.delta(i), True))
    for i in range(1, m + 1):
        for r in range(1, n + 1):
            entries.append((basis.delta(i) - basis.eps(r), False))
            entries.append((basis.delta(i) + basis.eps(r), False))
    return RootSystem(basis, _with_negatives(entries), name=f"sp({m},{n})")


def sp_psi(sys: RootSystem, delta_first: bool = True) -> PositiveSystem:
    """delta_first gives the chamber delta_1 > .. > delta_m > eps_1 > .. >
    eps_n, the one whose tau factors through the sp(m) block."""
    basis = sys.basis
    axes_d = [basis.delta(i) for i in range(1, basis.delta_count + 1)]
    axes_e = [basis.eps(r) for r in range(1, basis.eps_count + 1)]
    axes = axes_d + axes_e if delta_first else axes_e + axes_d
    return lex_chamber(sys, axes, name="Psi" if delta_first else "Psi~")


def sp_split_roots(
    sys: RootSystem, k: int, attach_low: bool = True, split_eps: bool = True
) -> frozenset:
    """Roots of sp(m,k)+sp(n-k) when split_eps (the noncompact factor keeps
    the delta block and k eps coordinates), or of sp(k,n)+sp(m-k) otherwise.
    attach_low picks the low k coordinates of the split block vs the top k."""
    basis = sys.basis
    n = basis.eps_count
    size = n if split_eps else basis.delta_count
    if not 0 <= k <= size:
        raise ValueError(f"split {k} outside 0..{size}")
    attached = set(range(1, k + 1)) if attach_low else set(range(size - k + 1, size + 1))

    def split_index(pos):
        if split_eps:
            return pos + 1 if pos < n else None
        return pos - n + 1 if pos >= n else None

    keep = []
    for r in sys.roots:
        sides = [split_index(pos) for pos in _nonzero_indices(r.vector)]
        cut = [s for s in sides if s is not None]
        if not cut:
            keep.append(r)
        elif all(s in attached for s in cut):
            keep.append(r)
        elif len(cut) == len(sides) and all(s not in attached for s in cut):
            keep.append(r)
    return frozenset(keep)


# ---------------------------------------------------------------------------
# f4(4)


def f4_system(basis: Basis = None) -> RootSystem:
    basis = basis or Basis(4, 0, label="f4(4)")
    e = [basis.eps(i) for i in range(1, 5)]
    axis = e[0] + e[1]

    def color(v):
        return inner(v, axis) in (0, 2, -2)

    entries = []
    for i, j in combinations(range(4), 2):
        for vec in (e[i] - e[j], e[i] + e[j]):
            entries.append((vec, color(vec)))
    for i in range(4):
        entries.append((e[i], color(e[i])))
    for s2 in (1, -1):
        for s3 in (1, -1):
            for s4 in (1, -1):
                vec = Half * (e[0] + s2 * e[1] + s3 * e[2] + s4 * e[3])
                entries.append((vec, color(vec)))
    return RootSystem(basis, _with_negatives(entries), name="f4(4)")


def f4_psi_bs(sys: RootSystem) -> PositiveSystem:
    basis = sys.basis
    return lex_chamber(sys, [basis.eps(i) for i in range(1, 5)], name="Psi_BS")


def f4_alpha_max(sys: RootSystem) -> Weight:
    return sys.basis.eps(1) + sys.basis.eps(2)


def f4_h_roots(sys: RootSystem) -> frozenset:
    """sp(1,2)+su(2): the sp(1,2) factor is built on e_1+e_2, e_3, e_4 and
    the half roots with equal first two coordinates; su(2) on e_1-e_2."""
    keep = []
    for r in sys.roots:
        a = r.vector.coords
        if a[0] == a[1] or (a[2] == a[3] == 0 and a[0] == -a[1]):
            keep.append(r)
    return frozenset(keep)


def f4_h0_roots(sys: RootSystem) -> frozenset:
    """so(5,4): the integral-coordinate roots +-e_i +- e_j, +-e_i."""
    return frozenset(
        r for r in sys.roots if all(c.denominator == 1 for c in r.vector.coords)
    )


# ---------------------------------------------------------------------------
# e6(2)


def e6_system(basis: Basis = None) -> RootSystem:
    basis = basis or Basis(2, 6, label="e6(2)")
    f = [basis.delta(j) for j in range(1, 7)]
    umax = basis.eps(1) + basis.eps(2)
    entries = [(umax, True)]
    for i, j in combinations(range(6), 2):
        entries.append((f[i] - f[j], True))
    for triple in combinations(range(6), 3):
        w = Half * umax
        for j in range(6):
            w = w + (Half if j in triple else -Half) * f[j]
        entries.append((w, False))
    return RootSystem(basis, _with_negatives(entries), name="e6(2)")


def e6_alpha_max(sys: RootSystem) -> Weight:
    return sys.basis.eps(1) + sys.basis.eps(2)


def e6_simples(sys: RootSystem) -> tuple:
    """(alpha_1, .., alpha_6) with the su(6) chain on f_i - f_{i+1} and the
    noncompact node alpha_2 = alpha_max/2 + lowest weight of the third
    exterior power."""
    basis = sys.basis
    f = [basis.delta(j) for j in range(1, 7)]
    a2 = Half * e6_alpha_max(sys)
    for j in range(6):
        a2 = a2 + (Half if j >= 3 else -Half) * f[j]
    return (
        f[0] - f[1],
        a2,
        f[1] - f[2],
        f[2] - f[3],
        f[3] - f[4],
        f[4] - f[5],
    )


def e6_psi_bs(sys: RootSystem) -> PositiveSystem:
    xi = sys.basis.weight([5, 5, 5, 4, 3, 2, 1, 0])
    psi = chamber_system(xi, sys, name="Psi_BS")
    return psi


@dataclass(frozen=True)
class FoldData:
    """Restriction data for a pair whose u is a proper subspace of t."""

    u_basis: Basis
    matrix: tuple  # row i = u-coordinates of the image of the i-th t-coordinate
    h_psis: dict  # chamber name on g -> folded positive system for h
    h0_psis: dict  # chamber name on g -> folded positive system for h0


def e6_fold(sys: RootSystem) -> FoldData:
    """Fold f_i -> -f_{7-i}.  Fixed-space coordinates are taken along
    alpha_max, f_1 - f_6, f_2 - f_5, f_3 - f_4 (each scaled by 1/2, so the
    Euclidean form on u-coordinates is half the true one)."""
    u_basis = Basis(4, 0, label="u(e6(2),f4(4))")
    rows = [
        (Half, 0, 0, 0),
        (Half, 0, 0, 0),
        (0, Half, 0, 0),
        (0, 0, Half, 0),
        (0, 0, 0, Half),
        (0, 0, 0, -Half),
        (0, 0, -Half, 0),
        (0, -Half, 0, 0),
    ]
    matrix = tuple(tuple(Fraction(c) for c in row) for row in rows)
    beta_max = u_basis.weight([1, 0, 0, 0])

    def color(v):
        return v.coords[0] in (0, 1, -1)

    h_simples = [
        u_basis.weight([Half, -Half, -Half, -Half]),
        u_basis.weight([0, 0, 0, 1]),
        u_basis.weight([0, 0, Half, -Half]),
        u_basis.weight([0, Half, -Half, 0]),
    ]
    h0_simples = [
        u_basis.weight([Half, -Half, 0, 0]),
        u_basis.weight([0, Half, -Half, 0]),
        u_basis.weight([0, 0, Half, -Half]),
        u_basis.weight([0, 0, 0, 1]),
    ]
    h_system = generated_system(u_basis, h_simples, color, name="f4(4)|u")
    h0_system = generated_system(u_basis, h0_simples, color, name="sp(3,1)|u")
    xi = u_basis.weight([10, 3, 2, 1])
    h_psi = chamber_system(xi, h_system, name="Psi_H[Psi_BS]")
    h0_psi = chamber_system(xi, h0_system, name="Psi_H0[Psi_BS]")
    assert inner(beta_max, h_psi.rho) > 0 and inner(beta_max, h0_psi.rho) > 0
    return FoldData(
        u_basis=u_basis,
        matrix=matrix,
        h_psis={"Psi_BS": h_psi},
        h0_psis={"Psi_BS": h0_psi},
    )


def e6_lambda_tilde1(fold: FoldData) -> Weight:
    """First fundamental weight of the compact sp(3) block of the folded
    sp(3,1) system.  Quaternionic spectra step by alpha_max/2 plus this."""
    return Half * fold.u_basis.weight([0, 1, 0, 0])


# ---------------------------------------------------------------------------
# so(2m,2) -> so(2m,1)


def so_rank_one_fold(sys: RootSystem) -> FoldData:
    """Restriction data for so(2m,2) over so(2m,1): u drops the delta
    coordinate, both chambers fold onto the matching chamber of so(2m,1)."""
    basis = sys.basis
    m = basis.eps_count
    if basis.delta_count != 1 or _so_is_odd(sys):
        raise ValueError(f"{sys.name} is not of the form so(2m,2)")
    u_basis = Basis(m, 0, label=f"u(so({2 * m},2))")
    one, zero = Fraction(1), Fraction(0)
    rows = [
        tuple(one if j == i else zero for j in range(m)) for i in range(m)
    ]
    rows.append(tuple(zero for _ in range(m)))
    folded = so_system(m, 0, odd=True, basis=u_basis)
    axes_plus = [u_basis.eps(i) for i in range(1, m + 1)]
    axes_minus = axes_plus[:-1] + [-u_basis.eps(m)]
    plus = lex_chamber(folded, axes_plus, name="Psi+|u")
    minus = lex_chamber(folded, axes_minus, name="Psi-|u")
    return FoldData(
        u_basis=u_basis,
        matrix=tuple(rows),
        h_psis={"Psi+": plus, "Psi-": minus},
        h0_psis={"Psi+": plus, "Psi-": minus},
    )


# ---------------------------------------------------------------------------
# projections for the K_1 x K_2 split


def slice_projection(basis: Basis, indices) -> tuple:
    """Projection onto a set of coordinate axes, as a matrix of rows."""
    chosen = set(indices)
    one, zero = Fraction(1), Fraction(0)
    return tuple(
        tuple(one if j == i and i in chosen else zero for j in range(basis.rank))
        for i in range(basis.rank)
    )


def projection_matrix(basis: Basis, directions) -> tuple:
    """Orthogonal projection onto the span of pairwise orthogonal weights."""
    for a, b in combinations(directions, 2):
        if inner(a, b) != 0:
            raise ValueError("projection directions must be orthogonal")
    rows = []
    for i in range(basis.rank):
        e_i = basis.weight([1 if k == i else 0 for k in range(basis.rank)])
        image = basis.zero()
        for d in directions:
            image = image + (inner(e_i, d) / inner(d, d)) * d
        rows.append(image.coords)
    return tuple(rows)


def mean_centering_projection(basis: Basis, indices) -> tuple:
    """Projection onto the sum-zero part of a coordinate block: each chosen
    coordinate minus the block mean, other coordinates killed."""
    chosen = sorted(set(indices))
    count = len(chosen)
    rows = []
    for i in range(basis.rank):
        if i not in chosen:
            rows.append(tuple(Fraction(0) for _ in range(basis.rank)))
            continue
        row = [Fraction(0)] * basis.rank
        for j in chosen:
            row[j] = Fraction(-1, count) + (1 if j == i else 0)
        rows.append(tuple(row))
    return tuple(rows)


def matrix_difference(a: tuple, b: tuple) -> tuple:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )
