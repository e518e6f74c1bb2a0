"""Branching laws for discrete series restricted to symmetric subgroups.

Two independent routes compute the same spectrum:

* ``duality_branch`` — branch the lowest-K-type data to L through the
  compact group K2, then run Blattner's formula on the associated
  noncompact group H0; multiplicities arrive as nonnegative sums, no
  cancellation.

* ``duflo_vargas`` — assemble the alternating Weyl-group sum of shifted
  geometric tails directly on u* and read the spectrum off the dominant
  chamber; multiplicities arrive through cancellation and a global sign.

Both produce a ``BranchingResult`` keyed by Harish-Chandra parameters of
H inside a truncation window.  Agreement of the two routes is the main
correctness check of the whole package and is enforced by the test suite
rather than here.

Everything is exact rational arithmetic end to end.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _lp
from .catalog import (
    CartanSplit,
    HCParameter,
    InvalidParameter,
    SymmetricPairEntry,
    induced_systems,
    k1_split,
    parameter,
    split_compact_roots,
)
from .distributions import (
    TruncationWindow,
    WeightDistribution,
    WeightMultiset,
    _geometric,
    heaviside,
    kostant_partition,
    skew_project,
)
from .oracle import weyl_dim
from .roots import (
    ColoredRoot,
    PositiveSystem,
    RootSystem,
    WeylGroup,
    apply_matrix,
    identity_matrix,
    is_dominant,
    w_u_subgroup,
    weyl_group,
)
from .weights import Rat, Weight, inner

__all__ = [
    "BranchingError",
    "ConventionError",
    "SpectrumWindowWarning",
    "CompactBranching",
    "BranchingResult",
    "DEFAULT_WINDOW_BOUND",
    "lowest_k_type",
    "central_shift",
    "compact_branch",
    "blattner",
    "blattner_spectrum",
    "h0_parameter",
    "duality_branch",
    "duflo_vargas",
    "multiplicity_free",
    "construct_k2_trivial_parameter",
]


DEFAULT_WINDOW_BOUND = Rat(20)

# Hard ceilings for the self-sizing loops.  Hitting one means a window
# heuristic failed to stabilize, which is a usage error (window far too
# deep) or a catalog bug, not something to silently push through.
_MAX_DEEPEN_ROUNDS = 8


class BranchingError(RuntimeError):
    """A branching computation could not be completed."""


class ConventionError(BranchingError):
    """An internal sign or chamber convention produced an impossible value
    (negative multiplicity, overfull compact branching).  Never a property
    of the input: always a bug."""


class SpectrumWindowWarning(UserWarning):
    """The requested window contains no spectrum at all."""


# ---------------------------------------------------------------------------
# result containers


@dataclass(frozen=True, eq=False)
class CompactBranching:
    """Finite branching of an irreducible K2-representation to L∩K2.

    ``entries`` maps the Harish-Chandra parameter of each constituent
    (a weight of u*) to its multiplicity.  ``dimension`` is the total
    dimension, conserved against the Weyl dimension formula.
    """

    entries: dict
    source: Weight
    dimension: int

    def sorted_entries(self) -> list:
        return sorted(self.entries.items(), key=lambda kv: kv[0].coords)


@dataclass(frozen=True, eq=False)
class BranchingResult:
    """Discrete spectrum of a restricted discrete series inside a window.

    ``entries`` maps H-side Harish-Chandra parameters to multiplicities,
    all positive.  ``sign`` records the calibrated global sign of the
    alternating-sum route (always +1 for the duality route).  ``shift``
    is rho_n of the induced system on h; translating every key by it
    gives the shifted (lowest-L-type) view of the same spectrum.
    """

    pair: SymmetricPairEntry
    lam: HCParameter
    entries: dict
    window: TruncationWindow
    multiplicity_free: bool
    method: str
    sign: int = 1
    shift: Weight = None

    def sorted_entries(self) -> list:
        lvl = self.window.level
        return sorted(
            self.entries.items(),
            key=lambda kv: (lvl(kv[0].weight), kv[0].weight.coords),
        )

    def shifted_entries(self) -> dict:
        """The same spectrum presented by lowest L-type rather than by
        Harish-Chandra parameter."""
        return {p.weight + self.shift: m for p, m in self.entries.items()}


# ---------------------------------------------------------------------------
# subsystem scaffolding


def _compact_chamber(basis, vectors, name: str):
    """Positive system of the (compact) subsystem generated by the given
    positive vectors, or None when there are none."""
    vecs = sorted(set(vectors), key=lambda v: v.coords)
    if not vecs:
        return None
    roots = set()
    for v in vecs:
        roots.add(ColoredRoot(v, True))
        roots.add(ColoredRoot(-v, True))
    sys = RootSystem(basis, frozenset(roots), name=name)
    pos = tuple(sys._by_vector[v.coords] for v in vecs)
    return PositiveSystem(sys, pos, name=name)


def _sub_chamber(system: RootSystem, roots, psi: PositiveSystem, name: str):
    """Chamber cut on a reflection-closed subset of the ambient roots by an
    ambient positive system."""
    if not roots:
        return None
    sub = RootSystem(system.basis, frozenset(roots), name=name)
    pos_coords = {r.vector.coords for r in psi.positives}
    pos = tuple(
        r for r in sorted(sub.roots, key=lambda r: r.vector.coords)
        if r.vector.coords in pos_coords
    )
    return PositiveSystem(sub, pos, name=name)


def _strictly_dominant(w: Weight, psi) -> bool:
    # None stands for a torus: no roots, every weight is (vacuously) regular
    # dominant.
    return psi is None or is_dominant(w, psi, strict=True)


@lru_cache(maxsize=None)
def _full_compact_weyl(psi: PositiveSystem):
    """Weyl group of the full compact subsystem of psi (not just the group
    generated by psi's compact simple roots)."""
    comp = _compact_chamber(
        psi.system.basis,
        [r.vector for r in psi.compact_positives],
        name=f"{psi.name}:compact",
    )
    if comp is None:
        return ((identity_matrix(psi.system.basis), 1),)
    return tuple(weyl_group(comp, name=f"W_L({psi.name})"))


@lru_cache(maxsize=None)
def _restricted_weyl(psi: PositiveSystem):
    return tuple(w_u_subgroup(psi))


# ---------------------------------------------------------------------------
# restriction context: everything both engines need, built once per (pair, λ)


@dataclass(frozen=True, eq=False)
class _RestrictionContext:
    entry: SymmetricPairEntry
    param: HCParameter
    psi: PositiveSystem
    split: CartanSplit
    psi_h: PositiveSystem
    psi_h0: PositiveSystem
    u_basis: object
    lam: Weight
    lam1: Weight          # t-side components of λ under the k1/k2 split
    lam2: Weight
    rho_n: Weight         # t-side, for the chamber of λ
    shift2: Weight        # (rho_n)_2, t-side; nonzero only for su families
    k2_psi: object        # chamber of the k2 subsystem on t (None: torus)
    wk2: tuple            # elements (matrix, sign) of W(K2) on t
    wk1_u: tuple          # elements of W(K1) transported to u
    l_compact: object     # compact chamber of l on u (None: torus)
    lk2_psi: object       # compact chamber of l∩k2 on u (None: torus)
    delta_kl: WeightMultiset   # weights of k/l on u, with multiplicity
    s0: WeightMultiset         # noncompact h0 positives ⊎ delta_kl
    xi0: Weight           # assembly functional: q_u(rho of the chamber)
    rho_tilde: Weight     # window functional: rho of the induced h system

    def q(self, w: Weight) -> Weight:
        return self.entry.q_u.apply(w)


def _u_image(ctx_q, basis, vectors) -> WeightMultiset:
    out = []
    for v in vectors:
        img = ctx_q(v)
        if not img.is_zero():
            out.append(img)
    return WeightMultiset.from_weights(basis, out)


@lru_cache(maxsize=32)
def _context(entry: SymmetricPairEntry, lam: Weight) -> _RestrictionContext:
    param = parameter(entry, lam)
    psi = param.psi
    split = k1_split(entry, psi)
    psi_h, psi_h0 = induced_systems(entry, lam)
    u_basis = psi_h.system.basis
    q = entry.q_u.apply

    lam1 = apply_matrix(split.p1, lam)
    lam2 = apply_matrix(split.p2, lam)
    rho_n = psi.rho_n
    shift2 = apply_matrix(split.p2, rho_n)
    if not shift2.is_zero():
        # only the su rows ever see a noncentral-looking shift candidate;
        # the shift itself must pair to zero with every compact root
        for r in psi.compact_positives:
            if inner(shift2, r.vector) != 0:
                raise ConventionError(
                    f"(rho_n)_2 = {shift2!r} is not central in k for "
                    f"{entry.pair_name}"
                )

    k1_roots, k2_roots = split_compact_roots(entry.system, split)
    k2_psi = _sub_chamber(entry.system, k2_roots, psi, name=f"k2({psi.name})")
    wk2 = tuple(weyl_group(k2_psi)) if k2_psi is not None else (
        (identity_matrix(entry.system.basis), 1),
    )

    # W(K1) acts on u through q_u: generated by the images of the k1
    # simple roots.  For a torus k1 the group is trivial.
    k1_psi = _sub_chamber(entry.system, k1_roots, psi, name=f"k1({psi.name})")
    if k1_psi is None:
        wk1_u = ((identity_matrix(u_basis), 1),)
    else:
        gens = []
        for s in k1_psi.simple_roots:
            img = q(s.vector)
            if img.is_zero():
                raise ConventionError(
                    f"k1 simple root {s.vector!r} dies on u for {entry.pair_name}"
                )
            gens.append(img)
        wk1_u = tuple(WeylGroup(u_basis, gens, name=f"W_K1({psi.name})"))

    # chambers on u: the compact part of l (shared by h and h0 — catalog
    # asserts that), and its k2 part (drop everything hit from k1)
    l_vecs = [r.vector for r in psi_h.compact_positives]
    l_compact = _compact_chamber(u_basis, l_vecs, name=f"l({psi.name})")
    k1_img = {q(r.vector) for r in k1_roots}
    lk2_vecs = [v for v in l_vecs if v not in k1_img]
    lk2_psi = _compact_chamber(u_basis, lk2_vecs, name=f"l∩k2({psi.name})")

    # Δ(k/l, u): u-weights of k/l.  Image multiset of the compact positives
    # minus one copy of each compact l positive; every root of l must be
    # accounted for, and no compact root may die on u.
    comp_img = []
    for r in psi.compact_positives:
        img = q(r.vector)
        if img.is_zero():
            raise ConventionError(
                f"compact root {r.vector!r} restricts to zero for "
                f"{entry.pair_name}"
            )
        comp_img.append(img)
    comp_ms = WeightMultiset.from_weights(u_basis, comp_img)
    l_ms = WeightMultiset.from_weights(u_basis, l_vecs)
    if comp_ms.intersection(l_ms) != l_ms:
        raise ConventionError(
            f"compact chamber of l is not covered by k for {entry.pair_name}"
        )
    delta_kl = comp_ms.difference(l_ms)

    # noncompact tail: images of the noncompact positives, minus the full
    # (±) weight set of p ∩ h; the remainder must be exactly the noncompact
    # positives of the induced h0 system.  This is a live identity check.
    nc_ms = _u_image(q, u_basis, [r.vector for r in psi.noncompact_positives])
    h_nc = [r.vector for r in psi_h.noncompact_positives]
    phi_hl = WeightMultiset.from_weights(u_basis, h_nc + [-v for v in h_nc])
    removable = nc_ms.intersection(phi_hl)
    if removable.count() != len(h_nc):
        raise ConventionError(
            f"p∩h weights do not embed once each into p for {entry.pair_name}"
        )
    h0_tail = nc_ms.difference(removable)
    h0_expected = WeightMultiset.from_weights(
        u_basis, [r.vector for r in psi_h0.noncompact_positives]
    )
    if h0_tail != h0_expected:
        raise ConventionError(
            f"noncompact remainder does not match the induced h0 system "
            f"for {entry.pair_name}"
        )
    s0 = h0_tail.union(delta_kl)

    return _RestrictionContext(
        entry=entry,
        param=param,
        psi=psi,
        split=split,
        psi_h=psi_h,
        psi_h0=psi_h0,
        u_basis=u_basis,
        lam=lam,
        lam1=lam1,
        lam2=lam2,
        rho_n=rho_n,
        shift2=shift2,
        k2_psi=k2_psi,
        wk2=wk2,
        wk1_u=wk1_u,
        l_compact=l_compact,
        lk2_psi=lk2_psi,
        delta_kl=delta_kl,
        s0=s0,
        xi0=q(psi.rho),
        rho_tilde=psi_h.rho,
    )


def _as_weight(lam) -> Weight:
    return lam.weight if isinstance(lam, HCParameter) else lam


# ---------------------------------------------------------------------------
# lowest K-type and the central shift


def lowest_k_type(lam: HCParameter):
    """(Harish-Chandra parameter, highest weight) of the lowest K-type."""
    psi = lam.psi
    hc = lam.weight + psi.rho_n
    return hc, hc - psi.rho_c


def central_shift(entry: SymmetricPairEntry, lam) -> Weight:
    """The k2-component of rho_n for the chamber of lam.  Central in k;
    nonzero only for the su rows with asymmetric chambers."""
    return _context(entry, _as_weight(lam)).shift2


# ---------------------------------------------------------------------------
# alternating-sum assembly


def _assemble(basis, anchors, tail: WeightMultiset, xi: Weight, target):
    """Σ ε(a) δ_a ⋆ y_tail as a distribution exact through xi-level target.

    anchors: mapping weight → integer coefficient.  The geometric factors
    are folded in one direction at a time, re-truncating after each pass:
    the alternating anchor signs cancel most of each pass inside the
    window, which keeps intermediate supports near the final size instead
    of near the size of the full product tail.
    """
    levels = [inner(xi, a) for a in anchors]
    target = max(target, max(levels))
    window = TruncationWindow(xi, target)
    window.validate_certificate(tail)
    dist = WeightDistribution(window, dict(anchors))
    for g in sorted(tail.expanded(), key=lambda v: (-inner(xi, v), v.coords)):
        dist = _geometric(dist, g).restricted(target)
    assert dist.window.bound >= target
    return dist


def _anchor_map(ctx: _RestrictionContext, source: Weight, group) -> dict:
    anchors = {}
    for mat, sgn in group:
        a = ctx.q(apply_matrix(mat, source))
        anchors[a] = anchors.get(a, 0) + sgn
    return {a: c for a, c in anchors.items() if c}


# ---------------------------------------------------------------------------
# compact branching K2 ↓ L∩K2


def _lk2_dimension(ctx: _RestrictionContext, nu: Weight) -> int:
    if ctx.lk2_psi is None:
        return 1
    return weyl_dim(ctx.lk2_psi, nu - ctx.lk2_psi.rho)


def _compact_branch_at(ctx: _RestrictionContext, lam2: Weight) -> dict:
    """Branch the K2-representation with Harish-Chandra parameter lam2 to
    L∩K2.  Returns {nu2' (u-side parameter) → multiplicity}, complete."""
    if ctx.k2_psi is None:
        # k2 is a torus: the "representation" is the character q(lam2)
        return {ctx.q(lam2): 1}
    dim_target = weyl_dim(ctx.k2_psi, lam2 - ctx.k2_psi.rho)
    anchors = _anchor_map(ctx, lam2, ctx.wk2)
    xi = ctx.xi0
    half = Rat(1, 2) * ctx.delta_kl.total()
    levels = [inner(xi, a) for a in anchors]
    spread = max(levels) - min(levels)
    target = max(levels) + inner(xi, half) + 1
    step = max(spread, inner(xi, half), Rat(4))
    twist = -1 if ctx.delta_kl.count() % 2 else 1
    for round_ in range(_MAX_DEEPEN_ROUNDS):
        dist = _assemble(ctx.u_basis, anchors, ctx.delta_kl, xi, target)
        if ctx.lk2_psi is None:
            raw = dict(dist.items())
        else:
            raw = skew_project(dist, ctx.lk2_psi)
        entries = {}
        for nu in sorted(raw, key=lambda w: (inner(xi, w), w.coords)):
            m = twist * raw[nu]
            if m < 0:
                raise ConventionError(
                    f"negative compact multiplicity {m} at {nu!r} "
                    f"(twist {twist}) for {ctx.entry.pair_name}"
                )
            if m:
                entries[nu] = m
        # Deepening the window only ever adds constituents (coefficients in
        # the exact region never change), so dimension count is a complete-
        # ness certificate: equality means every constituent was seen.
        total = sum(m * _lk2_dimension(ctx, nu) for nu, m in entries.items())
        if total == dim_target:
            return entries
        if total > dim_target:
            raise ConventionError(
                f"compact branching overshoots: {total} > {dim_target} "
                f"for {ctx.entry.pair_name}"
            )
        target += step * (round_ + 1)
    raise BranchingError(
        f"compact branching of {lam2!r} did not close after "
        f"{_MAX_DEEPEN_ROUNDS} window extensions"
    )


def compact_branch(entry: SymmetricPairEntry, lam) -> CompactBranching:
    """Restriction of the K2-factor of the lowest K-type datum of lam to
    L∩K2: finite, complete, dimension-checked."""
    ctx = _context(entry, _as_weight(lam))
    entries = _compact_branch_at(ctx, ctx.lam2)
    dim = sum(m * _lk2_dimension(ctx, nu) for nu, m in entries.items())
    return CompactBranching(entries=entries, source=ctx.lam2, dimension=dim)


# ---------------------------------------------------------------------------
# Blattner's formula on h0


def _validate_h0_param(psi_h0: PositiveSystem, xi: Weight) -> None:
    if not is_dominant(xi, psi_h0, strict=True):
        raise InvalidParameter(
            f"{xi!r} is not regular dominant for {psi_h0.name or 'h0'}"
        )


def blattner(h0_psi: PositiveSystem, xi, mu: Weight, mode: str = "restricted") -> int:
    """Multiplicity of the L-type with parameter mu in the discrete series
    of H0 with Harish-Chandra parameter xi.

    mode "restricted" sums over the subgroup generated by the compact
    simple roots of the chamber; "full" sums over the Weyl group of the
    whole compact subsystem.  The two agree on Borel–de Siebenthal systems
    and on the handful of exceptional families where the lowest K-type is
    outer-fixed; "restricted" is what the closed formulas use.
    """
    xi = _as_weight(xi)
    _validate_h0_param(h0_psi, xi)
    for r in h0_psi.compact_positives:
        if inner(mu, r.vector) <= 0:
            raise InvalidParameter(
                f"{mu!r} is not strictly dominant for the compact part of "
                f"{h0_psi.name or 'h0'}"
            )
    if mode == "restricted":
        group = _restricted_weyl(h0_psi)
    elif mode == "full":
        group = _full_compact_weyl(h0_psi)
    else:
        raise ValueError(f"unknown Blattner mode {mode!r}")
    base = xi + h0_psi.rho_n
    slots = WeightMultiset.from_weights(
        h0_psi.system.basis, [r.vector for r in h0_psi.noncompact_positives]
    )
    total = 0
    for mat, sgn in group:
        total += sgn * kostant_partition(
            slots, apply_matrix(mat, mu) - base, xi=h0_psi.rho
        )
    if total < 0:
        raise ConventionError(
            f"Blattner formula returned {total} for mu={mu!r}, xi={xi!r}"
        )
    return total


def _cone_reach(start: Weight, dirs, objective: Weight, cuts, compact):
    """Exact upper bound for objective over start + (real cone of dirs)
    intersected with half-spaces and a dominance chamber.

    cuts: pairs (functional, bound) meaning inner(functional, x) <= bound.
    compact: PositiveSystem (or None) whose positives must pair >= 0 with
    every feasible point.  Returns None when the region is unbounded above
    and "infeasible" when it is empty: both are caller decisions.
    """
    cols = list(dirs)
    c = [inner(objective, g) for g in cols]
    A = []
    b = []
    for f, bd in cuts:
        A.append([inner(f, g) for g in cols])
        b.append(bd - inner(f, start))
    if compact is not None:
        for r in compact.positives:
            beta = r.vector
            A.append([-inner(g, beta) for g in cols])
            b.append(inner(start, beta))
    try:
        val, _ = _lp.maximize(c, A, b)
    except _lp.Unbounded:
        return None
    except _lp.Infeasible:
        return "infeasible"
    return inner(objective, start) + val


def _partition_table(slots: WeightMultiset, xi: Weight, bound) -> WeightDistribution:
    """Partition counts of slots as a distribution: coefficient at v is the
    number of ways to write v as a nonnegative integer combination, exact
    through xi-level bound."""
    half = Rat(1, 2) * slots.total()
    win = TruncationWindow(xi, bound + inner(xi, half))
    return heaviside(slots, win).translate(-half)


def _cone_points(lowest: Weight, dirs, walk: Weight, cap) -> list:
    """All points lowest + Σ c_γ γ (c_γ ≥ 0 integers) with walk-level ≤ cap.
    The directions may be linearly dependent; points are deduplicated."""
    seen = set()
    steps = [(g, inner(walk, g)) for g in dirs]

    def rec(i, cur, lvl):
        seen.add(cur)
        for j in range(i, len(steps)):
            g, dl = steps[j]
            nl = lvl + dl
            if nl <= cap:
                rec(j, cur + g, nl)

    rec(0, lowest, inner(walk, lowest))
    return sorted(seen, key=lambda w: (inner(walk, w), w.coords))


def _compact_part(psi: PositiveSystem):
    return _compact_chamber(
        psi.system.basis,
        [r.vector for r in psi.compact_positives],
        name=f"{psi.name}:compact",
    )


def blattner_spectrum(
    h0_psi: PositiveSystem, xi, window: TruncationWindow, mode: str = "restricted"
) -> dict:
    """All L-types of the h0 discrete series of parameter xi admitted by the
    window, with multiplicities.

    Candidates are walked through the cone lowest + ℕ·(noncompact
    positives); nothing outside that cone can carry an L-type.  When the
    window functional is positive on every cone direction the walk depth
    that covers the window is computed exactly; otherwise the walk deepens
    until the admitted spectrum stabilizes.
    """
    if mode not in ("restricted", "full"):
        raise ValueError(f"unknown Blattner mode {mode!r}")
    xi = _as_weight(xi)
    _validate_h0_param(h0_psi, xi)
    lowest = xi + h0_psi.rho_n
    dirs = sorted(
        {r.vector for r in h0_psi.noncompact_positives}, key=lambda v: v.coords
    )
    compact = _compact_part(h0_psi)
    if not dirs:
        if window.admits(lowest):
            return {lowest: 1}
        return {}
    walk = h0_psi.rho  # strictly positive on every direction
    f = window.functional
    slack = window.bound - window.level(lowest)
    if slack < 0:
        return {}
    group = (
        _restricted_weyl(h0_psi) if mode == "restricted"
        else _full_compact_weyl(h0_psi)
    )
    slots = WeightMultiset.from_weights(
        h0_psi.system.basis, [r.vector for r in h0_psi.noncompact_positives]
    )

    def harvest(cap):
        cands = [
            nu for nu in _cone_points(lowest, dirs, walk, cap)
            if window.admits(nu) and _strictly_dominant(nu, compact)
        ]
        if not cands:
            return {}
        # one partition table serves every candidate: reflections of a
        # compact-dominant point only lower its walk-level, so every lookup
        # lands inside the table window
        table = _partition_table(slots, walk, cap - inner(walk, lowest))
        out = {}
        for nu in cands:
            m = 0
            for mat, sgn in group:
                m += sgn * table.coefficient(apply_matrix(mat, nu) - lowest)
            if m < 0:
                raise ConventionError(
                    f"Blattner formula returned {m} for mu={nu!r}, xi={xi!r}"
                )
            if m:
                out[nu] = m
        return out

    # every admitted type sits in the cone over lowest, inside the window
    # half-space and the compact dominance chamber; the walk depth covering
    # that region exactly is a small linear program
    cap = _cone_reach(lowest, dirs, walk, [(f, window.bound)], compact)
    if cap == "infeasible":
        return {}
    if cap is not None:
        return harvest(cap)

    # window functional degenerate on the cone and no chamber cuts it off:
    # walk deeper until two consecutive depths admit the same spectrum
    cap = inner(walk, lowest) + 4 * max(inner(walk, g) for g in dirs)
    prev = None
    for _ in range(_MAX_DEEPEN_ROUNDS):
        cur = harvest(cap)
        if prev is not None and cur == prev:
            return cur
        prev = cur
        cap *= 2
    raise BranchingError(
        "spectrum did not stabilize: window functional is degenerate on the "
        "noncompact cone and deepening found new types every round"
    )


def h0_parameter(entry: SymmetricPairEntry, nu: Weight, psi=None) -> HCParameter:
    """Harish-Chandra parameter of the h0 discrete series whose lowest
    L-type has parameter nu: subtract rho_n of the induced h0 system."""
    if psi is None:
        if len(entry.members) != 1:
            raise InvalidParameter(
                f"{entry.pair_name} has several chambers: pass psi"
            )
        member = entry.members[0]
    else:
        member = entry.member_for(psi)
    psi_h0 = _induced_h0(entry, member.psi)
    eta = nu - psi_h0.rho_n
    if not is_dominant(eta, psi_h0, strict=True):
        raise InvalidParameter(
            f"{nu!r} - rho_n = {eta!r} is singular or non-dominant for h0"
        )
    return HCParameter(entry=entry, weight=eta, psi=psi_h0)


def _induced_h0(entry: SymmetricPairEntry, psi: PositiveSystem) -> PositiveSystem:
    if not entry.equal_rank:
        return entry.fold.h0_psis[psi.name]
    pos = tuple(
        entry.h0_system._by_vector[r.vector.coords]
        for r in psi.positives
        if entry.h0_system.contains_vector(r.vector)
    )
    return PositiveSystem(entry.h0_system, pos, name=f"Psi_H0[{psi.name}]")


# ---------------------------------------------------------------------------
# route one: duality through (L, H0)


def _map_ordered(jobs, worker, threads):
    """Apply worker over jobs, optionally on a thread pool, preserving
    order.  Results are reduced in job order, so the outcome is identical
    for any thread count."""
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, jobs))
    return [worker(j) for j in jobs]


def duality_branch(
    entry: SymmetricPairEntry,
    lam,
    window=None,
    *,
    verify: bool = True,
    threads: int = None,
) -> BranchingResult:
    """Spectrum of the restriction to H computed through compact branching
    and Blattner's formula on H0.

    ``window`` is the relative depth: keys are kept while
    inner(rho_H, mu - mu_min) stays within it, mu_min being the lowest key.
    Multiplicities are sums of products of nonnegative counts — no
    cancellation happens on this route.
    """
    lam = _as_weight(lam)
    rel = DEFAULT_WINDOW_BOUND if window is None else Rat(window)
    ctx = _context(entry, lam)
    cb = _compact_branch_at(ctx, ctx.lam2)

    if verify and not ctx.shift2.is_zero():
        # the same branching run at Lambda_2 = lam_2 + (rho_n)_2 must be the
        # translate by q(shift): the central character moves, nothing else
        shifted = _compact_branch_at(ctx, ctx.lam2 + ctx.shift2)
        qs = ctx.q(ctx.shift2)
        if shifted != {nu + qs: m for nu, m in cb.items()}:
            raise ConventionError(
                f"central shift moved the compact branching of "
                f"{ctx.entry.pair_name} beyond a translation"
            )

    q_lam1 = ctx.q(ctx.lam1)
    rho_n_h0 = ctx.psi_h0.rho_n
    rho_n_h = ctx.psi_h.rho_n
    rt = ctx.rho_tilde

    pieces = []
    for nu2 in sorted(cb, key=lambda w: (inner(rt, w), w.coords)):
        xi_j = q_lam1 + nu2
        if not is_dominant(xi_j, ctx.psi_h0, strict=True):
            raise BranchingError(
                f"induced h0 parameter {xi_j!r} is singular or leaves the "
                f"chamber — duality hypotheses violated for {entry.pair_name}"
            )
        pieces.append((xi_j, cb[nu2]))

    lows = [inner(rt, xi_j + rho_n_h0) for xi_j, _ in pieces]
    win = TruncationWindow(rt, min(lows) + rel)

    spectra = _map_ordered(
        pieces,
        lambda piece: blattner_spectrum(ctx.psi_h0, piece[0], win),
        threads,
    )

    entries = {}
    for (xi_j, mult), spec in zip(pieces, spectra):
        for nu in sorted(spec, key=lambda w: (inner(rt, w), w.coords)):
            entries[nu] = entries.get(nu, 0) + mult * spec[nu]

    if verify and entries and pieces:
        # translation invariance of the Blattner numbers under rho_n of h:
        # the shifted parameters are the ones the lowest-L-type picture
        # uses, and the counts must not move
        xi_j = pieces[0][0]
        if is_dominant(xi_j + rho_n_h, ctx.psi_h0, strict=True):
            for nu in list(entries)[:2]:
                a = blattner(ctx.psi_h0, xi_j + rho_n_h, nu + rho_n_h)
                b = blattner(ctx.psi_h0, xi_j, nu)
                if a != b:
                    raise ConventionError(
                        f"Blattner count moved under the rho_n shift at {nu!r}"
                    )

    for nu in entries:
        if not _strictly_dominant(nu, ctx.l_compact):
            raise ConventionError(
                f"spectrum key {nu!r} is not strictly dominant for the "
                f"compact chamber of l"
            )

    if not entries:
        warnings.warn(
            f"window bound {rel} admits no spectrum for {entry.pair_name}",
            SpectrumWindowWarning,
            stacklevel=2,
        )

    keyed = {
        HCParameter(entry=entry, weight=nu, psi=ctx.psi_h): m
        for nu, m in sorted(entries.items(), key=lambda kv: (inner(rt, kv[0]), kv[0].coords))
    }
    return BranchingResult(
        pair=entry,
        lam=ctx.param,
        entries=keyed,
        window=win,
        multiplicity_free=all(m == 1 for m in keyed.values()),
        method="duality",
        sign=1,
        shift=rho_n_h,
    )


# ---------------------------------------------------------------------------
# route two: the alternating partition-function formula


def _dv_candidates(ctx: _RestrictionContext, dist: WeightDistribution) -> list:
    """Strictly l-dominant points whose W(K1)-orbit meets the support."""
    xi = ctx.xi0
    bound = dist.window.bound
    out = set()
    for x in dist.support():
        for mat, _ in ctx.wk1_u:
            y = apply_matrix(mat, x)
            if inner(xi, y) <= bound and _strictly_dominant(y, ctx.l_compact):
                out.add(y)
    return sorted(out, key=lambda w: (inner(ctx.rho_tilde, w), w.coords))


def _dv_value(ctx: _RestrictionContext, dist: WeightDistribution, mu: Weight) -> int:
    # For strictly l-dominant mu every reflected point sits at the same or a
    # lower xi0-level (xi0 is l-dominant), so all reads stay in-window.
    total = 0
    for mat, sgn in ctx.wk1_u:
        total += sgn * dist.coefficient(apply_matrix(mat, mu))
    return total


def _dv_structural_check(ctx: _RestrictionContext) -> None:
    """Per-element form of the tail identity: for sampled (s, t) in
    W(K1)×W(K2), the multiset q(st(Ψ_n)) ∪ Δ(k/l,u) minus the weights of
    p∩h equals s(S0) on u."""
    k1_roots, _ = split_compact_roots(ctx.entry.system, ctx.split)
    k1_psi = _sub_chamber(ctx.entry.system, k1_roots, ctx.psi, name="k1:chk")
    k1_group = tuple(weyl_group(k1_psi)) if k1_psi is not None else (
        (identity_matrix(ctx.entry.system.basis), 1),
    )
    h_nc = [r.vector for r in ctx.psi_h.noncompact_positives]
    phi_hl = WeightMultiset.from_weights(
        ctx.u_basis, h_nc + [-v for v in h_nc]
    )
    pick_s = list(k1_group)[:2] + list(k1_group)[-1:]
    pick_t = list(ctx.wk2)[:2] + list(ctx.wk2)[-1:]
    nc = [r.vector for r in ctx.psi.noncompact_positives]
    for mat_s, _ in pick_s:
        s_u = None
        for m_u, _ in ctx.wk1_u:
            probe = ctx.q(apply_matrix(mat_s, ctx.psi.rho))
            if apply_matrix(m_u, ctx.q(ctx.psi.rho)) == probe:
                s_u = m_u
                break
        if s_u is None:
            raise ConventionError("W(K1) does not transport to u")
        for mat_t, _ in pick_t:
            st = [apply_matrix(mat_s, apply_matrix(mat_t, v)) for v in nc]
            sw = _u_image(ctx.q, ctx.u_basis, st).union(ctx.delta_kl)
            trimmed = sw.difference(sw.intersection(phi_hl))
            expect = ctx.s0.map_weights(lambda w: apply_matrix(s_u, w))
            if trimmed != expect:
                raise ConventionError(
                    f"tail multiset for sampled (s,t) does not factor "
                    f"through s(S0) on {ctx.entry.pair_name}"
                )


def duflo_vargas(
    entry: SymmetricPairEntry,
    lam,
    window=None,
    *,
    threads: int = None,
    checks: bool = True,
) -> BranchingResult:
    """Spectrum of the restriction to H from the alternating Weyl-group sum
    of shifted geometric tails, independent of the duality route.

    The distribution Σ_w ε(w) δ_{q(wλ)} ⋆ (tail) is assembled once with the
    tail multiset of the identity chamber; the other chambers' tails are its
    W(K1)-reflections, so evaluation at a parameter mu reduces to signed
    reads at the W(K1)-orbit of mu.  The global sign is calibrated on the
    lowest key and every multiplicity is then required to be positive.
    """
    lam = _as_weight(lam)
    rel = DEFAULT_WINDOW_BOUND if window is None else Rat(window)
    ctx = _context(entry, lam)
    if checks:
        _dv_structural_check(ctx)

    xi = ctx.xi0
    rt = ctx.rho_tilde
    anchors = _anchor_map(ctx, lam, ctx.wk2)
    half = Rat(1, 2) * ctx.s0.total()
    dirs = sorted({w for w, _ in ctx.s0.items}, key=lambda v: v.coords)

    base = max(inner(xi, a) for a in anchors)
    pad = 4 * max(inner(xi, g) for g in dirs)
    target = base + inner(xi, half) + pad

    prev_kept = None
    bound_abs = None
    kept = {}
    for _ in range(_MAX_DEEPEN_ROUNDS):
        dist = _assemble(ctx.u_basis, anchors, ctx.s0, xi, target)
        cands = _dv_candidates(ctx, dist)
        values = _map_ordered(
            cands, lambda mu: _dv_value(ctx, dist, mu), threads
        )
        found = {mu: v for mu, v in zip(cands, values) if v}
        if not found:
            target += base + inner(xi, half) + pad
            continue
        lo = min(inner(rt, mu) for mu in found)
        bound_abs = lo + rel
        kept = {mu: v for mu, v in found.items() if inner(rt, mu) <= bound_abs}
        # coverage certificate: every key inside the rho-window lies in some
        # anchor cone, and per anchor the xi-deepest dominant point of the
        # windowed cone is a small exact linear program (the dominance
        # chamber bounds the directions the window functional does not)
        needed = target
        unbounded = False
        for a in anchors:
            reach = _cone_reach(
                a + half, dirs, xi, [(rt, bound_abs)], ctx.l_compact
            )
            if reach == "infeasible":
                continue
            if reach is None:
                unbounded = True
                break
            if reach > needed:
                needed = reach
        if not unbounded:
            if dist.window.bound >= needed:
                break
            target = needed
            continue
        # window functional and chamber leave a flat direction: fall back
        # to stability across doublings
        if prev_kept is not None and kept == prev_kept:
            break
        prev_kept = kept
        target *= 2
    else:
        raise BranchingError(
            f"alternating-sum window did not stabilize for {entry.pair_name}"
        )

    first = min(kept, key=lambda mu: (inner(rt, mu), mu.coords))
    sign = 1 if kept[first] > 0 else -1
    entries = {}
    for mu in sorted(kept, key=lambda w: (inner(rt, w), w.coords)):
        m = sign * kept[mu]
        if m < 0:
            raise ConventionError(
                f"mixed multiplicity signs at {mu!r} for {entry.pair_name}: "
                f"sign calibration impossible"
            )
        entries[mu] = m

    keyed = {
        HCParameter(entry=entry, weight=mu, psi=ctx.psi_h): m
        for mu, m in entries.items()
    }
    return BranchingResult(
        pair=entry,
        lam=ctx.param,
        entries=keyed,
        window=TruncationWindow(rt, bound_abs),
        multiplicity_free=all(m == 1 for m in keyed.values()),
        method="duflo_vargas",
        sign=sign,
        shift=ctx.psi_h.rho_n,
    )


# ---------------------------------------------------------------------------
# predicates and constructors


def multiplicity_free(result) -> bool:
    """True when every multiplicity inside the window equals one.  The
    verdict is window-relative by nature."""
    entries = result.entries if isinstance(result, BranchingResult) else result
    return all(m == 1 for m in entries.values())


def construct_k2_trivial_parameter(
    entry: SymmetricPairEntry, psi, heights
) -> HCParameter:
    """Parameter Σ a_j (j-th k1 coordinate) + rho_{K2} whose lowest K-type
    is trivial on K2.

    heights must be strictly decreasing positive integers, one per k1
    coordinate, large enough that the sum stays in the chamber of psi.
    """
    member = entry.member_for(psi)
    split = member.split
    basis = entry.system.basis
    indices = split.t1_indices
    block_centered = False
    if indices is None:
        # su rows project k1 onto a mean-centered coordinate block rather
        # than a slice; recover the block and make sure p1 really is that
        # centering (a rank-one su2 line fails the difference probe)
        rows = [i for i, row in enumerate(split.p1) if any(c != 0 for c in row)]
        if len(rows) >= 2:
            probe = [Rat(0)] * basis.rank
            probe[rows[0]], probe[rows[1]] = Rat(1), Rat(-1)
            diff = Weight(basis, tuple(probe))
            total = Weight(
                basis, tuple(Rat(1) if i in rows else Rat(0) for i in range(basis.rank))
            )
            if (
                apply_matrix(split.p1, diff) == diff
                and apply_matrix(split.p1, total).is_zero()
            ):
                indices = tuple(rows)
                block_centered = True
    if indices is None:
        raise InvalidParameter(
            f"the k1 factor of {entry.pair_name} ({split.k1_name}) does not "
            f"sit on a coordinate block"
        )
    heights = [Rat(h) for h in heights]
    if len(heights) != len(indices):
        raise InvalidParameter(f"need {len(indices)} heights, got {len(heights)}")
    if any(a <= b for a, b in zip(heights, heights[1:])):
        raise InvalidParameter("heights must be strictly decreasing and positive")
    if not block_centered and any(h <= 0 for h in heights):
        # 2eps_i (resp. eps_i) positivity; the centered su block has no such
        # wall, its heights only need to straddle the k2 band
        raise InvalidParameter("heights must be strictly decreasing and positive")

    k1_roots, k2_roots = split_compact_roots(entry.system, split)
    k2_psi = _sub_chamber(entry.system, k2_roots, member.psi, name="k2")
    coords = [Rat(0)] * basis.rank
    for idx, h in zip(indices, heights):
        coords[idx] = h
    lam = Weight(basis, tuple(coords))
    if k2_psi is not None:
        lam = lam + k2_psi.rho

    try:
        param = parameter(entry, lam)
    except InvalidParameter as exc:
        raise InvalidParameter(
            f"heights {[str(h) for h in heights]} are insufficient for "
            f"{entry.pair_name}: {exc}"
        ) from None
    if not param.psi.same_positives(member.psi):
        raise InvalidParameter(
            f"heights {[str(h) for h in heights]} land in a different "
            f"chamber of {entry.pair_name}"
        )

    # the K2 half of the lowest K-type datum must be the shifted rho of k2
    # up to a central character: trivial on the semisimple part of K2
    hc = lam + param.psi.rho_n
    lam2 = apply_matrix(split.p2, hc)
    expect = apply_matrix(split.p2, param.psi.rho_n)
    if k2_psi is not None:
        expect = expect + k2_psi.rho
    offset = lam2 - expect
    if any(inner(offset, r.vector) != 0 for r in k2_roots):
        raise ConventionError(
            f"lowest K-type of {lam!r} is not K2-trivial: {lam2!r} != {expect!r}"
        )
    return param
