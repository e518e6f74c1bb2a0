"""Catalog of symmetric pairs (g, h) with their restriction data.

Entries are not stored one by one: each table row is a parameterized family
(su/so/sp block splits, the f4(4) pair in both orientations, e6(2) over
f4(4)) and lookup instantiates the row for concrete parameters.  An entry
carries the colored root system of g, the admissible chambers, the root
sets of h and of the associated subalgebra h0, the restriction map onto
i*u, the analytic integrality lattice, and the k1-k2 split of each chamber.

Pairs that the tables list without enough data to compute with (triality
forms of so(4,4), hermitian u(p,q)-type subalgebras, the exceptional rows
beyond e6(2)/f4(4), rank-dropping orthogonal splits other than
so(2m,2)/so(2m,1)) resolve to a typed UnimplementedPair error carrying the
reason, so callers can tell them apart from pairs that are not symmetric
pairs at all.

A plain-text catalog file (format "branchkit-catalog v1") can pin
expectations for concrete pairs or disable them; point BRANCHKIT_CATALOG at
such a file to have every lookup checked against it.
"""

from __future__ import annotations

import os
import re
import shlex
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import families as fam
from .roots import (
    NotRegular,
    PositiveSystem,
    RootSystem,
    chamber_system,
    identity_matrix,
    is_borel_de_siebenthal,
)
from .weights import Basis, BasisMismatch, IntegralityLattice, Weight, inner

__all__ = [
    "CatalogError",
    "UnknownPair",
    "UnimplementedPair",
    "InvalidParameter",
    "RestrictionMap",
    "CartanSplit",
    "FamilyMember",
    "SymmetricPairEntry",
    "HCParameter",
    "lookup",
    "admissible",
    "parameter",
    "induced_systems",
    "k1_split",
    "split_compact_roots",
    "analytic_lattice",
    "entry_record",
    "family_templates",
    "load_catalog_file",
]


class CatalogError(Exception):
    pass


class UnknownPair(CatalogError):
    """The pair is not one of the tabulated symmetric pairs."""


class UnimplementedPair(CatalogError):
    """Tabulated, but the tables carry no computable restriction data."""

    def __init__(self, pair: str, reason: str):
        super().__init__(f"{pair}: {reason}")
        self.pair = pair
        self.reason = reason


class InvalidParameter(CatalogError):
    """Weight fails the Harish-Chandra parameter conditions for the entry."""


# ---------------------------------------------------------------------------
# restriction maps and k1 splits


@dataclass(frozen=True)
class RestrictionMap:
    """Linear map it* -> iu*; row i of the matrix holds the target
    coordinates of the i-th source coordinate vector."""

    source_basis: Basis
    target_basis: Basis
    matrix: tuple

    def apply(self, w: Weight) -> Weight:
        if w.basis != self.source_basis:
            raise BasisMismatch(f"{w.basis} vs {self.source_basis}")
        out = [Fraction(0)] * self.target_basis.rank
        for i, c in enumerate(w.coords):
            if c == 0:
                continue
            for k, entry in enumerate(self.matrix[i]):
                if entry:
                    out[k] += c * entry
        return Weight(self.target_basis, tuple(out))

    @property
    def is_identity(self) -> bool:
        return (
            self.source_basis == self.target_basis
            and self.matrix == identity_matrix(self.source_basis)
        )


def identity_restriction(basis: Basis) -> RestrictionMap:
    return RestrictionMap(basis, basis, identity_matrix(basis))


@dataclass(frozen=True)
class CartanSplit:
    """Orthogonal projections onto it_1* (k1 side) and it_2*.  The index
    tuples are set only when a projection is a literal coordinate slice."""

    k1_name: str
    p1: tuple
    p2: tuple
    t1_indices: tuple = None
    t2_indices: tuple = None


def _split_from_p1(basis: Basis, k1_name: str, p1, t1_indices=None, t2_indices=None):
    p2 = fam.matrix_difference(identity_matrix(basis), p1)
    return CartanSplit(k1_name, tuple(p1), tuple(p2), t1_indices, t2_indices)


def _slice_split(basis: Basis, k1_name: str, indices) -> CartanSplit:
    indices = tuple(indices)
    rest = tuple(i for i in range(basis.rank) if i not in indices)
    return _split_from_p1(
        basis, k1_name, fam.slice_projection(basis, indices), indices, rest
    )


def split_compact_roots(system: RootSystem, split: CartanSplit):
    """Compact roots lying in k1 resp. k2: a root belongs to k1 iff p2 kills
    it.  Every compact root must land wholly on one side."""
    from .roots import apply_matrix

    k1, k2 = [], []
    for r in system.compact_roots:
        img1 = apply_matrix(split.p1, r.vector)
        img2 = apply_matrix(split.p2, r.vector)
        if img2.is_zero():
            k1.append(r)
        elif img1.is_zero():
            k2.append(r)
        else:
            raise CatalogError(
                f"compact root {r.vector!r} is split by the k1/k2 projections"
            )
    return k1, k2


# ---------------------------------------------------------------------------
# entries


@dataclass(frozen=True)
class FamilyMember:
    psi: PositiveSystem
    bds: bool
    split: CartanSplit


@dataclass(frozen=True, eq=False)
class SymmetricPairEntry:
    g_name: str
    h_name: str
    h0_name: str
    system: RootSystem
    members: tuple
    q_u: RestrictionMap
    equal_rank: bool
    lattice: IntegralityLattice
    k1_summary: str
    h_system: RootSystem = None  # equal rank only
    h0_system: RootSystem = None
    fold: fam.FoldData = None  # set when u is a proper subspace of t

    @property
    def psi_family(self) -> tuple:
        return tuple(m.psi for m in self.members)

    @property
    def bds_flags(self) -> tuple:
        return tuple(m.bds for m in self.members)

    @property
    def pair_name(self) -> str:
        return f"{self.g_name}/{self.h_name}"

    def member_for(self, psi) -> FamilyMember:
        if isinstance(psi, str):
            for m in self.members:
                if m.psi.name == psi:
                    return m
            raise CatalogError(f"{self.pair_name} has no chamber named {psi}")
        for m in self.members:
            if m.psi.same_positives(psi):
                return m
        raise CatalogError(f"chamber {psi.name or psi!r} is not in the family")


@dataclass(frozen=True)
class HCParameter:
    """A regular integral weight together with the admissible chamber it is
    dominant for."""

    entry: SymmetricPairEntry
    weight: Weight
    psi: PositiveSystem


def analytic_lattice(psi: PositiveSystem) -> IntegralityLattice:
    """Integrality against the simple coroots, offset by rho: exactly the
    weights lam with lam + rho analytically integral for the linear group
    of simply connected type."""
    rows = []
    for s in psi.simple_roots:
        a = s.vector
        rows.append((Fraction(2) / inner(a, a)) * a)
    return IntegralityLattice(psi.system.basis, tuple(rows), psi.rho)


def _member(psi: PositiveSystem, split: CartanSplit) -> FamilyMember:
    return FamilyMember(psi=psi, bds=is_borel_de_siebenthal(psi), split=split)


def _su_split(sys: RootSystem, kind: str, holomorphic: bool) -> CartanSplit:
    basis = sys.basis
    m, n = basis.eps_count, basis.delta_count
    if holomorphic:
        return _split_from_p1(
            basis, "z_k", fam.projection_matrix(basis, [fam.su_zeta(sys)])
        )
    if kind == "eps":
        return _split_from_p1(
            basis, f"su({m})", fam.mean_centering_projection(basis, range(m))
        )
    return _split_from_p1(
        basis, f"su({n})", fam.mean_centering_projection(basis, range(m, m + n))
    )


def _so_split(sys: RootSystem, plus: bool) -> CartanSplit:
    basis = sys.basis
    m = basis.eps_count
    if m >= 3:
        return _slice_split(basis, f"so({2 * m})", range(m))
    if m == 2:
        sign = 1 if plus else -1
        direction = basis.eps(1) + sign * basis.eps(2)
        name = "su2(eps1+eps2)" if plus else "su2(eps1-eps2)"
        return _split_from_p1(basis, name, fam.projection_matrix(basis, [direction]))
    return _slice_split(basis, "z_k", [0])


def _su_factor(a: int, b: int) -> str:
    if a and b:
        return f"su({a},{b})"
    c = a or b
    return f"su({c})" if c > 1 else ""


def _join_factors(parts) -> str:
    return "+".join(p for p in parts if p)


def _entry_su(m: int, n: int, blocks) -> SymmetricPairEntry:
    """blocks = ((k, l), (m-k, n-l)) with the first block noncompact.  The
    delta-side split (k = m) carries the full Psi_a chamber family, the
    eps-side split (l = n) the Psi_t family; a genuine two-block split only
    admits the two holomorphic chambers."""
    (k, l), (k2, l2) = blocks
    sys = su_cached(m, n)
    basis = sys.basis
    eps_mask = tuple(i < k for i in range(m))
    delta_mask = tuple(r < l for r in range(n))
    h_roots = fam.su_block_roots(sys, eps_mask, delta_mask)
    h0_roots = fam.su_block_roots(
        sys, eps_mask, tuple(not b for b in delta_mask)
    )
    if k == m:
        members = [
            _member(fam.su_psi_a(sys, a), _su_split(sys, "eps", a in (0, m)))
            for a in range(m, -1, -1)
        ]
        h_label = _join_factors(
            [_su_factor(m, l), _su_factor(0, n - l), "u(1)"]
        )
        h0_label = _join_factors(
            [_su_factor(m, n - l), _su_factor(0, l), "u(1)"]
        )
    elif l == n:
        members = [
            _member(fam.su_psi_tilde(sys, b), _su_split(sys, "delta", b in (0, n)))
            for b in range(n, -1, -1)
        ]
        h_label = _join_factors(
            [_su_factor(k, n), _su_factor(m - k, 0), "u(1)"]
        )
        h0_label = _join_factors(
            [_su_factor(m - k, n), _su_factor(k, 0), "u(1)"]
        )
    else:
        members = [
            _member(fam.su_psi_a(sys, m), _su_split(sys, "eps", True)),
            _member(fam.su_psi_a(sys, 0), _su_split(sys, "eps", True)),
        ]
        h_label = _join_factors([_su_factor(k, l), _su_factor(k2, l2), "u(1)"])
        h0_label = _join_factors([_su_factor(k, l2), _su_factor(k2, l), "u(1)"])
    members = tuple(members)
    names = [mm.split.k1_name for mm in members]
    if len(set(names)) == 1:
        summary = names[0]
    else:
        summary = next(nm for nm in names if nm != "z_k") + "|z_k"
    return SymmetricPairEntry(
        g_name=f"su({m},{n})",
        h_name=h_label,
        h0_name=h0_label,
        system=sys,
        members=members,
        q_u=identity_restriction(basis),
        equal_rank=True,
        lattice=analytic_lattice(members[0].psi),
        k1_summary=summary,
        h_system=RootSystem(basis, h_roots, name=h_label),
        h0_system=RootSystem(basis, h0_roots, name=h0_label),
    )


def _so_names(m: int, q: int, c: int):
    h = f"so({2 * m},{c})" + (f"+so({q - c})" if q - c >= 2 else "")
    h0 = f"so({2 * m},{q - c})" + (f"+so({c})" if c >= 2 else "")
    return h, h0


def _entry_so(m: int, n: int, odd: bool, c: int) -> SymmetricPairEntry:
    sys = so_cached(m, n, odd)
    basis = sys.basis
    q = 2 * n + (1 if odd else 0)
    h_name, h0_name = _so_names(m, q, c)
    h_roots = fam.so_split_roots(sys, c, attach_low=True)
    h0_roots = fam.so_split_roots(sys, q - c, attach_low=False)
    members = (
        _member(fam.so_psi(sys, True), _so_split(sys, True)),
        _member(fam.so_psi(sys, False), _so_split(sys, False)),
    )
    if members[0].psi.same_positives(members[1].psi):
        members = members[:1]
    return SymmetricPairEntry(
        g_name=sys.name,
        h_name=h_name,
        h0_name=h0_name,
        system=sys,
        members=members,
        q_u=identity_restriction(basis),
        equal_rank=True,
        lattice=analytic_lattice(members[0].psi),
        k1_summary=members[0].split.k1_name,
        h_system=RootSystem(basis, h_roots, name=h_name),
        h0_system=RootSystem(basis, h0_roots, name=h0_name),
    )


def _entry_so_fold(m: int) -> SymmetricPairEntry:
    """so(2m,2) over so(2m,1): the one rank-dropping orthogonal row with
    tabulated restriction data (drop the delta coordinate); h0 = h."""
    if m < 2:
        raise UnknownPair(f"so({2 * m},2)/so({2 * m},1): base group is not simple")
    sys = so_cached(m, 1, False)
    basis = sys.basis
    fold = fam.so_rank_one_fold(sys)
    members = (
        _member(fam.so_psi(sys, True), _so_split(sys, True)),
        _member(fam.so_psi(sys, False), _so_split(sys, False)),
    )
    name = f"so({2 * m},1)"
    return SymmetricPairEntry(
        g_name=sys.name,
        h_name=name,
        h0_name=name,
        system=sys,
        members=members,
        q_u=RestrictionMap(basis, fold.u_basis, fold.matrix),
        equal_rank=False,
        lattice=analytic_lattice(members[0].psi),
        k1_summary=members[0].split.k1_name,
        fold=fold,
    )


def _entry_sp(m: int, n: int, k: int, split_eps: bool = True) -> SymmetricPairEntry:
    sys = sp_cached(m, n)
    basis = sys.basis
    if split_eps:
        h_name = _join_factors(
            [f"sp({m},{k})", f"sp({n - k})" if n - k else ""]
        )
        h0_name = _join_factors([f"sp({m},{n - k})", f"sp({k})" if k else ""])
        psi = fam.sp_psi(sys, delta_first=True)
        split = _slice_split(basis, f"sp({m})", range(n, n + m))
        h_roots = fam.sp_split_roots(sys, k, attach_low=True, split_eps=True)
        h0_roots = fam.sp_split_roots(sys, n - k, attach_low=False, split_eps=True)
    else:
        h_name = _join_factors(
            [f"sp({k},{n})", f"sp({m - k})" if m - k else ""]
        )
        h0_name = _join_factors([f"sp({m - k},{n})", f"sp({k})" if k else ""])
        psi = fam.sp_psi(sys, delta_first=False)
        split = _slice_split(basis, f"sp({n})", range(n))
        h_roots = fam.sp_split_roots(sys, k, attach_low=True, split_eps=False)
        h0_roots = fam.sp_split_roots(sys, m - k, attach_low=False, split_eps=False)
    members = (_member(psi, split),)
    return SymmetricPairEntry(
        g_name=f"sp({m},{n})",
        h_name=h_name,
        h0_name=h0_name,
        system=sys,
        members=members,
        q_u=identity_restriction(basis),
        equal_rank=True,
        lattice=analytic_lattice(psi),
        k1_summary=split.k1_name,
        h_system=RootSystem(basis, h_roots, name=h_name),
        h0_system=RootSystem(basis, h0_roots, name=h0_name),
    )


def _entry_f4(h_first: bool) -> SymmetricPairEntry:
    sys = f4_cached()
    basis = sys.basis
    psi = fam.f4_psi_bs(sys)
    split = _split_from_p1(
        basis,
        "su2(alpha_max)",
        fam.projection_matrix(basis, [fam.f4_alpha_max(sys)]),
    )
    members = (_member(psi, split),)
    sp_side = RootSystem(basis, fam.f4_h_roots(sys), name="sp(1,2)+su(2)")
    so_side = RootSystem(basis, fam.f4_h0_roots(sys), name="so(5,4)")
    h_system, h0_system = (sp_side, so_side) if h_first else (so_side, sp_side)
    return SymmetricPairEntry(
        g_name="f4(4)",
        h_name=h_system.name,
        h0_name=h0_system.name,
        system=sys,
        members=members,
        q_u=identity_restriction(basis),
        equal_rank=True,
        lattice=analytic_lattice(psi),
        k1_summary="su2(alpha_max)",
        h_system=h_system,
        h0_system=h0_system,
    )


def _entry_e6(h_first: bool) -> SymmetricPairEntry:
    sys = e6_cached()
    basis = sys.basis
    psi = fam.e6_psi_bs(sys)
    split = _split_from_p1(
        basis,
        "su2(alpha_max)",
        fam.projection_matrix(basis, [fam.e6_alpha_max(sys)]),
    )
    members = (_member(psi, split),)
    fold = fam.e6_fold(sys)
    if h_first:
        h_name, h0_name = "f4(4)", "sp(3,1)"
        h_psis, h0_psis = fold.h_psis, fold.h0_psis
    else:
        h_name, h0_name = "sp(3,1)", "f4(4)"
        h_psis, h0_psis = fold.h0_psis, fold.h_psis
    oriented = fam.FoldData(
        u_basis=fold.u_basis, matrix=fold.matrix, h_psis=h_psis, h0_psis=h0_psis
    )
    return SymmetricPairEntry(
        g_name="e6(2)",
        h_name=h_name,
        h0_name=h0_name,
        system=sys,
        members=members,
        q_u=RestrictionMap(basis, fold.u_basis, fold.matrix),
        equal_rank=False,
        lattice=analytic_lattice(psi),
        k1_summary="su2(alpha_max)",
        fold=oriented,
    )


su_cached = lru_cache(maxsize=None)(fam.su_system)
so_cached = lru_cache(maxsize=None)(fam.so_system)
sp_cached = lru_cache(maxsize=None)(fam.sp_system)
f4_cached = lru_cache(maxsize=None)(fam.f4_system)
e6_cached = lru_cache(maxsize=None)(fam.e6_system)


# ---------------------------------------------------------------------------
# name parsing


_BRACKET = re.compile(r"\[([^]]*)\]")
_FACTOR = re.compile(r"^(su|so|sp|u)\((\d+)(?:,(\d+|r))?\)(?:_(\w+))?$")
_EXCEPTIONAL = re.compile(r"^(f4|e6|e7|e8)\((-?\d+)\)$")


def _normalize(name: str) -> str:
    name = name.replace(" ", "").lower()
    match = _BRACKET.search(name)
    if match:
        head = name[: match.start()]
        for clause in match.group(1).split(","):
            key, _, value = clause.partition("=")
            if not value:
                raise UnknownPair(f"malformed parameter clause in {name!r}")
            head = re.sub(rf"\b{re.escape(key)}\b", value, head)
        tail = name[match.end():]
        name = head + tail
    return name


def _parse_factor(text: str):
    if "*" in text:
        return ("so*", (), None)
    m = _FACTOR.match(text)
    if not m:
        em = _EXCEPTIONAL.match(text)
        if em:
            return (em.group(1), (int(em.group(2)),), None)
        raise UnknownPair(f"cannot parse group name {text!r}")
    kind, a, b, tag = m.group(1), m.group(2), m.group(3), m.group(4)
    if b == "r":
        return ("spR", (int(a),), tag)
    params = (int(a),) if b is None else (int(a), int(b))
    return (kind, params, tag)


def _parse_h(text: str):
    return [_parse_factor(part) for part in text.split("+") if part]


def _su_blocks(m, n, factors, pair):
    """Resolve the h factors of an su pair into two (eps, delta) blocks.
    Factor names are read positionally: su(a,b) occupies a eps and b delta
    coordinates.  A trivial omitted su(1) block is inferred; u(1) centers
    are noise."""
    noncompact = []
    compact = []  # (size, side the block lives on or None)
    for kind, params, tag in factors:
        if kind == "u":
            if params == (1,):
                continue
            if len(params) == 2 and min(params) >= 1:
                raise UnimplementedPair(
                    pair,
                    "hermitian-type subalgebra row: no restriction data tabulated",
                )
            compact.append((max(params), None))
            continue
        if kind == "sp":
            if m == 2 and n % 2 == 0 and tuple(sorted(params)) == (1, n // 2):
                raise UnimplementedPair(
                    pair, "symplectic subalgebra row: no restriction data tabulated"
                )
            raise UnknownPair(f"{pair}: {kind} factor does not fit an su pair")
        if kind in ("so*", "spR"):
            raise UnimplementedPair(
                pair, "hermitian-type subalgebra row: no restriction data tabulated"
            )
        if kind != "su":
            raise UnknownPair(f"{pair}: unexpected factor kind {kind!r}")
        if len(params) == 2 and min(params) >= 1:
            noncompact.append(params)
        else:
            size = params[0] if len(params) == 1 else max(params)
            lives_on = None
            if len(params) == 2:
                lives_on = "eps" if params[1] == 0 else "delta"
            compact.append((size, lives_on))
    if len(noncompact) == 1 and not compact:
        a, b = noncompact[0]
        if a == m and n - b == 1:
            compact.append((1, "delta"))
        elif b == n and m - a == 1:
            compact.append((1, "eps"))
    if len(noncompact) + len(compact) != 2:
        raise UnknownPair(f"{pair}: h must consist of exactly two su blocks")
    if len(noncompact) == 2:
        (k, l), (k2, l2) = noncompact
        if k + k2 != m or l + l2 != n:
            raise UnknownPair(f"{pair}: block sizes do not sum to ({m},{n})")
        return ((k, l), (k2, l2))
    if not noncompact:
        raise UnknownPair(f"{pair}: h equals the maximal compact subalgebra")
    (a, b) = noncompact[0]
    size, lives_on = compact[0]
    if b + size == n and a == m and lives_on != "eps":
        return ((a, b), (0, size))
    if a + size == m and b == n and lives_on != "delta":
        return ((a, b), (size, 0))
    raise UnknownPair(f"{pair}: block sizes do not sum to ({m},{n})")


def _resolve_su(m, n, factors, pair):
    blocks = _su_blocks(m, n, factors, pair)
    (k, l), (k2, l2) = blocks
    if (k, l) == (m, n) or (k2, l2) == (m, n):
        raise UnknownPair(f"{pair}: h equals g")
    return _entry_su(m, n, blocks)


def _resolve_so(m, n, odd, factors, pair):
    q = 2 * n + (1 if odd else 0)
    noncompact, compact = [], []
    for kind, params, tag in factors:
        if kind == "u":
            if params == (1,) and tag is None:
                compact.append(2)  # u(1) = so(2)
                continue
            raise UnimplementedPair(
                pair,
                "u(p,q)-type subalgebra of an orthogonal group: restriction data "
                "not tabulated (triality forms included)",
            )
        if kind != "so":
            raise UnknownPair(f"{pair}: unexpected factor kind {kind!r}")
        if len(params) == 2 and min(params) >= 1:
            noncompact.append(params)
        else:
            compact.append(params[0] if len(params) == 1 else max(params))
    if len(noncompact) != 1 or len(compact) > 1:
        raise UnknownPair(f"{pair}: h must be so(2m,c) plus one compact factor")
    p, c = noncompact[0]
    if p != 2 * m:
        if c == q and p + sum(compact) == 2 * m:
            if q % 2 == 0:
                raise UnknownPair(
                    f"{pair}: h splits the so({2 * m}) block; write the pair "
                    f"as so({q},{2 * m})/so({q},{p})+so({2 * m - p})"
                )
            raise UnimplementedPair(
                pair,
                "split of the even factor with the odd factor kept whole: "
                "not realized, and no even-first relabeling exists",
            )
        raise UnknownPair(f"{pair}: noncompact factor must keep the so({2 * m}) block")
    if c >= q or c < 1:
        raise UnknownPair(f"{pair}: split {c} outside 1..{q - 1}")
    if compact and compact[0] != q - c:
        raise UnknownPair(f"{pair}: compact factor must be so({q - c})")
    if not compact and q - c >= 2:
        raise UnknownPair(f"{pair}: missing compact factor so({q - c})")
    if not odd and c % 2 == 1:
        if q == 2 and c == 1:
            return _entry_so_fold(m)
        raise UnimplementedPair(
            pair,
            "odd orthogonal factor inside an even group drops rank; restriction "
            "data is tabulated only for so(2m,2)/so(2m,1)",
        )
    return _entry_so(m, n, odd, c)


def _resolve_sp(m, n, factors, pair):
    shaped = []
    for kind, params, tag in factors:
        if kind != "sp":
            raise UnknownPair(f"{pair}: unexpected factor kind {kind!r}")
        shaped.append(params)
    noncompact = [p for p in shaped if len(p) == 2 and min(p) >= 1]
    compact = [p[0] if len(p) == 1 else max(p) for p in shaped if p not in noncompact]
    if len(noncompact) != 1 or len(shaped) > 2:
        raise UnknownPair(f"{pair}: h must be one sp(a,b) plus one compact sp factor")
    a, b = noncompact[0]
    rest = compact[0] if compact else 0
    if a == m and b + rest == n and 1 <= b <= n - 1:
        return _entry_sp(m, n, b, split_eps=True)
    if b == n and a + rest == m and 1 <= a <= m - 1:
        return _entry_sp(m, n, a, split_eps=False)
    raise UnknownPair(f"{pair}: blocks do not form a tabulated sp split")


def _resolve_f4(factors, pair):
    kinds = sorted(k for k, _, _ in factors)
    if kinds == ["so"]:
        p = factors[0][1]
        if tuple(sorted(p)) == (4, 5):
            return _entry_f4(h_first=False)
    if kinds == ["sp", "su"]:
        shapes = {k: p for k, p, _ in factors}
        if tuple(sorted(shapes["sp"])) == (1, 2) and shapes["su"] == (2,):
            return _entry_f4(h_first=True)
    raise UnknownPair(f"{pair}: tabulated subalgebras are sp(1,2)+su(2) and so(5,4)")


def _resolve_e6(factors, pair):
    if len(factors) == 1:
        kind, params, _ = factors[0]
        if kind == "f4" and params == (4,):
            return _entry_e6(h_first=True)
        if kind == "sp" and tuple(sorted(params)) == (1, 3):
            return _entry_e6(h_first=False)
    if factors and {k for k, _, _ in factors} <= {"so", "u"}:
        raise UnimplementedPair(
            pair, "equal-rank exceptional row: restriction data not tabulated"
        )
    raise UnknownPair(f"{pair}: tabulated subalgebras are f4(4) and sp(3,1)")


@lru_cache(maxsize=None)
def _resolve(g_text: str, h_text: str) -> SymmetricPairEntry:
    pair = f"{g_text}/{h_text}"
    g_kind, g_params, _ = _parse_factor(g_text)
    factors = _parse_h(h_text)
    if g_kind in ("e7", "e8"):
        tabulated = {"e7": ((-5,), (-25,)), "e8": ((-24,),)}
        if g_params in tabulated[g_kind]:
            raise UnimplementedPair(
                pair, "exceptional row beyond e6(2): restriction data not tabulated"
            )
        raise UnknownPair(f"{pair}: real form {g_text!r} is not in the tables")
    if g_kind == "e6":
        if g_params == (-14,):
            raise UnimplementedPair(
                pair, "hermitian real form row: restriction data not tabulated"
            )
        if g_params != (2,):
            raise UnknownPair(f"{pair}: real form {g_text!r} is not in the tables")
        return _resolve_e6(factors, pair)
    if g_kind == "f4":
        if g_params != (4,):
            raise UnknownPair(f"{pair}: unknown real form {g_text!r}")
        return _resolve_f4(factors, pair)
    if len(g_params) != 2:
        raise UnknownPair(f"{pair}: cannot parse {g_text!r} as a pair group")
    a, b = g_params
    if g_kind == "su":
        if min(a, b) < 1:
            raise UnknownPair(f"{pair}: {g_text} is compact or abelian")
        return _resolve_su(a, b, factors, pair)
    if g_kind == "sp":
        if min(a, b) < 1:
            raise UnknownPair(f"{pair}: {g_text} is compact")
        return _resolve_sp(a, b, factors, pair)
    if g_kind == "so":
        if a % 2 == 1:
            raise UnknownPair(
                f"{pair}: write orthogonal groups with the even block first"
            )
        m = a // 2
        if m < 1 or b < 1:
            raise UnknownPair(f"{pair}: {g_text} is compact")
        odd = b % 2 == 1
        return _resolve_so(m, b // 2, odd, factors, pair)
    raise UnknownPair(f"{pair}: unknown group kind {g_kind!r}")


def lookup(g_name: str, h_name: str) -> SymmetricPairEntry:
    """Catalog entry for the symmetric pair (g, h).  Raises UnknownPair for
    names outside the tables and UnimplementedPair (with a reason) for table
    rows without computable restriction data."""
    g_text = _normalize(g_name)
    h_text = _normalize(h_name)
    _check_overrides(g_text, h_text)
    entry = _resolve(g_text, h_text)
    _verify_override(entry)
    return entry


# ---------------------------------------------------------------------------
# parameters and induced systems


def admissible(entry: SymmetricPairEntry, lam: Weight):
    """The family chamber lam is dominant for, or None.  lam must be given
    in the dominant position: conjugate parameters are not searched."""
    try:
        psi = chamber_system(lam, entry.system)
    except NotRegular:
        return None
    for m in entry.members:
        if m.psi.same_positives(psi):
            return m.psi
    return None


def parameter(entry: SymmetricPairEntry, lam: Weight) -> HCParameter:
    try:
        psi = chamber_system(lam, entry.system)
    except NotRegular as exc:
        raise InvalidParameter(f"{lam!r} is singular: {exc}") from None
    member = None
    for m in entry.members:
        if m.psi.same_positives(psi):
            member = m.psi
            break
    if member is None:
        raise InvalidParameter(
            f"{lam!r} is dominant for a chamber outside the admissible family "
            f"of {entry.pair_name}"
        )
    if not entry.lattice.contains(lam):
        raise InvalidParameter(f"{lam!r} is not integral for {entry.g_name}")
    return HCParameter(entry=entry, weight=lam, psi=member)


def induced_systems(entry: SymmetricPairEntry, lam: Weight):
    """The positive systems cut out on h and h0 by a parameter: for equal
    rank the intersections with the chamber of lam, otherwise the stored
    folded systems of the matching chamber."""
    psi = admissible(entry, lam)
    if psi is None:
        raise InvalidParameter(f"{lam!r} is not admissible for {entry.pair_name}")
    member_name = psi.name
    if not entry.equal_rank:
        return entry.fold.h_psis[member_name], entry.fold.h0_psis[member_name]
    h_pos = tuple(
        entry.h_system._by_vector[r.vector.coords]
        for r in psi.positives
        if entry.h_system.contains_vector(r.vector)
    )
    h0_pos = tuple(
        entry.h0_system._by_vector[r.vector.coords]
        for r in psi.positives
        if entry.h0_system.contains_vector(r.vector)
    )
    psi_h = PositiveSystem(entry.h_system, h_pos, name=f"Psi_H[{member_name}]")
    psi_h0 = PositiveSystem(entry.h0_system, h0_pos, name=f"Psi_H0[{member_name}]")
    shared_h = {r.vector.coords for r in psi_h.compact_positives if entry.h0_system.contains_vector(r.vector)}
    shared_h0 = {r.vector.coords for r in psi_h0.compact_positives if entry.h_system.contains_vector(r.vector)}
    assert shared_h == shared_h0, "h and h0 disagree on the compact l chamber"
    return psi_h, psi_h0


def k1_split(entry: SymmetricPairEntry, psi) -> CartanSplit:
    """The k1/k2 projection data of a family chamber (by object or name)."""
    return entry.member_for(psi).split


# ---------------------------------------------------------------------------
# text catalog format


_TEMPLATES = (
    "pair: g=su(m,n) h=su(m,k)+su(n-k)+u(1) h0=su(m,n-k)+su(k)+u(1) "
    "psi=Psi_a[0..m] k1=su(m)|z_k equal_rank=true implemented=true",
    "pair: g=su(m,n) h=su(k,n)+su(m-k)+u(1) h0=su(m-k,n)+su(k)+u(1) "
    "psi=Psi_t[0..n] k1=su(n)|z_k equal_rank=true implemented=true",
    "pair: g=su(m,n) h=su(k,l)+su(m-k,n-l)+u(1) h0=su(k,n-l)+su(m-k,l)+u(1) "
    "psi=Psi_a[m],Psi_a[0] k1=z_k equal_rank=true implemented=true",
    "pair: g=so(2m,q) h=so(2m,c)+so(q-c) h0=so(2m,q-c)+so(c) "
    "psi=Psi+,Psi- k1=so(2m)|su2|z_k equal_rank=true implemented=true "
    "# q odd: any c; q even: even c",
    "pair: g=so(2m,2) h=so(2m,1) h0=so(2m,1) psi=Psi+,Psi- k1=so(2m)|su2 "
    "equal_rank=false implemented=true",
    "pair: g=sp(m,n) h=sp(m,k)+sp(n-k) h0=sp(m,n-k)+sp(k) psi=Psi "
    "k1=sp(m) equal_rank=true implemented=true",
    "pair: g=f4(4) h=sp(1,2)+su(2) h0=so(5,4) psi=Psi_BS k1=su2(alpha_max) "
    "equal_rank=true implemented=true",
    "pair: g=e6(2) h=f4(4) h0=sp(3,1) psi=Psi_BS k1=su2(alpha_max) "
    "equal_rank=false implemented=true",
    "pair: g=so(4,4) h=u(2,2)_* implemented=false "
    'reason="triality form: restriction data not tabulated"',
    "pair: g=su(2,2n) h=sp(1,n) implemented=false "
    'reason="no restriction data tabulated"',
    "pair: g=e7(-5)|e8(-24) h=* implemented=false "
    'reason="involution data not tabulated"',
)


def family_templates() -> tuple:
    """The parameterized rows the catalog instantiates, in file format."""
    return _TEMPLATES


def _format_fraction_row(row) -> str:
    return ",".join(str(Fraction(c)) for c in row)


def entry_record(entry: SymmetricPairEntry) -> str:
    """Concrete entry in catalog file format."""
    psi_names = ",".join(m.psi.name for m in entry.members)
    bds = "[" + ",".join(str(b).lower() for b in entry.bds_flags) + "]"
    lines = [
        f"pair: g={entry.g_name} h={entry.h_name} h0={entry.h0_name} "
        f"psi={psi_names} k1={entry.k1_summary} "
        f"equal_rank={str(entry.equal_rank).lower()} bds={bds} implemented=true"
    ]
    if entry.q_u.is_identity:
        lines.append("qu: identity")
    else:
        lines.append(
            f"qu: rows={len(entry.q_u.matrix)}x{entry.q_u.target_basis.rank}"
        )
        for row in entry.q_u.matrix:
            lines.append(f"qu-row: {_format_fraction_row(row)}")
    return "\n".join(lines)


def _parse_record_fields(line: str) -> dict:
    fields = {}
    for token in shlex.split(line[len("pair:"):].strip()):
        if token.startswith("#"):
            break
        key, _, value = token.partition("=")
        if not value:
            raise CatalogError(f"malformed catalog field {token!r}")
        fields[key] = value
    return fields


def load_catalog_file(path: str) -> list:
    """Parse a branchkit-catalog v1 file into a list of record dicts, each
    with the declared fields plus any qu-matrix rows."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    if not lines or lines[0] != "branchkit-catalog v1":
        raise CatalogError(f"{path}: missing 'branchkit-catalog v1' header")
    records = []
    for ln in lines[1:]:
        if not ln or ln.startswith("#"):
            continue
        if ln.startswith("pair:"):
            records.append(_parse_record_fields(ln))
            records[-1]["qu_rows"] = []
        elif ln.startswith("qu:"):
            if not records:
                raise CatalogError(f"{path}: qu block before any pair record")
            records[-1]["qu"] = ln[len("qu:"):].strip()
        elif ln.startswith("qu-row:"):
            row = tuple(
                Fraction(c) for c in ln[len("qu-row:"):].strip().split(",")
            )
            records[-1]["qu_rows"].append(row)
        else:
            raise CatalogError(f"{path}: unrecognized line {ln!r}")
    return records


_override_cache = {}


def _overrides():
    path = os.environ.get("BRANCHKIT_CATALOG")
    if not path:
        return {}
    key = (path, os.path.getmtime(path))
    if key not in _override_cache:
        _override_cache.clear()
        table = {}
        for rec in load_catalog_file(path):
            table[(_normalize(rec["g"]), _normalize(rec["h"]))] = rec
        _override_cache[key] = table
    return _override_cache[key]


def _check_overrides(g_text: str, h_text: str):
    rec = _overrides().get((g_text, h_text))
    if rec and rec.get("implemented", "true") == "false":
        raise UnimplementedPair(
            f"{g_text}/{h_text}",
            rec.get("reason", "disabled by the catalog override file"),
        )


def _verify_override(entry: SymmetricPairEntry):
    rec = _overrides().get((_normalize(entry.g_name), _normalize(entry.h_name)))
    if not rec:
        return
    checks = {
        "h0": entry.h0_name,
        "k1": entry.k1_summary,
        "equal_rank": str(entry.equal_rank).lower(),
        "psi": ",".join(m.psi.name for m in entry.members),
    }
    for key, actual in checks.items():
        if key in rec and _normalize(rec[key]) != _normalize(str(actual)):
            raise CatalogError(
                f"catalog override mismatch for {entry.pair_name}: "
                f"{key}={rec[key]} but computed {actual}"
            )
    if rec.get("qu") == "identity" and not entry.q_u.is_identity:
        raise CatalogError(
            f"catalog override mismatch for {entry.pair_name}: qu is not identity"
        )
    if rec.get("qu_rows"):
        declared = tuple(tuple(row) for row in rec["qu_rows"])
        if declared != tuple(tuple(r) for r in entry.q_u.matrix):
            raise CatalogError(
                f"catalog override mismatch for {entry.pair_name}: qu matrix differs"
            )
