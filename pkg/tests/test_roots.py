from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchkit.roots import (
    ColoredRoot,
    NotRegular,
    PositiveSystem,
    RootSystem,
    WeylCeilingExceeded,
    WeylGroup,
    apply_matrix,
    chamber_system,
    is_borel_de_siebenthal,
    is_dominant,
    reflect_weight,
    rho_vectors,
    to_dominant,
    w_u_subgroup,
    weyl_elements,
    weyl_group,
)
from branchkit.weights import Basis, Weight, inner


from functools import lru_cache


def sp1d_basis(d):
    return Basis(eps_count=d, delta_count=1, label=f"sp(1,{d})")


@lru_cache(maxsize=None)
def sp1d_system(d):
    """sp(1,d): compact block sp(1)+sp(d), noncompact roots delta +- eps_i."""
    basis = sp1d_basis(d)
    eps = [basis.eps(i) for i in range(1, d + 1)]
    delta = basis.delta(1)
    roots = [ColoredRoot(2 * delta, True)]
    roots += [ColoredRoot(2 * e, True) for e in eps]
    for i in range(d):
        for j in range(i + 1, d):
            roots.append(ColoredRoot(eps[i] - eps[j], True))
            roots.append(ColoredRoot(eps[i] + eps[j], True))
    for e in eps:
        roots.append(ColoredRoot(delta - e, False))
        roots.append(ColoredRoot(delta + e, False))
    roots += [-r for r in roots]
    return RootSystem(basis, frozenset(roots), name=f"sp(1,{d})")


@lru_cache(maxsize=None)
def sp1d_quaternionic(d):
    # lambda_n = n*delta + rho_{Sp(d)} with n = d + 1
    sys = sp1d_system(d)
    basis = sys.basis
    lam = (d + 1) * basis.delta(1) + sum(
        ((d - i + 1) * basis.eps(i) for i in range(1, d + 1)), basis.zero()
    )
    return chamber_system(lam, sys, name="Psi")


def so42_psi_plus():
    """so(4,2) with the lexicographic eps1 > eps2 > delta1 order."""
    basis = Basis(eps_count=2, delta_count=1, label="so(4,2)")
    e1, e2, d1 = basis.eps(1), basis.eps(2), basis.delta(1)
    pos = [
        ColoredRoot(e1 - e2, True),
        ColoredRoot(e1 + e2, True),
        ColoredRoot(e1 - d1, False),
        ColoredRoot(e1 + d1, False),
        ColoredRoot(e2 - d1, False),
        ColoredRoot(e2 + d1, False),
    ]
    sys = RootSystem(basis, frozenset(pos + [-r for r in pos]), name="so(4,2)")
    return PositiveSystem(sys, tuple(pos), name="Psi_+")


def a2_compact():
    basis = Basis(eps_count=3, delta_count=0, label="a2")
    e = [basis.eps(i) for i in range(1, 4)]
    pos = [ColoredRoot(e[0] - e[1], True), ColoredRoot(e[1] - e[2], True),
           ColoredRoot(e[0] - e[2], True)]
    sys = RootSystem(basis, frozenset(pos + [-r for r in pos]), name="a2")
    return PositiveSystem(sys, tuple(pos), name="Delta")


def c2_compact():
    basis = Basis(eps_count=2, delta_count=0, label="sp(2)")
    e1, e2 = basis.eps(1), basis.eps(2)
    pos = [ColoredRoot(2 * e1, True), ColoredRoot(2 * e2, True),
           ColoredRoot(e1 - e2, True), ColoredRoot(e1 + e2, True)]
    sys = RootSystem(basis, frozenset(pos + [-r for r in pos]), name="sp(2)")
    return PositiveSystem(sys, tuple(pos), name="Delta")


def test_construction_rejects_broken_negation():
    basis = Basis(eps_count=2, delta_count=0, label="x")
    with pytest.raises(ValueError):
        RootSystem(basis, frozenset([ColoredRoot(basis.eps(1), True)]))


def test_construction_rejects_color_flip():
    basis = Basis(eps_count=2, delta_count=0, label="x")
    r = basis.eps(1) - basis.eps(2)
    with pytest.raises(ValueError):
        RootSystem(
            basis, frozenset([ColoredRoot(r, True), ColoredRoot(-r, False)])
        )


def test_construction_rejects_non_root_system():
    basis = Basis(eps_count=2, delta_count=0, label="x")
    # {+-e1, +-(e1 - e2)} is not reflection-closed
    r1, r2 = basis.eps(1), basis.eps(1) - basis.eps(2)
    roots = [ColoredRoot(r1, True), ColoredRoot(r2, True)]
    with pytest.raises(ValueError):
        RootSystem(basis, frozenset(roots + [-r for r in roots]))


def test_positive_system_validation():
    psi = c2_compact()
    sys = psi.system
    with pytest.raises(ValueError):
        PositiveSystem(sys, psi.positives[:-1])  # not exhaustive
    with pytest.raises(ValueError):
        PositiveSystem(sys, psi.positives + (-psi.positives[0],))
    # flipping a non-simple root breaks additive closure
    top = (sys.basis.eps(1) + sys.basis.eps(2)).coords
    flipped = tuple(-r if r.vector.coords == top else r for r in psi.positives)
    with pytest.raises(ValueError):
        PositiveSystem(sys, flipped)
    # flipping a simple root gives the adjacent chamber, which is fine
    wall = (2 * sys.basis.eps(2)).coords
    PositiveSystem(sys, tuple(-r if r.vector.coords == wall else r
                              for r in psi.positives))
    # so is the opposite chamber
    PositiveSystem(sys, tuple(-r for r in psi.positives))


def test_quaternionic_sp12_structure():
    psi = sp1d_quaternionic(2)
    basis = psi.system.basis
    rho, rho_c, rho_n = rho_vectors(psi)
    assert rho_n == 2 * basis.delta(1)
    assert rho == basis.weight([2, 1, 3])
    assert rho == rho_c + rho_n
    simple_vecs = {s.vector.coords for s in psi.simple_roots}
    d1, e1, e2 = basis.delta(1), basis.eps(1), basis.eps(2)
    assert simple_vecs == {
        (d1 - e1).coords, (e1 - e2).coords, (2 * e2).coords
    }
    assert is_borel_de_siebenthal(psi)


def test_rho_n_sp13():
    psi = sp1d_quaternionic(3)
    assert psi.rho_n == 3 * psi.system.basis.delta(1)


def test_chamber_of_rho_is_same_system():
    psi = sp1d_quaternionic(2)
    again = chamber_system(psi.rho, psi.system)
    assert again.same_positives(psi)


def test_chamber_rejects_singular():
    psi = c2_compact()
    with pytest.raises(NotRegular):
        chamber_system(psi.system.basis.weight([1, 1]), psi.system)


def test_dominance():
    psi = sp1d_quaternionic(2)
    assert is_dominant(psi.rho, psi, strict=True)
    zero = psi.system.basis.zero()
    assert is_dominant(zero, psi)
    assert not is_dominant(zero, psi, strict=True)
    assert not is_dominant(-psi.rho, psi)


def test_psi_plus_is_not_borel_de_siebenthal():
    # two noncompact simple roots eps2 -+ delta1
    psi = so42_psi_plus()
    noncompact_simples = [s for s in psi.simple_roots if not s.compact]
    assert len(noncompact_simples) == 2
    assert not is_borel_de_siebenthal(psi)


def test_holomorphic_type_system_is_borel_de_siebenthal():
    basis = Basis(eps_count=1, delta_count=1, label="su(1,1)")
    r = basis.eps(1) - basis.delta(1)
    sys = RootSystem(
        basis, frozenset([ColoredRoot(r, False), ColoredRoot(-r, False)])
    )
    psi = PositiveSystem(sys, (ColoredRoot(r, False),))
    assert is_borel_de_siebenthal(psi)


def test_expansions_a2():
    psi = a2_compact()
    e = psi.system.basis
    top = psi.expansions[(e.eps(1) - e.eps(3)).coords]
    assert sorted(top) == [1, 1]
    assert psi.component_highest_expansion(psi.simple_components[0]) == top


def test_highest_root_coefficient_quaternionic():
    psi = sp1d_quaternionic(3)
    simples = psi.simple_roots
    (comp,) = psi.simple_components
    top = psi.component_highest_expansion(comp)
    (nc_idx,) = [i for i in comp if not simples[i].compact]
    assert top[nc_idx] == 2


def test_weyl_orders():
    assert weyl_group(a2_compact()).order == 6
    assert weyl_group(c2_compact()).order == 8
    psi = sp1d_quaternionic(3)
    basis = psi.system.basis
    # full W(Sp(3) x Sp(1)) from the compact system
    gens = [basis.eps(1) - basis.eps(2), basis.eps(2) - basis.eps(3),
            2 * basis.eps(3), 2 * basis.delta(1)]
    assert WeylGroup(basis, gens).order == 48 * 2


def test_w_u_subgroup_sp12():
    psi = sp1d_quaternionic(2)
    wu = w_u_subgroup(psi)
    assert wu.order == 8  # W(Sp(2)): the noncompact simple is dropped


def test_weyl_sign_multiplicative():
    W = weyl_group(c2_compact())
    table = {el: sign for el, sign in weyl_elements(W)}
    els = list(table)
    from branchkit.roots import compose

    for a in els:
        for b in els:
            assert table[compose(a, b)] == table[a] * table[b]


def test_weyl_elements_permute_roots():
    psi = sp1d_quaternionic(2)
    W = weyl_group(psi)
    vectors = {r.vector.coords for r in psi.system.roots}
    for el, _ in weyl_elements(W):
        image = {apply_matrix(el, r.vector).coords for r in psi.system.roots}
        assert image == vectors


def test_weyl_identity_first_and_deterministic():
    W1 = weyl_group(c2_compact())
    W2 = weyl_group(c2_compact())
    assert [s for _, s in W1] == [s for _, s in W2]
    first, sign = next(iter(W1))
    assert sign == 1
    assert apply_matrix(first, W1.basis.weight([3, 5])) == W1.basis.weight([3, 5])


def test_weyl_ceiling():
    with pytest.raises(WeylCeilingExceeded):
        weyl_group(c2_compact(), ceiling=3)


def test_w_u_fixes_rho_n_on_borel_de_siebenthal():
    psi = sp1d_quaternionic(3)
    assert is_borel_de_siebenthal(psi)
    for el, _ in w_u_subgroup(psi):
        assert apply_matrix(el, psi.rho_n) == psi.rho_n


small_coords = st.lists(
    st.integers(min_value=-6, max_value=6), min_size=3, max_size=3
)


@lru_cache(maxsize=None)
def sp12_compact_system():
    """The L = Sp(1) x Sp(2) sub-root-system of sp(1,2), positives from Psi."""
    psi = sp1d_quaternionic(2)
    compact = frozenset(r for r in psi.system.roots if r.compact)
    sys = RootSystem(psi.system.basis, compact, name="sp(1)+sp(2)")
    return PositiveSystem(sys, tuple(psi.compact_positives), name="Delta")


@settings(max_examples=60, deadline=None)
@given(small_coords)
def test_to_dominant_matches_orbit_search(coords):
    compact = sp12_compact_system()
    basis = compact.system.basis
    v = basis.weight(coords)
    W = weyl_group(compact)
    dom, sign = to_dominant(compact, v)
    orbit = [(apply_matrix(el, v), s) for el, s in W]
    strict = [(u, s) for u, s in orbit if is_dominant(u, compact, strict=True)]
    if sign == 0:
        assert not strict
    else:
        images = {u.coords for u, _ in strict}
        assert images == {dom.coords}
        signs = {s for u, s in strict if u.coords == dom.coords}
        assert signs == {sign}


@settings(max_examples=40, deadline=None)
@given(small_coords, st.integers(min_value=0, max_value=15))
def test_chamber_equivariance(coords, idx):
    psi = sp1d_quaternionic(2)
    basis = psi.system.basis
    v = basis.weight(coords)
    roots = [r.vector for r in psi.system.roots]
    if not all(inner(v, r) != 0 for r in roots):
        return
    W = weyl_group(psi)
    el = list(W)[idx % W.order][0]
    left = chamber_system(apply_matrix(el, v), psi.system)
    right = {apply_matrix(el, r.vector).coords
             for r in chamber_system(v, psi.system).positives}
    assert {r.vector.coords for r in left.positives} == right


def test_reflect_weight():
    basis = Basis(eps_count=2, delta_count=0, label="x")
    e1, e2 = basis.eps(1), basis.eps(2)
    assert reflect_weight(e1, e1 - e2) == e2
    assert reflect_weight(e1 + e2, e1 - e2) == e1 + e2
