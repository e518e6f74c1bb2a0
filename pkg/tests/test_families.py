from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchkit import families as fam
from branchkit.roots import apply_matrix, is_borel_de_siebenthal
from branchkit.weights import Weight, inner


def vec(basis, *coords):
    return Weight(basis, tuple(Fraction(c) for c in coords))


# ---------------------------------------------------------------------------
# classical root counts and colors


@given(st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=12, deadline=None)
def test_su_root_counts(m, n):
    sys = fam.su_system(m, n)
    assert len(sys.roots) == (m + n) * (m + n - 1)
    assert len(sys.compact_roots) == m * (m - 1) + n * (n - 1)
    assert all(
        not r.compact
        for r in sys.roots
        if any(r.vector.eps_part) and any(r.vector.delta_part)
    )


@given(st.integers(1, 3), st.integers(1, 3), st.booleans())
@settings(max_examples=12, deadline=None)
def test_so_root_counts(m, n, odd):
    sys = fam.so_system(m, n, odd)
    expect = 2 * m * (m - 1) + 2 * n * (n - 1) + 4 * m * n
    if odd:
        expect += 2 * m + 2 * n
    assert len(sys.roots) == expect
    # lone +-eps_i are the only noncompact roots outside +-eps+-delta
    for r in sys.roots:
        nz = [c for c in r.vector.coords if c]
        if len(nz) == 1:
            assert r.compact == any(r.vector.delta_part)


@given(st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=9, deadline=None)
def test_sp_root_counts(m, n):
    sys = fam.sp_system(m, n)
    assert len(sys.roots) == 2 * n * n + 2 * m * m + 4 * m * n
    long_roots = [r for r in sys.roots if inner(r.vector, r.vector) == 4]
    assert len(long_roots) == 2 * (m + n) and all(r.compact for r in long_roots)


def test_su_chambers():
    sys = fam.su_system(2, 3)
    basis = sys.basis
    psi2 = fam.su_psi_a(sys, 2)  # eps block on top: holomorphic
    assert all(
        r.vector.coords[0] + r.vector.coords[1] >= 0
        for r in psi2.noncompact_positives
    )
    assert is_borel_de_siebenthal(psi2)
    psi1 = fam.su_psi_a(sys, 1)
    simple_colors = [sys.color_of(s.vector) for s in psi1.simple_roots]
    assert simple_colors.count(False) == 2  # eps-delta walls at both ends
    assert not is_borel_de_siebenthal(psi1)
    # Psi_t[b] is the mirror family on the delta side
    psit = fam.su_psi_tilde(sys, 1)
    assert psit.name == "Psi_t[1]"
    assert len(psit.positives) == len(psi1.positives)


def test_su_block_roots_and_zeta():
    sys = fam.su_system(2, 3)
    h = fam.su_block_roots(sys, (True, True), (True, False, False))
    # s(u(2,1)+u(2)): 6 + 2 roots
    assert len(h) == 8
    zeta = fam.su_zeta(sys)
    assert zeta.coords == (3, 3, -2, -2, -2)
    assert all(inner(zeta, r.vector) == 0 for r in sys.compact_roots)


def test_so_psi_minus_flips_both_blocks():
    sys = fam.so_system(2, 2, odd=False)
    plus = fam.so_psi(sys, plus=True)
    minus = fam.so_psi(sys, plus=False)

    def flip(v):  # negate the eps_m and delta_n coordinates
        c = list(v.coords)
        c[1], c[3] = -c[1], -c[3]
        return tuple(c)

    assert {flip(r.vector) for r in plus.positives} == {
        r.vector.coords for r in minus.positives
    }
    assert not plus.same_positives(minus)


def test_so_split_roots_counts():
    sys = fam.so_system(2, 1, odd=True)  # so(4,3)
    h = fam.so_split_roots(sys, 2, attach_low=True)  # so(4,2)+so(1)
    h0 = fam.so_split_roots(sys, 1, attach_low=False)  # so(4,1)+so(2)
    assert len(h) == 12 and len(h0) == 8
    shared = {r.vector.coords for r in h} & {r.vector.coords for r in h0}
    assert len(shared) == 4  # the compact so(4) block
    with pytest.raises(ValueError):
        fam.so_split_roots(fam.so_system(2, 2, odd=False), 3)


def test_sp_split_roots_both_sides():
    sys = fam.sp_system(2, 3)  # eps block sp(3), delta block sp(2)
    h = fam.sp_split_roots(sys, 1, attach_low=True, split_eps=True)
    # sp(2,1)+sp(2): (2m^2+2a^2+4ma) + 2b^2 with m=2,a=1,b=2
    assert len(h) == 18 + 8
    hd = fam.sp_split_roots(sys, 1, attach_low=True, split_eps=False)
    # sp(1,3)+sp(1): (2+18+12) + 2
    assert len(hd) == 32 + 2
    assert {r.vector.coords for r in h} | {r.vector.coords for r in hd} <= {
        r.vector.coords for r in sys.roots
    }


# ---------------------------------------------------------------------------
# f4(4)


def test_f4_realization():
    sys = fam.f4_system()
    assert len(sys.roots) == 48
    assert len(sys.compact_roots) == 20
    psi = fam.f4_psi_bs(sys)
    assert is_borel_de_siebenthal(psi)
    simples = psi.simple_roots
    assert len(simples) == 4
    assert [sys.color_of(s.vector) for s in simples].count(False) == 1
    amax = fam.f4_alpha_max(sys)
    assert amax == sys.basis.eps(1) + sys.basis.eps(2)
    assert sys.color_of(amax)
    assert psi.rho_n == Fraction(7, 2) * amax


def test_f4_subalgebra_root_sets():
    sys = fam.f4_system()
    h = fam.f4_h_roots(sys)  # sp(1,2)+su(2)
    h0 = fam.f4_h0_roots(sys)  # so(5,4)
    assert len(h) == 20 and len(h0) == 32
    shared = {r.vector.coords for r in h} & {r.vector.coords for r in h0}
    # l = su(2)+su(2)+so(4)-compact part: the common compact torus-root set
    assert all(sys.color_of(Weight(sys.basis, c)) for c in shared)


# ---------------------------------------------------------------------------
# e6(2) and its fold onto f4(4)/sp(3,1)


def test_e6_realization():
    sys = fam.e6_system()
    assert len(sys.roots) == 72
    assert len(sys.compact_roots) == 32
    assert all(inner(r.vector, r.vector) == 2 for r in sys.roots)
    psi = fam.e6_psi_bs(sys)
    assert is_borel_de_siebenthal(psi)
    simples = fam.e6_simples(sys)
    assert set(s.coords for s in simples) == {
        s.vector.coords for s in psi.simple_roots
    }
    amax = fam.e6_alpha_max(sys)
    assert psi.rho_n == 5 * amax


def test_e6_fold_systems():
    sys = fam.e6_system()
    fold = fam.e6_fold(sys)
    f4u = fold.h_psis["Psi_BS"]
    c4u = fold.h0_psis["Psi_BS"]
    assert len(f4u.system.roots) == 48
    assert len(c4u.system.roots) == 32
    shared = {r.vector.coords for r in f4u.system.compact_roots} & {
        r.vector.coords for r in c4u.system.compact_roots
    }
    assert len(shared) == 20
    # sigma-fold identifications: q(alpha_1) = q(alpha_6), q(alpha_3) = q(alpha_5)
    a1, a2, a3, a4, a5, a6 = fam.e6_simples(sys)

    def q(w):
        out = [Fraction(0)] * fold.u_basis.rank
        for i, c in enumerate(w.coords):
            for k, entry in enumerate(fold.matrix[i]):
                out[k] += c * entry
        return tuple(out)

    assert q(a1) == q(a6) and q(a3) == q(a5)
    assert q(a1) != q(a3)
    # every g-root restricts to a root of the folded F4 system
    f4_vectors = {r.vector.coords for r in f4u.system.roots}
    for r in sys.roots:
        assert q(r.vector) in f4_vectors
    # first fundamental weight of the sp(3) block: pairs to 1 against the
    # first compact simple, 0 against the rest, and avoids the sp(1) axis
    lt1 = fam.e6_lambda_tilde1(fold)
    assert lt1.coords == (0, Fraction(1, 2), 0, 0)


def test_e6_fold_sp31_chamber_rho():
    sys = fam.e6_system()
    fold = fam.e6_fold(sys)
    c4u = fold.h0_psis["Psi_BS"]
    # rho of the compact Sp(3) factor sitting inside sp(3,1)|u
    sp3 = [
        r.vector
        for r in c4u.compact_positives
        if r.vector.coords[0] == 0
    ]
    rho_sp3 = Fraction(1, 2) * sum(sp3[1:], sp3[0])
    assert rho_sp3.coords == (0, Fraction(3, 2), 1, Fraction(1, 2))


def test_so_rank_one_fold():
    sys = fam.so_system(3, 1, odd=False)  # so(6,2)
    fold = fam.so_rank_one_fold(sys)
    assert fold.u_basis.rank == 3
    assert fold.h_psis.keys() == {"Psi+", "Psi-"}
    folded = fold.h_psis["Psi+"].system
    assert len(folded.roots) == 2 * 3 * 2 + 2 * 3  # so(6,1) on the eps block
    assert fold.h_psis["Psi+"] is fold.h0_psis["Psi+"]
    with pytest.raises(ValueError):
        fam.so_rank_one_fold(fam.so_system(2, 1, odd=True))


# ---------------------------------------------------------------------------
# projections


def test_projection_helpers():
    sys = fam.su_system(2, 2)
    basis = sys.basis
    p = fam.mean_centering_projection(basis, range(2))
    w = vec(basis, 5, 1, 7, 7)
    img = apply_matrix(p, w)
    assert img.coords == (2, -2, 0, 0)
    zeta = fam.su_zeta(sys)
    pz = fam.projection_matrix(basis, [zeta])
    assert apply_matrix(pz, zeta) == zeta
    assert apply_matrix(pz, basis.eps(1) - basis.eps(2)).is_zero()
    s = fam.slice_projection(basis, (0, 1))
    assert apply_matrix(s, w).coords == (5, 1, 0, 0)
    diff = fam.matrix_difference(fam.slice_projection(basis, range(4)), s)
    assert apply_matrix(diff, w).coords == (0, 0, 7, 7)
