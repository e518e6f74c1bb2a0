"""The brute-force validators validated on hand-checkable cases."""

from fractions import Fraction as F

import pytest

from branchkit.oracle import (
    DecompositionError,
    WeightSpaceTable,
    brute_branch,
    enumerate_partitions,
    freudenthal,
    weyl_dim,
)
from branchkit.distributions import WeightMultiset
from branchkit.roots import reflect_weight
from branchkit.weights import Basis, Weight, inner

from suites import so_even_compact, so_odd_compact, sp_compact, su_compact, wt


# ------------------------------------------------------------ freudenthal

def test_trivial_rep():
    psi = sp_compact(2)
    table = freudenthal(psi, psi.rho.basis.zero())
    assert table.multiplicities == {psi.rho.basis.zero(): 1}
    assert table.dimension() == 1


def test_sp1_string():
    psi = sp_compact(1)
    basis = psi.rho.basis
    k = 4
    table = freudenthal(psi, wt(basis, k))
    assert table.dimension() == k + 1
    expected = {wt(basis, k - 2 * j): 1 for j in range(k + 1)}
    assert table.multiplicities == expected


def test_sp2_adjoint():
    psi = sp_compact(2)
    basis = psi.rho.basis
    adjoint = wt(basis, 2, 0)  # highest root
    table = freudenthal(psi, adjoint)
    assert table.dimension() == 10
    assert table.multiplicities[basis.zero()] == 2
    # the eight roots each occur once
    for r in psi.positives:
        assert table.multiplicities[r.vector] == 1
        assert table.multiplicities[-r.vector] == 1


def test_weyl_dim_closed_forms():
    # dim Sym^k(C^2) for Sp(1), dim of Sp(2) fundamental reps
    sp1 = sp_compact(1)
    for k in range(6):
        assert weyl_dim(sp1, wt(sp1.rho.basis, k)) == k + 1
    sp2 = sp_compact(2)
    assert weyl_dim(sp2, wt(sp2.rho.basis, 1, 0)) == 4
    assert weyl_dim(sp2, wt(sp2.rho.basis, 1, 1)) == 5
    assert weyl_dim(sp2, wt(sp2.rho.basis, 2, 0)) == 10


def test_freudenthal_rejects_non_dominant():
    psi = sp_compact(2)
    with pytest.raises(ValueError):
        freudenthal(psi, wt(psi.rho.basis, 1, 2))
    with pytest.raises(ValueError):
        freudenthal(psi, wt(psi.rho.basis, F(1, 2), 0))


def test_weight_table_weyl_invariance():
    psi = so_odd_compact(2)  # so(5)
    table = freudenthal(psi, wt(psi.rho.basis, F(3, 2), F(1, 2)))
    for s in psi.simple_roots:
        for w, m in table.multiplicities.items():
            assert table.multiplicities[reflect_weight(w, s.vector)] == m


# ----------------------------------------------------------- brute_branch

def _identity_projection(w):
    return w


def test_branch_trivial():
    big = so_odd_compact(2)
    small = so_even_compact(2, basis=big.rho.basis)
    out = brute_branch((big, big.rho.basis.zero()), (small, _identity_projection))
    assert out == {small.rho.basis.zero(): 1}


def test_so5_spinor_to_so4():
    # the 4-dimensional spinor splits into the two half-spinors
    b2 = so_odd_compact(2)
    basis = b2.rho.basis
    d2 = so_even_compact(2, basis=basis)
    out = brute_branch((b2, wt(basis, F(1, 2), F(1, 2))), (d2, _identity_projection))
    assert out == {
        wt(basis, F(1, 2), F(1, 2)): 1,
        wt(basis, F(1, 2), F(-1, 2)): 1,
    }


def test_so5_vector_to_so4():
    b2 = so_odd_compact(2)
    basis = b2.rho.basis
    d2 = so_even_compact(2, basis=basis)
    out = brute_branch((b2, wt(basis, 1, 0)), (d2, _identity_projection))
    # 5 = 4 + 1
    assert out == {wt(basis, 1, 0): 1, basis.zero(): 1}


def test_sp2_to_sp1_sp1():
    c2 = sp_compact(2)
    basis = c2.rho.basis
    # Sp(1) x Sp(1) embedded on the two coordinates
    sub = _sp1_sp1()
    out = brute_branch((c2, wt(basis, 2, 1)), (sub, _identity_projection))
    total = sum(m * _dim_sp1_sp1(hw) for hw, m in out.items())
    assert total == weyl_dim(c2, wt(basis, 2, 1)) == 16
    # V(2,1) restricted: hand check via characters
    assert out == {
        wt(basis, 2, 1): 1,
        wt(basis, 1, 2): 1,
        wt(basis, 1, 0): 1,
        wt(basis, 0, 1): 1,
    }


def _sp1_sp1():
    from branchkit.roots import ColoredRoot, PositiveSystem, RootSystem

    basis = Basis(eps_count=2, delta_count=0, label="sp(2)")
    e1, e2 = basis.eps(1), basis.eps(2)
    pos = [ColoredRoot(2 * e1, True), ColoredRoot(2 * e2, True)]
    sys = RootSystem(
        basis, frozenset(pos + [-r for r in pos]), name="sp(1)+sp(1)"
    )
    return PositiveSystem(sys, tuple(pos))


def _dim_sp1_sp1(hw):
    return int((hw.coords[0] + 1) * (hw.coords[1] + 1))


def test_branch_signals_bad_projection():
    # projecting so(5) onto the first coordinate only is not a subgroup
    # restriction compatible with so(4)-dominance bookkeeping downstream;
    # a half-spinor weight collapses to something non-decomposable
    b2 = so_odd_compact(2)
    sp1 = sp_compact(1)

    def collapse(w):
        return Weight(sp1.rho.basis, (w.coords[0] + F(1, 3),))

    with pytest.raises((DecompositionError, ValueError)):
        brute_branch((b2, wt(b2.rho.basis, 1, 0)), (sp1, collapse))


# ---------------------------------------------------- enumerate_partitions

def test_partition_a2_example():
    su3 = su_compact(3)
    basis = su3.rho.basis
    alpha = basis.eps(1) - basis.eps(2)
    beta = basis.eps(2) - basis.eps(3)
    S = WeightMultiset.from_weights(basis, [alpha, beta, alpha + beta])
    assert enumerate_partitions(S, alpha + beta) == 2
    assert enumerate_partitions(S, basis.zero()) == 1
    assert enumerate_partitions(S, -alpha) == 0
    assert enumerate_partitions(S, 2 * alpha + beta) == 2  # 2a+b, a+(a+b)


def test_partition_shifted_single():
    basis = Basis(eps_count=1, delta_count=0, label="t")
    g = basis.eps(1)
    S = WeightMultiset.from_weights(basis, [g])
    assert enumerate_partitions(S, F(1, 2) * g, shifted=True) == 1
    assert enumerate_partitions(S, g, shifted=True) == 0
    assert enumerate_partitions(S, F(3, 2) * g, shifted=True) == 1


def test_partition_shifted_double():
    basis = Basis(eps_count=1, delta_count=0, label="t")
    g = basis.eps(1)
    S = WeightMultiset.from_weights(basis, [g, g])
    assert enumerate_partitions(S, g, shifted=True) == 1  # n1 = n2 = 0
    assert enumerate_partitions(S, 2 * g, shifted=True) == 2
    assert enumerate_partitions(S, F(3, 2) * g, shifted=True) == 0


def test_partition_rejects_bad_functional():
    basis = Basis(eps_count=1, delta_count=0, label="t")
    g = basis.eps(1)
    S = WeightMultiset.from_weights(basis, [g, -g])
    with pytest.raises(ValueError):
        enumerate_partitions(S, g, xi=g)
