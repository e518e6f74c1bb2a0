"""Partition counts, shifted convolutions, window bookkeeping."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchkit.distributions import (
    AcyclicityError,
    MultisetError,
    TruncationWindow,
    WeightDistribution,
    WeightMultiset,
    WindowError,
    acyclicity_certificate,
    convolve,
    heaviside,
    kostant_partition,
    skew_project,
)
from branchkit.oracle import freudenthal
from branchkit.roots import weyl_group
from branchkit.weights import Basis, Weight, inner

from suites import (
    convolution_algebra_suite,
    partition_oracle_suite,
    sp_compact,
    su_compact,
    truncation_refinement_suite,
    wt,
)


def line_basis():
    return Basis(eps_count=1, delta_count=0, label="t")


def plane_basis():
    return Basis(eps_count=2, delta_count=0, label="t2")


# -------------------------------------------------------------- multisets

def test_multiset_union_adds_repetitions():
    basis = plane_basis()
    a, b = wt(basis, 1, 0), wt(basis, 0, 1)
    S = WeightMultiset.from_weights(basis, [a, b])
    T = WeightMultiset.from_weights(basis, [a])
    assert S.union(T).reps(a) == 2
    assert S.union(T).count() == 3


def test_multiset_difference_is_strict():
    basis = plane_basis()
    a, b = wt(basis, 1, 0), wt(basis, 0, 1)
    S = WeightMultiset.from_pairs(basis, [(a, 2), (b, 1)])
    out = S.difference(WeightMultiset.from_weights(basis, [a, b]))
    assert out.items == ((a, 1),)
    with pytest.raises(MultisetError):
        S.difference(WeightMultiset.from_pairs(basis, [(b, 2)]))


def test_multiset_intersection_takes_min():
    basis = plane_basis()
    a, b = wt(basis, 1, 0), wt(basis, 0, 1)
    S = WeightMultiset.from_pairs(basis, [(a, 3), (b, 1)])
    T = WeightMultiset.from_pairs(basis, [(a, 1)])
    assert S.intersection(T).items == ((a, 1),)


def test_multiset_canonical_order_and_total():
    basis = plane_basis()
    a, b = wt(basis, 1, 0), wt(basis, 0, 1)
    S = WeightMultiset.from_weights(basis, [a, b, a])
    T = WeightMultiset.from_weights(basis, [b, a, a])
    assert S == T
    assert S.total() == wt(basis, 2, 1)


# ------------------------------------------------------- kostant_partition

def test_kostant_a2_positives():
    su3 = su_compact(3)
    basis = su3.rho.basis
    alpha = basis.eps(1) - basis.eps(2)
    beta = basis.eps(2) - basis.eps(3)
    S = WeightMultiset.from_weights(basis, [alpha, beta, alpha + beta])
    assert kostant_partition(S, alpha + beta) == 2
    assert kostant_partition(S, basis.zero()) == 1
    assert kostant_partition(S, beta - alpha) == 0
    assert kostant_partition(S, 3 * alpha + 2 * beta) == 3


def test_kostant_counts_repetitions_as_slots():
    basis = line_basis()
    g = basis.eps(1)
    S = WeightMultiset.from_pairs(basis, [(g, 2)])
    # n1 + n2 = 2 has three solutions
    assert kostant_partition(S, 2 * g) == 3


def test_kostant_order_independence():
    basis = plane_basis()
    ws = [wt(basis, 1, 0), wt(basis, 1, 1), wt(basis, 2, 1), wt(basis, 1, 0)]
    target = wt(basis, 4, 2)
    reference = kostant_partition(WeightMultiset.from_weights(basis, ws), target)
    import itertools

    for perm in itertools.permutations(ws):
        S = WeightMultiset.from_weights(basis, perm)
        assert kostant_partition(S, target) == reference


def test_kostant_acyclicity_error():
    basis = plane_basis()
    g = wt(basis, 1, 0)
    S = WeightMultiset.from_weights(basis, [g, -g])
    with pytest.raises(AcyclicityError):
        kostant_partition(S, g)


def test_certificate_found_when_total_vanishes_on_element():
    # total = (2, 0) pairs to zero with (0, 1): LP fallback must find
    # a genuinely positive functional
    basis = plane_basis()
    S = WeightMultiset.from_weights(basis, [wt(basis, 1, 1), wt(basis, 1, -1)])
    xi = acyclicity_certificate(S)
    for g, _ in S.items:
        assert inner(xi, g) > 0


def test_kostant_rejects_coarse_denominators():
    basis = line_basis()
    S = WeightMultiset.from_weights(basis, [basis.eps(1)])
    with pytest.raises(ValueError):
        kostant_partition(S, wt(basis, F(1, 3)))


# --------------------------------------------------------------- heaviside

def test_heaviside_single_generator():
    basis = line_basis()
    g = basis.eps(1)
    S = WeightMultiset.from_weights(basis, [g])
    window = TruncationWindow(g, F(4))
    D = heaviside(S, window)
    assert D.coefficient(F(1, 2) * g) == 1
    assert D.coefficient(g) == 0
    assert D.coefficient(F(3, 2) * g) == 1
    with pytest.raises(WindowError):
        D.coefficient(5 * g)


def test_heaviside_empty_is_delta_zero():
    basis = line_basis()
    S = WeightMultiset.from_pairs(basis, [])
    window = TruncationWindow(basis.eps(1), F(3))
    D = heaviside(S, window)
    assert D.coefficient(basis.zero()) == 1
    assert len(D.support()) == 1


def test_heaviside_doubled_generator():
    basis = line_basis()
    g = basis.eps(1)
    S = WeightMultiset.from_pairs(basis, [(g, 2)])
    window = TruncationWindow(g, F(4))
    D = heaviside(S, window)
    assert D.coefficient(g) == 1  # n1 = n2 = 0
    assert D.coefficient(2 * g) == 2
    assert D.coefficient(3 * g) == 3
    assert D.coefficient(F(3, 2) * g) == 0


def test_heaviside_requires_positive_levels():
    basis = plane_basis()
    S = WeightMultiset.from_weights(basis, [wt(basis, 0, 1)])
    window = TruncationWindow(wt(basis, 1, 0), F(5))
    with pytest.raises(WindowError):
        heaviside(S, window)


# ---------------------------------------------------------------- convolve

def test_convolve_with_delta_translates():
    basis = plane_basis()
    xi = wt(basis, 1, F(1, 8))
    window = TruncationWindow(xi, F(6))
    D = WeightDistribution(
        window, {wt(basis, 1, 0): 2, wt(basis, 0, 2): -1}
    )
    lam = wt(basis, 1, 1)
    out = convolve(WeightDistribution.delta(lam, window), D)
    shifted = D.translate(lam)
    for w in shifted.support():
        if out.window.admits(w):
            assert out.coefficient(w) == shifted.coefficient(w)


def test_convolve_heavisides_merges_multisets():
    basis = line_basis()
    g = basis.eps(1)
    window = TruncationWindow(g, F(5))
    one = heaviside(WeightMultiset.from_weights(basis, [g]), window)
    two = heaviside(WeightMultiset.from_pairs(basis, [(g, 2)]), window)
    merged = convolve(one, one)
    bound = min(merged.window.bound, two.window.bound)
    for k in range(0, 11):
        w = F(k, 2) * g
        if inner(g, w) <= bound:
            assert merged.coefficient(w) == two.coefficient(w)


def test_convolve_requires_same_functional():
    basis = plane_basis()
    a = WeightDistribution.zero(TruncationWindow(wt(basis, 1, 0), F(3)))
    b = WeightDistribution.zero(TruncationWindow(wt(basis, 0, 1), F(3)))
    with pytest.raises(WindowError):
        convolve(a, b)


def test_window_bound_propagation():
    basis = line_basis()
    g = basis.eps(1)
    # a is exact to 3 with lowest support level 1; b exact to 5, lowest 2
    a = WeightDistribution(TruncationWindow(g, F(3)), {g: 1})
    b = WeightDistribution(TruncationWindow(g, F(5)), {2 * g: 1})
    out = convolve(a, b)
    assert out.window.bound == min(F(3) + 2, F(5) + 1)


def test_restricted_only_shrinks():
    basis = line_basis()
    g = basis.eps(1)
    D = WeightDistribution(TruncationWindow(g, F(4)), {g: 1, 4 * g: 2})
    small = D.restricted(2)
    assert small.coefficient(g) == 1
    assert g * 4 not in dict(small.items())
    with pytest.raises(WindowError):
        D.restricted(7)


def test_dump_is_deterministic_and_sorted():
    basis = plane_basis()
    xi = wt(basis, 1, F(1, 8))
    window = TruncationWindow(xi, F(9))
    D = WeightDistribution(
        window,
        {wt(basis, 2, 1): -1, wt(basis, 1, 0): 3, wt(basis, 1, 4): 2},
    )
    assert D.dump() == "1,0 |\t3\n1,4 |\t2\n2,1 |\t-1"


# ------------------------------------------------------------ skew_project

def test_skew_project_single_orbit():
    c2 = sp_compact(2)
    basis = c2.rho.basis
    nu = wt(basis, 3, 1)  # regular dominant
    window = TruncationWindow(c2.rho, F(40))
    from branchkit.roots import apply_matrix

    coeffs = {}
    for mat, sign in weyl_group(c2):
        coeffs[apply_matrix(mat, nu)] = sign
    D = WeightDistribution(window, coeffs)
    assert skew_project(D, c2) == {nu: 1}


def test_skew_project_drops_singular():
    c2 = sp_compact(2)
    basis = c2.rho.basis
    window = TruncationWindow(c2.rho, F(40))
    D = WeightDistribution(window, {wt(basis, 2, 2): 5, wt(basis, 1, 0): 7})
    # (2,2) is fixed by the reflection in e1-e2: singular, must vanish;
    # (1,0) is singular against 2*e2
    assert skew_project(D, c2) == {}


def test_skew_project_matches_freudenthal_antisymmetrization():
    # sum over weights of V(lam) of mult * delta_{w + rho}, skew-projected,
    # reproduces the alternating character numerator: {lam + rho: 1}
    c2 = sp_compact(2)
    basis = c2.rho.basis
    lam = wt(basis, 2, 1)
    table = freudenthal(c2, lam)
    window = TruncationWindow(c2.rho, F(50))
    # numerator of the Weyl character formula as a distribution
    from branchkit.roots import apply_matrix, weyl_group as wg

    coeffs = {}
    for mat, sign in wg(c2):
        for mu, m in table.multiplicities.items():
            key = apply_matrix(mat, mu + c2.rho)
            coeffs[key] = coeffs.get(key, 0) + sign * m
    D = WeightDistribution(window, coeffs)
    assert skew_project(D, c2) == {lam + c2.rho: 1}


# ------------------------------------------------------- randomized suites

def test_partition_oracle_smoke():
    assert partition_oracle_suite(120, seed=7) > 120


def test_convolution_algebra_smoke():
    assert convolution_algebra_suite(40, seed=7) == 40


def test_truncation_refinement_smoke():
    assert truncation_refinement_suite(20, seed=7) == 20


# ------------------------------------------------------ hypothesis mirrors

coeff_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def distributions_(draw):
    basis = plane_basis()
    xi = wt(basis, 1, F(1, 8))
    window = TruncationWindow(xi, F(draw(st.integers(2, 10))))
    n = draw(st.integers(0, 4))
    coeffs = {}
    for _ in range(n):
        x = draw(st.integers(-2, 4))
        y = draw(st.integers(-3, 3))
        w = wt(basis, x, y)
        if window.admits(w):
            coeffs[w] = draw(coeff_ints)
    return WeightDistribution(window, coeffs)


@settings(max_examples=60, deadline=None)
@given(distributions_(), distributions_())
def test_convolve_commutes(a, b):
    assert a.convolve(b) == b.convolve(a)


@settings(max_examples=60, deadline=None)
@given(distributions_(), distributions_())
def test_add_then_restrict_consistent(a, b):
    out = a.add(b)
    for w in out.support():
        assert out.coefficient(w) == a._coeffs.get(w, 0) + b._coeffs.get(w, 0)
