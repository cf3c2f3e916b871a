from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import pytest

from linlog import groups as G
from linlog.errors import DomainError, InconsistencyError, PreconditionError
from linlog.heights import Subspace

FAMILY2 = G.enumerate_family(2, 2)


@pytest.mark.parametrize("sub", FAMILY2, ids=str)
def test_multidegree_matches_hilbert_counts(sub):
    md = G.multidegree(sub)
    assert md.coeffs == G.multidegree_bruteforce(sub).coeffs
    assert md.total == G.slice_degree(sub)


def test_curve_multidegree():
    curve = G.SubgroupDescriptor.from_lattice([[0, 1, 2]], 2)
    assert curve.dim == 1
    assert G.multidegree(curve).coeffs == {(1,): 1, (2,): 2}
    assert G.hilbert_degree(curve) == 3


def test_full_multidegree_torus():
    # (1 + g)! * D0 * D1 * D2 for G_a x G_m^2
    assert G.full_multidegree(G.GroupDescriptor.torus(2), [2, 3, 5]) == math.factorial(3) * 30


def test_family_contains_extremes():
    dims = {s.dim for s in FAMILY2}
    assert 0 in dims and 3 in dims
    assert len(set(FAMILY2)) == len(FAMILY2)


def test_containment():
    whole, trivial = G.SubgroupDescriptor.whole(2), G.SubgroupDescriptor.trivial(2)
    assert whole.contains(trivial) and not trivial.contains(whole)


points = st.tuples(st.sampled_from([Fraction(2), Fraction(1, 2), Fraction(3), Fraction(4), Fraction(-1), Fraction(9)]),
                   st.sampled_from([Fraction(2), Fraction(1, 4), Fraction(3), Fraction(8), Fraction(-1)]))


@settings(max_examples=40, deadline=None)
@given(points, st.sampled_from(FAMILY2), st.integers(0, 8))
def test_orbit_count_matches_bruteforce(point, sub, S):
    assert G.orbit_count(list(point), sub, S) == G.orbit_count_bruteforce(list(point), sub, S)


def test_obstruction_identity_at_minimizer():
    group = G.GroupDescriptor.torus(1)
    params = G.ObstructionParams(Fraction(1), 2, (Fraction(1), Fraction(2)), 4)
    W = Subspace.span([[1, 0]], 2)
    rep = G.choose_x(G.family_for(group, 2), params, [Fraction(2)], W, group, skip_invalid=True)
    assert rep.minimizer_checked and rep.minimizer_ok and rep.homogeneity_ok
    assert rep.B == pytest.approx(min(ev.B for ev in rep.family), rel=1e-12)
    best = dict((s, om) for s, om in rep.omega_values)[rep.argmin]
    assert best == pytest.approx(1, abs=1e-12)


def test_obstruction_params_validate():
    with pytest.raises(DomainError):
        G.ObstructionParams(Fraction(0), 2, (Fraction(1),), 1)


def test_full_tangent_rejected():
    group = G.GroupDescriptor.torus(1)
    params = G.ObstructionParams(Fraction(2), 2, (Fraction(1), Fraction(1)), 4)
    W = Subspace.span([[1, 0], [0, 1]], 2)
    with pytest.raises(PreconditionError):
        G.evaluate_member(G.SubgroupDescriptor.trivial(1), params, [Fraction(2)], W, group)


def test_rank_constant():
    assert [G.default_rank_constant(g) for g in (1, 2, 3)] == [4, 24, 192]


def test_nonnull_degrees():
    group = G.GroupDescriptor.torus(1)
    rep = G.nonnull_degrees_check(0.9, [1, 10], 5, 8, 2, group)
    assert rep.hypotheses_met and rep.d_max == 9
    with pytest.raises(InconsistencyError):
        G.nonnull_degrees_check(0.01, [1, 10], 5, 8, 2, group)
    assert not G.nonnull_degrees_check(0.5, [1, 1], 1, 0, 2, group).hypotheses_met


def test_multiplicity_hypothesis():
    group = G.GroupDescriptor.torus(1)
    c9 = G.multiplicity_constant(group)
    assert G.multiplicity_hypothesis(c9, [1, 1], 3, 0, group)
    assert not G.multiplicity_hypothesis(c9 - 1, [1, 1], 3, 0, group)


def test_factor_validation():
    with pytest.raises(DomainError):
        G.Factor("abelian", 1, 1)
    with pytest.raises(DomainError):
        G.GroupDescriptor((), 0)
