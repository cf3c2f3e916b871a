import math

from hypothesis import assume, given, settings, strategies as st
import pytest

from linlog import linalg, siegel
from linlog.errors import DomainError
from linlog.heights import LogValue, Subspace, schmidt_height

spans = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3)


def nonzero_span(rows):
    assume(any(any(r) for r in rows))
    return Subspace.span(rows, 4)


@settings(max_examples=60)
@given(spans)
def test_duality(rows):
    s = nonzero_span(rows)
    d = siegel.dual_subspace(s)
    assert d.dim == 4 - s.dim
    assert all(sum(a * b for a, b in zip(u, v)) == 0 for u in s.basis for v in d.basis)
    assert schmidt_height(s) == schmidt_height(d)
    assert siegel.dual_subspace(d) == s


@settings(max_examples=60)
@given(spans)
def test_small_basis_certificate(rows):
    s = nonzero_span(rows)
    b = siegel.small_basis(s)
    vecs = b.integer_vectors
    assert len(vecs) == s.dim and all(s.contains(v) for v in vecs)
    assert linalg.rank_rational(vecs) == s.dim
    # prod |v_i|^2 <= det(Gram) * d^(2d), recomputed directly
    assert math.prod(sum(x * x for x in v) for v in vecs) <= s.gram_det * s.dim ** (2 * s.dim)
    assert b.certificate and siegel.certificate_holds(s, vecs)


def test_small_basis_beats_given_basis():
    s = Subspace.span([[1, 0, 100], [0, 1, 100]])
    b = siegel.small_basis(s)
    assert b.total <= LogValue(100 * 100 + 1, half=True) + LogValue(100 * 100 + 1, half=True)
    assert b.total == sum(b.heights, LogValue.zero())


def test_exhaustive_min_total_is_lower_bound():
    s = Subspace.span([[1, 2, 3], [2, 3, 5]])
    best = siegel.exhaustive_min_total(s, 3)
    assert best is not None and best <= siegel.small_basis(s).total


def test_zero_subspace_has_no_basis():
    with pytest.raises(DomainError):
        siegel.small_basis(Subspace.zero(3))


def test_high_dimension_certified_without_search():
    b = siegel.small_basis(Subspace.full(9))
    assert b.total == LogValue.zero()


def test_refined_bound():
    s = Subspace.span([[1, 1, 1, 1]])
    b = siegel.small_basis(s)
    assert siegel.verify_refined_bound(s, b, 0.5)
