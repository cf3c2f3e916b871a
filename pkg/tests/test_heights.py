from fractions import Fraction
import math

from hypothesis import assume, given, strategies as st
import pytest
import sympy

from linlog import heights
from linlog.errors import DomainError
from linlog.heights import LogValue, Place, Subspace, schmidt_height

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6).filter(lambda x: x != 0)


@given(rationals)
def test_product_formula(x):
    assert heights.product_formula_residual(x) == 1


@given(rationals)
def test_height_of_rational(x):
    # h(x) = log max(|num|, den)
    expected = math.log(max(abs(x.numerator), x.denominator))
    assert heights.rational_height(x).approx == pytest.approx(expected, abs=1e-12)
    assert heights.weil_height([1, x]) == heights.rational_height(x)


@given(st.lists(st.integers(-1000, 1000), min_size=2, max_size=6))
def test_sandwich(v):
    assume(any(v))
    h, h2 = heights.weil_height(v), heights.l2_height(v)
    assert h <= h2 <= h + LogValue(len(v), half=True)
    assert heights.sandwich_check(v)


def test_weil_height_projective():
    assert heights.weil_height([2, 4, 6]) == heights.weil_height([1, 2, 3]) == LogValue(3)
    assert heights.l2_height([1, 1]) == LogValue(2, half=True)


@given(st.integers(2, 10**6), st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_matches_sympy(n, p):
    assert heights.valuation(n, p) == sympy.multiplicity(p, n)


@given(st.integers(1, 10**9))
def test_factorize(n):
    assert heights.factorize(n) == sympy.factorint(n)


def test_local_abs():
    assert heights.local_abs(Fraction(12, 5), Place.finite(2)).to_fraction() == Fraction(1, 4)
    assert heights.local_abs(Fraction(-12, 5), Place.archimedean()) == Fraction(12, 5)


def test_logvalue_arithmetic_exact():
    a = LogValue(2)
    b = LogValue(3, half=True)
    assert (a + b).squared_argument == 12
    assert (a - a) == LogValue.zero()
    assert -a == LogValue(Fraction(1, 2))
    assert LogValue(4, half=True) == LogValue(2)
    with pytest.raises(DomainError):
        LogValue(0)


def test_schmidt_height_plane():
    # V = {x + y + z = 0}: Plücker vector (1, -1, 1) up to sign, norm^2 = 3
    V = Subspace.span([[1, -1, 0], [0, 1, -1]])
    assert schmidt_height(V) == LogValue(3, half=True)


def test_schmidt_height_full_and_zero():
    assert schmidt_height(Subspace.full(3)) == LogValue.zero()
    assert schmidt_height(Subspace.zero(3)) == LogValue.zero()


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3))
def test_span_is_spanning_set_invariant(rows):
    assume(any(any(r) for r in rows))
    s = Subspace.span(rows)
    assert s.dim == sympy.Matrix(rows).rank()
    assert all(s.contains(r) for r in rows)
    assert Subspace.span(list(reversed(rows)) + [[2 * x for x in rows[0]]]) == s
    assert s.gram_det == sum(m * m for m in heights.linalg.maximal_minors([list(b) for b in s.basis]))


def test_liouville_gap():
    assert heights.liouville_gap(Fraction(3, 4), Place.finite(2))
