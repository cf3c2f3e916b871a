from fractions import Fraction
from math import comb

from hypothesis import given, strategies as st
import pytest
import sympy

from linlog import polybasis as pb
from linlog.errors import DomainError

X = sympy.Symbol("X")


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(p.coeffs))


@given(st.integers(0, 12), st.integers(-40, 40))
def test_binomial_delta_integer_valued(n, k):
    v = pb.binomial_delta(n)(Fraction(k))
    assert v.denominator == 1
    # rising binomial: C(k + n - 1, n), read through the sign rule for k <= 0
    assert v == sympy.binomial(k + n - 1, n)


def test_binomial_delta_small():
    assert pb.binomial_delta(0) == pb.UniPoly([1])
    assert pb.binomial_delta(2) == pb.UniPoly([0, Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(DomainError):
        pb.binomial_delta(-1)


@given(st.integers(1, 4), st.integers(0, 12), st.integers(0, 10))
def test_matveev_delta_integer_valued(d_flat, lam, k):
    assert pb.matveev_delta(d_flat, lam)(Fraction(k)).denominator == 1
    assert pb.matveev_delta(d_flat, lam).degree == lam


@given(st.lists(st.integers(-9, 9), max_size=7), st.integers(0, 6), st.fractions(max_denominator=5))
def test_divided_derivative_matches_sympy(coeffs, t0, at):
    p = pb.UniPoly(coeffs)
    expected = sympy.diff(to_sympy(p), X, t0).subs(X, sympy.Rational(at.numerator, at.denominator)) / sympy.factorial(t0)
    assert pb.divided_derivative(p, t0, at) == expected
    assert pb.divided_derivative_poly(p, t0)(at) == pb.divided_derivative(p, t0, at)


@given(st.lists(st.integers(-9, 9), max_size=6), st.integers(-3, 3))
def test_taylor_at(coeffs, at):
    p = pb.UniPoly(coeffs)
    shifted = p.taylor_at(at)
    for h in range(-2, 3):
        assert shifted(Fraction(h)) == p(Fraction(at + h))


def test_unipoly_algebra():
    p = pb.UniPoly([1, 1])
    assert p**3 == pb.UniPoly([comb(3, k) for k in range(4)])
    assert (p * 2).coeffs == (2, 2)
    assert pb.UniPoly([0, 0]).degree == -1


def test_weight_enclosure_ordered():
    fam = tuple(pb.monomial_family(3))
    enc = pb.weight_aleph(pb.WeightQuery(fam, 1, 2, pb.Archimedean(2.718281828459045)))
    assert enc.lo <= enc.hi
    assert enc.sup_lo <= enc.sup_hi


def test_weight_grows_with_radius():
    fam = tuple(pb.matveev_family(2, 4))
    small = pb.weight_aleph(pb.WeightQuery(fam, 1, 2, pb.Archimedean(3.0)))
    big = pb.weight_aleph(pb.WeightQuery(fam, 1, 2, pb.Archimedean(30.0)))
    assert big.hi >= small.lo
