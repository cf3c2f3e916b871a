from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import pytest

from linlog import interp
from linlog.errors import DomainError, PreconditionError
from linlog.polybasis import UniPoly

primes = st.sampled_from([2, 3, 5, 7, 97])


@given(st.integers(0, 10**6), primes)
def test_factorial_valuation_two_ways(j, p):
    assert interp.factorial_valuation(j, p) == interp.legendre_count(j, p)


@given(st.integers(1, 10**5), primes)
def test_kappa(S1, p):
    digits = len(_base(S1, p))
    assert interp.kappa(S1, p) == interp.legendre_count(S1, p) + digits - 1


def _base(n, p):
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def test_floor_log_exact_powers():
    assert [interp.floor_log(n, 3) for n in (1, 2, 3, 8, 9, 26, 27)] == [0, 0, 1, 1, 2, 2, 3]
    assert interp.floor_log(10**30, 10) == 30


def test_r_p():
    exact, approx = interp.r_p_value(3)
    assert approx == pytest.approx(3 ** -0.5)
    with pytest.raises(DomainError):
        interp.r_p_value(4)


def test_roy_holds_on_polynomials():
    f = UniPoly([Fraction(1, 3), 2, Fraction(-5, 4), 7])
    for p in (2, 3, 5):
        res = interp.check_roy(f, 2, 2, 1, p, p=p)
        assert res.status in ("holds", "inconclusive")


def test_roy_rejects_bad_radius():
    with pytest.raises(DomainError):
        interp.check_roy(UniPoly([1, 1]), 1, 1, Fraction(1, 3), 1, p=2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.integers(1, 3), st.integers(1, 3))
def test_waldschmidt_polynomial_samples(coeffs, S1, T1):
    f = interp.ExpPolySample(((UniPoly(coeffs), Fraction(1, 2)),))
    res = interp.check_waldschmidt(f, S1, T1, 2 * S1, 8 * S1)
    assert res.holds


def test_waldschmidt_radius_precondition():
    f = interp.ExpPolySample.poly(UniPoly([1]))
    with pytest.raises(PreconditionError):
        interp.check_waldschmidt(f, 3, 1, 2.0, 10.0)


def test_gauss_norm():
    s = interp.PadicSeries.from_poly(UniPoly([4, Fraction(1, 2), 3]), 2)
    assert interp.gauss_norm(s).to_fraction() == 2
