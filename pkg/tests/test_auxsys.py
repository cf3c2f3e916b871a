from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from linlog import auxsys, linalg
from linlog.errors import DomainError, InconsistencyError
from linlog.polybasis import binomial_delta


def test_parse_poly():
    assert auxsys.parse_poly("X^2*Y - X + 3") == {(2, 1): 1, (1, 0): -1, (0, 0): 3}
    assert auxsys.parse_poly("-Y^3") == {(0, 3): -1}


def test_integrality_example():
    rep = auxsys.fact_integrality(auxsys.parse_poly("X^2*Y - X"), 1, 6)
    assert rep.order == 1
    w = rep.witnesses[-1]
    assert w.agree and w.integral and w.coeff_derivative == 2


def test_identically_zero_restriction():
    rep = auxsys.fact_integrality(auxsys.parse_poly("X - Y"), 1, 5)
    assert rep.order is None
    assert all(w.coeff_derivative == 0 for w in rep.witnesses)


def test_zero_polynomial_rejected():
    with pytest.raises(DomainError):
        auxsys.fact_integrality({}, 1, 3)


def test_tampered_delta_detected():
    bad = lambda n: binomial_delta(n) * 2 if n == 1 else binomial_delta(n)
    with pytest.raises(InconsistencyError):
        auxsys.fact_integrality(auxsys.parse_poly("X - Y"), 2, 4, bad)


polys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-9, 9).filter(bool),
                        min_size=1, max_size=6)


@given(polys, st.integers(-5, 5), st.integers(0, 6))
def test_three_routes_agree_up_to_order(P, b, ell):
    order = auxsys.vanishing_order(P, b, 10)
    if order is None or ell <= order:
        a = auxsys.coeff_derivative(P, b, ell)
        assert a == auxsys.coeff_binomial_sum(P, b, ell) == auxsys.coeff_t_series(P, b, ell)


@given(polys, st.integers(-5, 5))
def test_first_nonzero_coefficient_integral(P, b):
    order = auxsys.vanishing_order(P, b, 10)
    if order is not None:
        assert auxsys.coeff_derivative(P, b, order).denominator == 1


def test_small_system():
    spec = auxsys.SystemSpec((1, 1), (2,), (), 1, 1)
    M = auxsys.build_system(spec)
    assert M.entries == [[1, 1, 0, 0], [0, 0, 1, 1], [1, 2, 1, 2], [0, 0, 1, 2]]
    assert auxsys.system_rank(M) == auxsys.system_rank_rational(M) == 4


def test_construct_kernel_vector():
    spec = auxsys.SystemSpec((2, 2), (2,), (), 1, 1)
    M = auxsys.build_system(spec)
    poly, report = auxsys.construct_aux_poly(M)
    vec = [poly.coeffs.get(c, Fraction(0)) for c in M.cols]
    assert all(sum(a * x for a, x in zip(row, vec)) == 0 for row in M.entries)
    assert 1 in poly.coeffs.values()
    assert report.ratio > 0


def test_zero_kernel_reported():
    spec = auxsys.SystemSpec((1, 1), (2,), (), 1, 1)
    with pytest.raises(DomainError):
        auxsys.construct_aux_poly(auxsys.build_system(spec))


def test_spec_validation():
    with pytest.raises(DomainError):
        auxsys.SystemSpec((1, 1, 1), (2, 3), ((1, 0), (0, 1)), 1, 1)
    with pytest.raises(DomainError):
        auxsys.SystemSpec((1, 1), (0,), (), 1, 1)


def test_spec_json_roundtrip():
    spec = auxsys.SystemSpec((1, 2, 1), (Fraction(3, 2), -2), ((1, 1),), 2, 1)
    assert auxsys.SystemSpec.from_json(spec.to_json()) == spec


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2), st.integers(1, 2), st.integers(0, 2), st.integers(0, 2),
       st.sampled_from([2, 3, Fraction(1, 2), -3]))
def test_rank_methods_agree(D0, D1, S1, T1, alpha):
    M = auxsys.build_system(auxsys.SystemSpec((D0, D1), (alpha,), (), S1, T1))
    assert auxsys.system_rank(M) == linalg.rank_rational(M.entries)
