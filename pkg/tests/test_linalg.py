from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st
import pytest
import sympy

from linlog import linalg

small_rows = st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=1, max_size=4)


def gram_schmidt(basis):
    """Rational Gram-Schmidt: orthogonal vectors and mu coefficients."""
    ortho, mu = [], []
    for i, b in enumerate(basis):
        v = [Fraction(x) for x in b]
        row = []
        for bj in ortho:
            m = sum(Fraction(x) * y for x, y in zip(b, bj)) / sum(y * y for y in bj)
            row.append(m)
            v = [x - m * y for x, y in zip(v, bj)]
        ortho.append(v)
        mu.append(row)
    return ortho, mu


def is_lll_reduced(basis, delta=Fraction(99, 100)):
    ortho, mu = gram_schmidt(basis)
    norm = [sum(x * x for x in v) for v in ortho]
    size = all(abs(m) <= Fraction(1, 2) for row in mu for m in row)
    lovasz = all(norm[k] >= (delta - mu[k][k - 1] ** 2) * norm[k - 1] for k in range(1, len(basis)))
    return size and lovasz


def same_lattice(a, b):
    return linalg.hermite_normal_form(a) == linalg.hermite_normal_form(b)


@settings(max_examples=80)
@given(small_rows)
def test_lll_reduced_and_same_lattice(rows):
    assume(sympy.Matrix(rows).rank() == len(rows))
    red = linalg.lll_reduce(rows)
    assert is_lll_reduced(red)
    assert same_lattice(red, rows)


def test_lll_textbook_example():
    red = linalg.lll_reduce([[1, 1, 1], [-1, 0, 2], [3, 5, 6]])
    assert sorted(sum(x * x for x in v) for v in red) == [1, 2, 5]


@given(small_rows)
def test_rank_matches_sympy(rows):
    assert linalg.rank_rational(rows) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_int(mat):
    assert linalg.det_int(mat) == sympy.Matrix(mat).det()


@settings(max_examples=80)
@given(small_rows)
def test_integer_kernel_is_saturated_kernel(rows):
    ker = linalg.integer_kernel(rows, 4)
    assert len(ker) == 4 - sympy.Matrix(rows).rank()
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    if ker:
        # saturated: gcd of the maximal minors is 1
        assert sympy.gcd_list(linalg.maximal_minors(ker)) == 1


def test_saturate_recovers_lattice_closure():
    # 2*(1,1,0) alone spans a non-saturated lattice
    assert linalg.saturate([[2, 2, 0]], 3) in ([[1, 1, 0]], [[-1, -1, 0]])


@given(st.lists(st.fractions(max_denominator=30), min_size=1, max_size=5))
def test_primitive(vec):
    assume(any(vec))
    p = linalg.primitive(vec)
    assert abs(sympy.gcd_list(p)) == 1
    # proportional to the input
    k = next(i for i, x in enumerate(vec) if x)
    assert all(Fraction(a) * vec[k] == x * p[k] for a, x in zip(p, vec))


def test_normalize_sign():
    assert linalg.normalize_sign([0, -2, 3]) == [0, 2, -3]


def test_hnf_canonical():
    a = [[1, 2, 3], [4, 5, 6]]
    b = [[5, 7, 9], [1, 2, 3]]
    assert linalg.hermite_normal_form(a) == linalg.hermite_normal_form(b)


def test_maximal_minors_shape():
    assert linalg.maximal_minors([[1, 0, 0], [0, 1, 0]]) == [1, 0, 0]


def test_to_fraction_rejects_float_garbage():
    with pytest.raises((TypeError, ValueError)):
        linalg.to_fraction(object())
