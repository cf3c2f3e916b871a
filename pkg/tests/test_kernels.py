import itertools
import math
import os
import subprocess
import sys

from hypothesis import given, settings, strategies as st
import sympy

from linlog import kernels

primes = st.sampled_from([2, 3, 5, 7, 11, 13, 97])


def legendre_by_factorial(j, p):
    f, v = math.factorial(j), 0
    while f % p == 0:
        f //= p
        v += 1
    return v


@given(j=st.integers(0, 400), p=primes)
def test_legendre_matches_factorial(backend, j, p):
    assert backend.legendre_valuation(j, p) == legendre_by_factorial(j, p)


@given(j=st.integers(0, 10**12), p=primes)
def test_digit_sum(backend, j, p):
    digits = sympy.ntheory.digits(j, p)[1:]
    assert backend.digit_sum(j, p) == sum(digits)


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=6))
def test_bareiss_rank_matches_sympy(backend, rows):
    assert backend.bareiss_rank([list(r) for r in rows]) == sympy.Matrix(rows).rank()


def test_bareiss_rank_large_entries(backend):
    rows = [[10**30 + i * j for j in range(5)] for i in range(5)]
    assert backend.bareiss_rank(rows) == sympy.Matrix(rows).rank()


def test_bareiss_rank_empty(backend):
    assert backend.bareiss_rank([]) == 0
    assert backend.bareiss_rank([[0, 0], [0, 0]]) == 0


def images_oracle(columns, box):
    pts = set()
    for e in itertools.product(*(range(k + 1) for k in box)):
        pts.add(tuple(sum(ei * c[t] for ei, c in zip(e, columns)) for t in range(len(columns[0]))))
    return len(pts)


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=n, max_size=n),
    st.lists(st.integers(0, 3), min_size=n, max_size=n))))
def test_lattice_images(backend, data):
    columns, box = data
    assert backend.count_lattice_images(columns, box) == images_oracle(columns, box)


def test_pure_python_switch():
    env = dict(os.environ, LINLOG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import linlog.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")
