"""Exact linear algebra over the rationals and the integers.

Everything here works on plain lists of ``int`` or ``Fraction``.  The
integer routines (kernel, saturation, Hermite form, LLL) are what the
height and subgroup code builds on.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from linlog.errors import DomainError

Matrix = list[list[Fraction]]


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or string like ``"3/5"`` into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {x!r}") from exc
    if isinstance(x, float):
        return Fraction(x)
    raise DomainError(f"not a rational: {x!r}")


def fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[to_fraction(x) for x in r] for r in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (zero rows dropped)."""
    a = fraction_matrix(rows)
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_rational(rows: Sequence[Sequence]) -> int:
    """Rank by Gaussian elimination with rational pivots."""
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : A x = 0} over the rationals, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    r, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def primitive(vec: Sequence) -> list[int]:
    """Integer multiple of ``vec`` with coprime entries (sign kept)."""
    if all(type(x) is int for x in vec):
        g = gcd(*vec)
        if g == 0:
            raise DomainError("zero vector has no primitive form")
        return [x // g for x in vec]
    fr = [to_fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        raise DomainError("zero vector has no primitive form")
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    return [x // g for x in ints]


def normalize_sign(vec: list[int]) -> list[int]:
    """Flip the sign so that the first nonzero entry is positive."""
    for x in vec:
        if x != 0:
            return vec if x > 0 else [-y for y in vec]
    return vec


def det_int(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def maximal_minors(rows: Sequence[Sequence[int]]) -> list[int]:
    """All d x d minors of a d x m integer matrix, columns in lexicographic order."""
    d = len(rows)
    if d == 0:
        return [1]
    m = len(rows[0])
    return [det_int([[r[c] for c in cols] for r in rows]) for cols in combinations(range(m), d)]


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> list:
    return [sum(a * b for a, b in zip(r, vec)) for r in rows]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A basis of the lattice {x in Z^n : A x = 0}.

    Unimodular column operations bring A to column echelon form; the
    transform columns past the last pivot span the kernel.  The result is
    LLL-reduced so entries stay small.
    """
    m = len(rows)
    bcols = [[int(rows[i][j]) for i in range(m)] for j in range(ncols)]
    ucols = [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    k = 0
    for i in range(m):
        while k < ncols:
            nz = [j for j in range(k, ncols) if bcols[j][i] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(bcols[j][i]), j))
            bcols[k], bcols[j0] = bcols[j0], bcols[k]
            ucols[k], ucols[j0] = ucols[j0], ucols[k]
            piv = bcols[k][i]
            clean = True
            for j in range(k + 1, ncols):
                v = bcols[j][i]
                if v:
                    q = v // piv
                    if q:
                        bcols[j] = [a - q * b for a, b in zip(bcols[j], bcols[k])]
                        ucols[j] = [a - q * b for a, b in zip(ucols[j], ucols[k])]
                    if bcols[j][i]:
                        clean = False
            if clean:
                k += 1
                break
    kernel = ucols[k:]
    return lll_reduce(kernel) if len(kernel) > 1 else kernel


def saturate(rows: Sequence[Sequence[int]], m: int) -> list[list[int]]:
    """Basis of (rational span of rows) intersected with Z^m."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not rows:
        return []
    perp = integer_kernel(rows, m)
    if not perp:
        return [[int(i == j) for j in range(m)] for i in range(m)]
    return integer_kernel(perp, m)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows removed.

    Pivots are positive and entries above a pivot lie in [0, pivot).  Two
    integer matrices have the same HNF exactly when their rows span the
    same lattice.
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[i0] = a[i0], a[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [row for row in a[:r] if any(row)]


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> list[list[int]]:
    """LLL reduction of linearly independent integer vectors.

    All-integer variant (Cohen, Algorithm 2.6.7): ``d[i]`` is the Gram
    determinant of the first i vectors and ``lam[k][j] = d[j+1] mu[k][j]``.
    """
    b = [list(map(int, v)) for v in basis]
    n = len(b)
    if n < 2:
        return b
    p, q = delta.numerator, delta.denominator
    lam = [[0] * n for _ in range(n)]
    d = [1] + [0] * n

    def gram_row(k: int) -> None:
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            elif u == 0:
                raise DomainError("lll_reduce needs linearly independent vectors")
            else:
                d[k + 1] = u

    def size_reduce(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            r = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - r * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= r * d[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        m = lam[k][k - 1]
        new_d = (d[k - 1] * d[k + 1] + m * m) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - m * t) // d[k]
            lam[i][k - 1] = (new_d * t + m * lam[i][k]) // d[k + 1]
        d[k] = new_d

    gram_row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gram_row(k)
        size_reduce(k, k - 1)
        if q * d[k + 1] * d[k - 1] < p * d[k] ** 2 - q * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return b
