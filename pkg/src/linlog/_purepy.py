"""Pure-Python reference implementations of the hot kernels.

Each function here has a compiled twin in ``_speedups.pyx`` with the same
signature and the same results; ``linlog.kernels`` picks one at import.
"""
from __future__ import annotations

from itertools import product


def digit_sum(j: int, p: int) -> int:
    """Sum of the base-``p`` digits of ``j``."""
    if j < 0:
        raise ValueError("digit_sum needs j >= 0")
    total = 0
    while j:
        j, r = divmod(j, p)
        total += r
    return total


def legendre_valuation(j: int, p: int) -> int:
    """p-adic valuation of j! as the sum of floor(j / p^k)."""
    if j < 0:
        raise ValueError("legendre_valuation needs j >= 0")
    total = 0
    q = p
    while q <= j:
        total += j // q
        q *= p
    return total


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    The input is not modified.
    """
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            for j in range(col + 1, n):
                row[j] = (pv * row[j] - f * prow[j]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def count_lattice_images(columns: list[list[int]], box: list[int]) -> int:
    """Number of distinct points sum_i e_i * columns[i] with 0 <= e_i <= box[i].

    ``columns`` holds n integer vectors of a common length d.  This is the
    dimension of a multigraded piece of a toric coordinate ring.
    """
    if len(columns) != len(box):
        raise ValueError("one box bound per column")
    if not columns:
        return 1
    d = len(columns[0])
    seen = {tuple([0] * d)}
    for col, k in zip(columns, box):
        if k < 0:
            raise ValueError("box bounds must be >= 0")
        steps = [tuple(e * c for c in col) for e in range(k + 1)]
        seen = {tuple(a + b for a, b in zip(pt, st)) for pt in seen for st in steps}
    return len(seen)


def count_lattice_images_naive(columns: list[list[int]], box: list[int]) -> int:
    """Same count by full enumeration of the box (slow reference)."""
    if not columns:
        return 1
    d = len(columns[0])
    seen = set()
    for e in product(*(range(k + 1) for k in box)):
        seen.add(tuple(sum(ei * col[t] for ei, col in zip(e, columns)) for t in range(d)))
    return len(seen)
