# cython: language_level=3
"""Compiled twins of the kernels in ``_purepy``."""
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t

from linlog import _purepy

DEF MAX_BITMAP = 1 << 27
DEF MAX_DIM = 16


def digit_sum(object j, object p):
    cdef long long jj, pp, total = 0
    if j < 0:
        raise ValueError("digit_sum needs j >= 0")
    if j >= (1 << 62) or p >= (1 << 31):
        return _purepy.digit_sum(j, p)
    jj = j
    pp = p
    while jj:
        total += jj % pp
        jj //= pp
    return total


def legendre_valuation(object j, object p):
    cdef long long jj, pp, q, total = 0
    if j < 0:
        raise ValueError("legendre_valuation needs j >= 0")
    if j >= (1 << 62) or p >= (1 << 31):
        return _purepy.legendre_valuation(j, p)
    jj = j
    pp = p
    q = pp
    while q <= jj:
        total += jj // q
        if q > jj // pp:
            break
        q *= pp
    return total


def bareiss_rank(rows):
    cdef list a = [list(r) for r in rows]
    cdef Py_ssize_t m, n, col, i, j, rank = 0
    cdef list prow, row
    cdef object pv, prev = 1, f
    if not a:
        return 0
    m = len(a)
    n = len(a[0])
    for col in range(n):
        piv = -1
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        pv = prow[col]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            if f == 0:
                for j in range(col + 1, n):
                    row[j] = (pv * row[j]) // prev
            else:
                for j in range(col + 1, n):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def count_lattice_images(columns, box):
    cdef Py_ssize_t n = len(columns)
    cdef Py_ssize_t d, i, t
    cdef int64_t size = 1
    cdef int64_t lo[MAX_DIM]
    cdef int64_t span[MAX_DIM]
    cdef int64_t stride[MAX_DIM]
    cdef int64_t *step
    cdef int64_t *kk
    cdef int64_t *ee
    cdef int64_t pos, c, hi, count = 0
    cdef unsigned char *seen
    if n != len(box):
        raise ValueError("one box bound per column")
    if n == 0:
        return 1
    d = len(columns[0])
    if d == 0:
        return 1
    if d > MAX_DIM:
        return _purepy.count_lattice_images(columns, box)
    for k in box:
        if k < 0:
            raise ValueError("box bounds must be >= 0")
    for t in range(d):
        lo[t] = 0
        hi = 0
        for i in range(n):
            c = columns[i][t] * box[i]
            if c < 0:
                lo[t] += c
            else:
                hi += c
        span[t] = hi - lo[t] + 1
        if size > MAX_BITMAP // span[t]:
            return _purepy.count_lattice_images(columns, box)
        size *= span[t]
    stride[d - 1] = 1
    for t in range(d - 2, -1, -1):
        stride[t] = stride[t + 1] * span[t + 1]
    step = <int64_t *> malloc(n * sizeof(int64_t))
    kk = <int64_t *> malloc(n * sizeof(int64_t))
    ee = <int64_t *> calloc(n, sizeof(int64_t))
    seen = <unsigned char *> calloc(size, 1)
    if step == NULL or kk == NULL or ee == NULL or seen == NULL:
        free(step); free(kk); free(ee); free(seen)
        raise MemoryError()
    try:
        pos = 0
        for t in range(d):
            pos -= lo[t] * stride[t]
        for i in range(n):
            kk[i] = box[i]
            step[i] = 0
            for t in range(d):
                step[i] += columns[i][t] * stride[t]
        # odometer walk over the box, moving pos incrementally
        while True:
            if not seen[pos]:
                seen[pos] = 1
                count += 1
            i = 0
            while i < n:
                if ee[i] < kk[i]:
                    ee[i] += 1
                    pos += step[i]
                    break
                pos -= step[i] * ee[i]
                ee[i] = 0
                i += 1
            if i == n:
                break
    finally:
        free(step); free(kk); free(ee); free(seen)
    return count
