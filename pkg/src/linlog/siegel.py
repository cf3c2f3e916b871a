"""Small-height bases of rational subspaces and orthogonal complements.

For a primitive integer vector the L² height is half the log of its
squared Euclidean norm, so short lattice vectors are low-height vectors.
:func:`small_basis` reduces the lattice V ∩ Z^m, picks short independent
vectors and certifies

    sum of h_L2(v_i) <= h(V) + d log d

as the integer inequality prod |v_i|^2 <= |Plücker|^2 * d^(2d), where
|Plücker|^2 is the Gram determinant of a lattice basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import mpmath

from linlog import linalg
from linlog.errors import DomainError, InconsistencyError
from linlog.heights import LogValue, ProjVector, Subspace, l2_height, schmidt_height

DEFAULT_SEARCH_BOX = 3
MAX_COMBINATIONS = 10**6
_MODULUS = 2**61 - 1


@dataclass(frozen=True)
class SiegelBasis:
    vectors: tuple  # tuple of ProjVector
    heights: tuple  # tuple of LogValue
    total: LogValue
    certificate: bool

    @property
    def integer_vectors(self) -> list[list[int]]:
        return [list(v.primitive_form) for v in self.vectors]

    def to_json(self) -> dict:
        return {
            "basis": self.integer_vectors,
            "heights": [h.to_json() for h in self.heights],
            "total": self.total.to_json(),
            "certificate": self.certificate,
        }


def _norm2(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def _canonical(v: Sequence[int]) -> tuple[int, ...] | None:
    if not any(v):
        return None
    return tuple(linalg.normalize_sign(linalg.primitive(v)))


def _greedy_independent(candidates: list[tuple[int, ...]], d: int, modulus: int | None = _MODULUS) -> list[tuple[int, ...]]:
    # independence mod a prime implies independence over Q; exact pass if that comes up short
    chosen: list[tuple[int, ...]] = []
    reduced: list[tuple[int, list]] = []  # (pivot, row with 1 at pivot)
    for v in sorted(set(candidates), key=lambda w: (_norm2(w), w)):
        if modulus:
            r = [x % modulus for x in v]
            for piv, row in reduced:
                c = r[piv]
                if c:
                    r = [(a - c * b) % modulus for a, b in zip(r, row)]
        else:
            r = [Fraction(x) for x in v]
            for piv, row in reduced:
                c = r[piv]
                if c:
                    r = [a - c * b for a, b in zip(r, row)]
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = pow(r[piv], -1, modulus) if modulus else 1 / r[piv]
        reduced.append((piv, [x * inv % modulus for x in r] if modulus else [x * inv for x in r]))
        chosen.append(v)
        if len(chosen) == d:
            return chosen
    if modulus:
        return _greedy_independent(candidates, d, None)
    return chosen


def certificate_holds(s: Subspace, vectors: Sequence[Sequence[int]]) -> bool:
    """Integer form of sum h_L2(v_i) <= h(V) + d log d."""
    d = s.dim
    lhs = 1
    for v in vectors:
        lhs *= _norm2(linalg.primitive(v))
    rhs = s.gram_det * d ** (2 * d)
    return lhs <= rhs


def _combination_candidates(basis: Sequence[Sequence[int]], box: int) -> list[tuple[int, ...]]:
    out = []
    for coeffs in product(range(-box, box + 1), repeat=len(basis)):
        v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(basis[0]))]
        key = _canonical(v)
        if key is not None:
            out.append(key)
    return out


def small_basis(s: Subspace, search_box: int = DEFAULT_SEARCH_BOX) -> SiegelBasis:
    """A certified basis of ``s`` made of short primitive integer vectors."""
    d = s.dim
    if d == 0:
        raise DomainError("the zero subspace has no basis")
    lattice = [list(r) for r in s.basis]
    cands = [_canonical(v) for v in lattice]
    for u, w in combinations(lattice, 2):
        cands.append(_canonical([a + b for a, b in zip(u, w)]))
        cands.append(_canonical([a - b for a, b in zip(u, w)]))
    chosen = _greedy_independent([c for c in cands if c is not None], d)
    box = 1
    while not certificate_holds(s, chosen):
        if box > search_box or (2 * box + 1) ** d > MAX_COMBINATIONS:
            raise InconsistencyError(f"no certified basis found for {s} within box {search_box}")
        chosen = _greedy_independent(_combination_candidates(lattice, box), d)
        box += 1
    vectors = tuple(ProjVector(v) for v in chosen)
    heights = tuple(l2_height(v) for v in vectors)
    total = sum(heights, LogValue.zero())
    return SiegelBasis(vectors, heights, total, True)


def dual_subspace(s: Subspace) -> Subspace:
    """Orthogonal complement for the standard dot product."""
    m = s.ambient_dim
    if s.dim == 0:
        return Subspace.full(m)
    if s.dim == m:
        return Subspace.zero(m)
    # the integer kernel is already saturated
    return Subspace(m, [linalg.normalize_sign(v) for v in linalg.integer_kernel(s.basis, m)])


def refined_slack(d: int) -> Fraction:
    """sum_{j=1}^{d-1} sum_{i=1}^{j} 1/(2i)."""
    return sum((Fraction(1, 2 * i) for j in range(1, d) for i in range(1, j + 1)), Fraction(0))


def verify_refined_bound(s: Subspace, basis: SiegelBasis, epsilon: float) -> bool:
    """sum h_L2(v_i) <= h(V) + refined_slack(d) + epsilon, at 256-bit intervals.

    Returns True only when the inequality is certified.
    """
    if len(basis.vectors) != s.dim:
        raise DomainError("basis size differs from the subspace dimension")
    if any(len(v) != s.ambient_dim for v in basis.vectors):
        raise DomainError("basis vectors have the wrong length")
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    gap = basis.total - schmidt_height(s)  # half-log of an exact rational
    ratio = gap.squared_argument
    bound = refined_slack(s.dim)
    with mpmath.workprec(256):
        lhs = mpmath.iv.log(mpmath.iv.mpf(ratio.numerator) / ratio.denominator) / 2
        rhs = mpmath.iv.mpf(bound.numerator) / bound.denominator + mpmath.iv.mpf(epsilon)
        return bool(lhs.b <= rhs.a)


def exhaustive_min_total(s: Subspace, box: int) -> LogValue | None:
    """Smallest total L² height over bases drawn from integer vectors of V in [-box, box]^m.

    Brute-force reference for small cases; None if the box contains no basis.
    """
    m, d = s.ambient_dim, s.dim
    pts = []
    for v in product(range(-box, box + 1), repeat=m):
        key = _canonical(v)
        if key is not None and key not in pts and s.contains(key):
            pts.append(key)
    best = None
    for combo in combinations(pts, d):
        if linalg.rank_rational(combo) == d:
            prod_norm = 1
            for v in combo:
                prod_norm *= _norm2(v)
            if best is None or prod_norm < best:
                best = prod_norm
    return None if best is None else LogValue(best, half=True)
