"""Univariate polynomial families on the additive group and their weight.

The binomial polynomials X(X+1)...(X+n-1)/n! take integer values at
integers.  Powers of them give the Matveev family, whose derivative values
have small height; :func:`weight_aleph` measures that height together with
a sup-norm term on a disk.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from linlog import linalg
from linlog.errors import DomainError
from linlog.heights import Place, height_of_values, valuation


class UniPoly:
    """Polynomial with rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [linalg.to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int) -> "UniPoly":
        return cls([0] * k + [1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def taylor_at(self, at) -> "UniPoly":
        """Coefficients of h -> p(at + h); the k-th one is p^(k)(at)/k!."""
        at = linalg.to_fraction(at)
        n = len(self.coeffs)
        out = []
        for k in range(n):
            out.append(sum(comb(j, k) * self.coeffs[j] * at ** (j - k) for j in range(k, n)))
        return UniPoly(out)

    def to_json(self) -> list:
        return [_frac_json(c) for c in self.coeffs]


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def binomial_delta(n: int) -> UniPoly:
    """X(X+1)...(X+n-1)/n!, with the empty product 1 for n = 0."""
    if n < 0:
        raise DomainError("binomial_delta needs n >= 0")
    p = UniPoly([1])
    for k in range(n):
        p = p * UniPoly([k, 1])
    return p * Fraction(1, factorial(n))


def matveev_delta(d_flat: int, lambda0: int) -> UniPoly:
    """Delta_{d_flat}^q * Delta_r where lambda0 = q*d_flat + r."""
    if d_flat < 1:
        raise DomainError("matveev_delta needs d_flat >= 1")
    if lambda0 < 0:
        raise DomainError("matveev_delta needs lambda0 >= 0")
    q, r = divmod(lambda0, d_flat)
    return binomial_delta(d_flat) ** q * binomial_delta(r)


def matveev_family(d_flat: int, d0: int) -> list[UniPoly]:
    return [matveev_delta(d_flat, k) for k in range(d0 + 1)]


def monomial_family(d0: int) -> list[UniPoly]:
    return [UniPoly.monomial(k) for k in range(d0 + 1)]


def divided_derivative(p: UniPoly, t0: int, at) -> Fraction:
    """p^(t0)(at)/t0!, i.e. the coefficient of h^t0 in p(at + h)."""
    if t0 < 0:
        raise DomainError("derivative order must be >= 0")
    at = linalg.to_fraction(at)
    n = len(p.coeffs)
    return sum((comb(j, t0) * p.coeffs[j] * at ** (j - t0) for j in range(t0, n)), Fraction(0))


def divided_derivative_poly(p: UniPoly, t0: int) -> UniPoly:
    """The polynomial z -> p^(t0)(z)/t0!."""
    return UniPoly([comb(j, t0) * c for j, c in enumerate(p.coeffs)][t0:])


@dataclass(frozen=True)
class Archimedean:
    """Disk radius e_param * S at the archimedean place."""

    e_param: float

    def __post_init__(self) -> None:
        if not self.e_param >= math.e * (1 - 1e-12):
            raise DomainError("archimedean radius parameter must be >= e")


@dataclass(frozen=True)
class Ultrametric:
    """Disk radius r_param at the p-adic place."""

    r_param: float
    prime: int

    def __post_init__(self) -> None:
        if not self.r_param > 1:
            raise DomainError("ultrametric radius must be > 1")
        Place.finite(self.prime)


RadiusMode = Archimedean | Ultrametric


@dataclass(frozen=True)
class WeightQuery:
    family: tuple
    T: int
    S: int
    radius: RadiusMode
    D: int = 1
    samples: int = 256

    def __post_init__(self) -> None:
        if not self.family:
            raise DomainError("empty polynomial family")
        if self.T < 0 or self.S < 1 or self.D < 1:
            raise DomainError("need T >= 0, S >= 1, D >= 1")


@dataclass(frozen=True)
class WeightEnclosure:
    lo: float
    hi: float
    height_term: float
    sup_lo: float
    sup_hi: float
    exact_sup: bool = False
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "height_term": self.height_term,
            "sup_term": [self.sup_lo, self.sup_hi],
            "sup_exact": self.exact_sup,
        }


def derivative_values(family: Sequence[UniPoly], T: int, S: int) -> list[Fraction]:
    """All P^(t0)(s)/t0! for P in the family, 0 <= s <= S, 0 <= t0 <= T."""
    vals = []
    for p in family:
        top = min(T, max(p.degree, 0))
        for s in range(S + 1):
            shifted = p.taylor_at(s).coeffs
            vals.extend(shifted[: top + 1])
            vals.extend([Fraction(0)] * (T - top if T > top else 0))
    return vals


def _circle_max(p: UniPoly, radius: float, samples: int) -> float:
    """Largest |p(z)| over equally spaced points of the circle |z| = radius."""
    if p.is_zero():
        return 0.0
    if p.degree * math.log(max(radius, 1.0)) > 600:
        import mpmath

        cs = [mpmath.mpf(c.numerator) / c.denominator for c in p.coeffs]
        best = max(abs(mpmath.polyval(cs[::-1], mpmath.mpc(radius) * mpmath.expjpi(mpmath.mpf(2 * k) / samples)))
                   for k in range(samples))
        return float(best) if best < mpmath.mpf(1e300) else math.inf
    best = 0.0
    for k in range(samples):
        z = cmath.rect(radius, 2 * math.pi * k / samples)
        best = max(best, abs(p.eval_complex(z)))
    return best


def _log_majorant(p: UniPoly, radius: float) -> float:
    """log of sum |c_j| radius^j, computed in log space."""
    terms = [math.log(abs(c.numerator)) - math.log(c.denominator) + j * math.log(radius)
             for j, c in enumerate(p.coeffs) if c]
    if not terms:
        return -math.inf
    top = max(terms)
    return top + math.log(math.fsum(math.exp(t - top) for t in terms))


def _log_or_neg_inf(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def weight_aleph(q: WeightQuery) -> WeightEnclosure:
    """Enclosure [lo, hi] of the weight of a polynomial family.

    Height part: exact Weil height of all divided derivative values at
    0..S up to order T.  Sup part: (1/D)·log of the largest divided
    derivative on the disk.  At an archimedean place the disk max is
    bracketed by circle sampling and a coefficient-sum majorant; at a
    p-adic place it is the Gauss norm, which is exact.
    """
    family = list(q.family)
    h = height_of_values(derivative_values(family, q.T, q.S)).approx
    derivs = []
    for p in family:
        for t0 in range(min(q.T, max(p.degree, 0)) + 1):
            derivs.append(divided_derivative_poly(p, t0))
    if isinstance(q.radius, Archimedean):
        radius = q.radius.e_param * q.S
        log_hi = max(_log_majorant(d, radius) for d in derivs)
        log_lo = min(max(_log_or_neg_inf(_circle_max(d, radius, q.samples)) for d in derivs), log_hi)
        return WeightEnclosure(h + log_lo / q.D, h + log_hi / q.D, h, log_lo / q.D, log_hi / q.D)
    p_ = q.radius.prime
    log_r = math.log(q.radius.r_param)
    best = -math.inf
    for d in derivs:
        for j, c in enumerate(d.coeffs):
            if c:
                best = max(best, -valuation(c, p_) * math.log(p_) + j * log_r)
    sup = best / q.D
    return WeightEnclosure(h + sup, h + sup, h, sup, sup, exact_sup=True)


def weight_bound_matveev(D0: int, d_flat: int, T: int, S: int, radius: RadiusMode, D: int = 1, c: float = 10.0) -> float:
    """Closed-form upper bound for the weight of the Matveev family."""
    if d_flat < 1:
        raise DomainError("d_flat must be >= 1")
    if c < 1:
        raise DomainError("constant c must be >= 1")
    first = D0 * math.log(math.e + S / d_flat)
    second = min(D0, T) * d_flat
    if isinstance(radius, Archimedean):
        third = D0 / D * math.log(1 + radius.e_param * S / d_flat)
    else:
        third = D0 / D * math.log(radius.r_param)
    return c * (first + second + third)
