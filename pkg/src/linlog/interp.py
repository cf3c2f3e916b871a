"""One-variable interpolation inequalities, archimedean and p-adic.

Both checkers bound a function on a disk by its Taylor data at the
integers plus a large-disk term.  The archimedean side works with
exponential polynomials sum p_j(z) exp(w_j z); the p-adic side with
polynomials and truncated power series, where Gauss norms are exact.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import mpmath

from linlog import kernels, linalg
from linlog.errors import DomainError, PreconditionError
from linlog.heights import PPower, is_prime, valuation
from linlog.polybasis import UniPoly

TAIL_RATIO_BITS = 40
HUGE_EXPONENT = Fraction(10**9)  # stands for a divergent tail / the zero value


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def sigma_p(j: int, p: int) -> int:
    """Digit sum of j in base p."""
    _check_prime(p)
    if j < 0:
        raise DomainError("j must be >= 0")
    return kernels.digit_sum(j, p)


def factorial_valuation(j: int, p: int) -> int:
    """v_p(j!) = (j - sigma_p(j)) / (p - 1)."""
    num = j - sigma_p(j, p)
    q, r = divmod(num, p - 1)
    assert r == 0
    return q


def legendre_count(j: int, p: int) -> int:
    """v_p(j!) as sum of floor(j / p^k); independent of :func:`factorial_valuation`."""
    _check_prime(p)
    return kernels.legendre_valuation(j, p)


def r_p_value(p: int) -> tuple[PPower, float]:
    """p^(-1/(p-1)) in exact form and as a float."""
    _check_prime(p)
    v = PPower(p, Fraction(-1, p - 1))
    return v, float(v)


def floor_log(n: int, p: int) -> int:
    """Largest k with p^k <= n, by integer comparison."""
    if n < 1:
        raise DomainError("n must be >= 1")
    k, q = 0, p
    while q <= n:
        k += 1
        q *= p
    return k


def kappa(S1: int, p: int) -> int:
    if S1 < 1:
        raise DomainError("S1 must be >= 1")
    return factorial_valuation(S1, p) + floor_log(S1, p)


# -- p-adic series ------------------------------------------------------------


def _as_ppower(r, p: int) -> PPower:
    """Accept a PPower with base p, or a positive rational that is a power of p."""
    if isinstance(r, PPower):
        if r.base != p:
            raise DomainError("radius must be a power of the series prime")
        return r
    x = linalg.to_fraction(r)
    if x <= 0:
        raise DomainError("radius must be positive")
    e = valuation(x, p)
    if x != Fraction(p) ** e:
        raise DomainError(f"radius {x} is not a power of {p}")
    return PPower(p, Fraction(e))


@dataclass(frozen=True)
class PadicSeries:
    """sum a_n z^n over Q, seen in C_p.

    Coefficients beyond the truncation obey v_p(a_n) >= tail_slope*n + tail_intercept
    when a tail is declared; without a tail the series is a polynomial.
    """

    prime: int
    coeffs: tuple
    radius: PPower | None = None
    tail_slope: Fraction | None = None
    tail_intercept: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        _check_prime(self.prime)
        object.__setattr__(self, "coeffs", tuple(linalg.to_fraction(c) for c in self.coeffs))
        radius = PPower(self.prime, 0) if self.radius is None else _as_ppower(self.radius, self.prime)
        object.__setattr__(self, "radius", radius)
        if self.tail_slope is not None:
            object.__setattr__(self, "tail_slope", Fraction(self.tail_slope))
            object.__setattr__(self, "tail_intercept", Fraction(self.tail_intercept))

    @classmethod
    def from_poly(cls, poly: UniPoly, p: int, radius=1) -> "PadicSeries":
        return cls(p, poly.coeffs, _as_ppower(radius, p))

    @property
    def truncation(self) -> int:
        return len(self.coeffs)

    def at_radius(self, r) -> "PadicSeries":
        return PadicSeries(self.prime, self.coeffs, _as_ppower(r, self.prime), self.tail_slope, self.tail_intercept)

    def tail_bound(self, r: PPower) -> PPower | None:
        """Bound on sup_{n >= N} |a_n| r^n; None for a polynomial."""
        if self.tail_slope is None:
            return None
        e = r.exponent
        rate = e - self.tail_slope  # exponent grows by `rate` per n
        if rate > 0:
            return PPower(self.prime, HUGE_EXPONENT)
        n = self.truncation
        return PPower(self.prime, rate * n - self.tail_intercept)

    def to_json(self) -> dict:
        return {"prime": self.prime, "coeffs": [str(c) for c in self.coeffs], "radius": self.radius.to_json(),
                "tail_slope": None if self.tail_slope is None else str(self.tail_slope),
                "tail_intercept": str(self.tail_intercept)}


def _main_gauss(coeffs: Sequence[Fraction], p: int, r: PPower) -> PPower | None:
    best = None
    for n, c in enumerate(coeffs):
        if c:
            v = PPower(p, -valuation(c, p) + r.exponent * n)
            if best is None or best < v:
                best = v
    return best


def gauss_norm(s: PadicSeries) -> PPower:
    """max_n |a_n|_p r^n over the stored coefficients (exact for polynomials)."""
    if not s.coeffs:
        raise DomainError("empty series")
    main = _main_gauss(s.coeffs, s.prime, s.radius)
    if main is None:
        return PPower(s.prime, -HUGE_EXPONENT)
    return main


@dataclass(frozen=True)
class NormBracket:
    """Ultrametric value known up to a tail: exact when the tail is dominated."""

    lower: PPower | None  # None: no positive lower bound
    upper: PPower | None  # None: the zero value
    exact: bool


def _bracket(main: PPower | None, tail: PPower | None, p: int) -> NormBracket:
    if tail is None:
        return NormBracket(main, main, True)
    # exact when tail < 2^-40 * main, i.e. p^(main - tail) > 2^40
    if main is not None and main.exponent - tail.exponent > TAIL_RATIO_BITS * math.log(2) / math.log(p):
        return NormBracket(main, main, True)
    up = tail if main is None or main < tail else main
    return NormBracket(None, up, False)


def series_norm(s: PadicSeries, r: PPower) -> NormBracket:
    main = _main_gauss(s.coeffs, s.prime, r)
    return _bracket(main, s.tail_bound(r), s.prime)


def taylor_value(s: PadicSeries, h: int, m: int) -> NormBracket:
    """|f^(h)(m)/h!|_p, with the tail bound taken at radius 1 (|m|_p <= 1)."""
    val = sum((comb(n, h) * c * Fraction(m) ** (n - h) for n, c in enumerate(s.coeffs) if n >= h), Fraction(0))
    main = None if val == 0 else PPower(s.prime, -valuation(val, s.prime))
    return _bracket(main, s.tail_bound(PPower(s.prime, 0)), s.prime)


@dataclass(frozen=True)
class CheckResult:
    lhs: float
    rhs: float
    holds: bool | None  # None: inconclusive
    slack: float
    exact: bool = False
    detail: str = ""

    @property
    def status(self) -> str:
        return "inconclusive" if self.holds is None else ("holds" if self.holds else "fails")

    def to_json(self) -> dict:
        out = {"lhs": self.lhs, "rhs": self.rhs, "status": self.status,
               "slack": self.slack if math.isfinite(self.slack) else str(self.slack), "exact": self.exact}
        if self.detail:
            out["detail"] = self.detail
        return out


def check_roy(f: PadicSeries | UniPoly, S1: int, T1: int, r, R, p: int | None = None) -> CheckResult:
    """|f|_r / r^((S1+1)T1) <= p^(kappa T1) max(max |f^(h)(m)/h!|, R^(-(S1+1)T1) |f|_R).

    The Taylor data run over m = 0..S1 and h < T1.  Radii must be powers
    of p so that every quantity is an exact p-power.
    """
    if isinstance(f, UniPoly):
        if p is None:
            raise DomainError("prime needed for a polynomial sample")
        f = PadicSeries.from_poly(f, p)
    p = f.prime
    if S1 < 1 or T1 < 1:
        raise DomainError("S1, T1 must be >= 1")
    r, R = _as_ppower(r, p), _as_ppower(R, p)
    if not (PPower(p, 0) <= r <= R):
        raise PreconditionError("need R >= r >= 1")
    L = (S1 + 1) * T1
    lhs = series_norm(f, r)
    far = series_norm(f, R)
    vals = [taylor_value(f, h, m) for m in range(S1 + 1) for h in range(T1)]
    k = kappa(S1, p)
    exact = lhs.exact and far.exact and all(v.exact for v in vals)
    # lhs upper bound vs rhs lower bound
    lhs_up = None if lhs.upper is None else lhs.upper.exponent - r.exponent * L
    lows = [v.lower.exponent for v in vals if v.lower is not None]
    if far.lower is not None:
        lows.append(far.lower.exponent - R.exponent * L)
    rhs_low = None if not lows else k * T1 + max(lows)
    logp = math.log(p)

    def val(e) -> float:
        return 0.0 if e is None else _pow_float(p, e)

    if lhs_up is None:
        return CheckResult(0.0, val(rhs_low), True, math.inf, exact)
    if rhs_low is not None and lhs_up <= rhs_low:
        return CheckResult(val(lhs_up), val(rhs_low), True, float(rhs_low - lhs_up) * logp, exact)
    if exact:
        slack = -math.inf if rhs_low is None else float(rhs_low - lhs_up) * logp
        return CheckResult(val(lhs_up), val(rhs_low), False, slack, True)
    return CheckResult(val(lhs_up), val(rhs_low), None, math.nan, False, "tail bound not dominated")


def _pow_float(p: int, e: Fraction) -> float:
    x = float(e) * math.log(p)
    return math.inf if x > 709 else math.exp(x)


# -- archimedean --------------------------------------------------------------


@dataclass(frozen=True)
class ExpPolySample:
    """f(z) = sum_j p_j(z) exp(w_j z) with rational frequencies w_j."""

    terms: tuple  # ((UniPoly, Fraction), ...)

    def __post_init__(self) -> None:
        terms = tuple((p if isinstance(p, UniPoly) else UniPoly(p), linalg.to_fraction(w)) for p, w in self.terms)
        if not terms:
            raise DomainError("at least one term is needed")
        if len({w for _, w in terms}) != len(terms):
            raise DomainError("frequencies must be distinct")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def poly(cls, p: UniPoly) -> "ExpPolySample":
        return cls(((p, Fraction(0)),))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p, _ in self.terms)

    def __call__(self, z: complex) -> complex:
        return sum(p.eval_complex(z) * cmath.exp(float(w) * z) for p, w in self.terms)

    def derivative(self) -> "ExpPolySample":
        return ExpPolySample(tuple((p.derivative() + p * w, w) for p, w in self.terms))

    def majorant(self, r: float) -> float:
        """sum_j (sum_k |c_jk| r^k) exp(|w_j| r), an upper bound for |f|_r."""
        return math.fsum(sum(abs(float(c)) * r**k for k, c in enumerate(p.coeffs)) * math.exp(abs(float(w)) * r)
                         for p, w in self.terms)

    def taylor_rationals(self, h: int, m: int) -> list[tuple[Fraction, Fraction]]:
        """f^(h)(m)/h! as sum_j q_j exp(w_j m), returned as (q_j, w_j)."""
        out = []
        for p, w in self.terms:
            shifted = p.taylor_at(m).coeffs
            q = sum((shifted[i] * w ** (h - i) / factorial(h - i) for i in range(min(h, len(shifted) - 1) + 1)),
                    Fraction(0))
            out.append((q, w))
        return out

    def to_json(self) -> dict:
        return {"terms": [{"poly": p.to_json(), "freq": str(w)} for p, w in self.terms]}


def sampled_max(f: ExpPolySample, r: float, samples: int) -> float:
    return max(abs(f(cmath.rect(r, 2 * math.pi * k / samples))) for k in range(samples))


def disk_norm_upper(f: ExpPolySample, r: float, samples: int = 512) -> float:
    """Rigorous upper bound of |f|_r: sampled max plus a Lipschitz margin, capped by the majorant."""
    if f.is_zero():
        return 0.0
    lip = f.derivative().majorant(r)
    up = sampled_max(f, r, samples) * (1 + 1e-12) + math.pi * r / samples * lip
    return min(up, f.majorant(r) * (1 + 1e-12))


def taylor_abs_lower(f: ExpPolySample, h: int, m: int, prec: int = 256) -> float:
    """Lower bound of |f^(h)(m)/h!| from a 256-bit interval (0 if it straddles 0)."""
    iv = mpmath.iv
    with mpmath.workprec(prec):
        acc = iv.mpf(0)
        for q, w in f.taylor_rationals(h, m):
            if q:
                acc += iv.mpf(q.numerator) / q.denominator * iv.exp(iv.mpf(w.numerator) / w.denominator * m)
        lo, hi = acc.a, acc.b
        if lo <= 0 <= hi:
            return 0.0
        return float(min(abs(lo), abs(hi))) * (1 - 1e-15)


def check_waldschmidt(f: ExpPolySample, S1: int, T1: int, r: float, R: float,
                      samples: int = 512) -> CheckResult:
    """|f|_r <= 2|f|_R (2r/R)^(T1 S1) + 5 (9r/S1)^(T1 S1) max_{m<S1, h<T1} |f^(h)(m)/h!|.

    Left side is a rigorous upper bound and the right side a lower bound,
    so a reported success is certain.
    """
    if S1 < 1 or T1 < 1:
        raise DomainError("S1, T1 must be >= 1")
    if not (R >= r >= 2 * S1):
        raise PreconditionError("need R >= r >= 2 S1")
    if f.is_zero():
        return CheckResult(0.0, 0.0, True, math.inf)
    n = T1 * S1
    lhs = disk_norm_upper(f, r, samples)
    far = sampled_max(f, R, samples) * (1 - 1e-12)
    data = max(taylor_abs_lower(f, h, m) for m in range(S1) for h in range(T1))
    rhs = 2 * far * (2 * r / R) ** n + 5 * (9 * r / S1) ** n * data
    slack = math.log(rhs) - math.log(lhs) if lhs > 0 and rhs > 0 else (math.inf if lhs == 0 else -math.inf)
    return CheckResult(lhs, rhs, lhs <= rhs, slack)


def sample_from_json(data: dict):
    """A p-adic sample ({"prime", "coeffs", ...}) or a poly-exp sample ({"terms": [...]})."""
    if "terms" in data:
        return ExpPolySample(tuple((UniPoly(t["poly"]), t.get("freq", 0)) for t in data["terms"]))
    return PadicSeries(int(data["prime"]), tuple(data["coeffs"]), PPower(int(data["prime"]), 0),
                       data.get("tail_slope"), data.get("tail_intercept", 0))
