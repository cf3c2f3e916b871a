"""Places of Q, local absolute values and exact heights.

Heights of rational points and subspaces are logarithms of algebraic
numbers.  They are carried as :class:`LogValue` objects, which keep the
argument of the logarithm exactly, so identities between heights are
checked as identities between integers or rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from linlog import linalg
from linlog.errors import DomainError, FactorizationError

DEFAULT_TRIAL_BOUND = 10**8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Place:
    """A place of Q: ``prime=None`` is the archimedean one."""

    prime: int | None = None
    local_degree: int = 1

    def __post_init__(self) -> None:
        if self.prime is not None and not is_prime(self.prime):
            raise DomainError(f"{self.prime} is not prime")
        if self.local_degree != 1:
            raise DomainError("local degrees over Q are 1")

    @classmethod
    def archimedean(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


@dataclass(frozen=True)
class PPower:
    """The positive real ``base ** exponent`` with a rational exponent."""

    base: int
    exponent: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    @property
    def is_rational(self) -> bool:
        return self.exponent.denominator == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.base) ** int(self.exponent)

    @property
    def log(self) -> float:
        return float(self.exponent) * math.log(self.base)

    def __float__(self) -> float:
        return math.exp(self.log)

    def __mul__(self, other: "PPower") -> "PPower":
        if not isinstance(other, PPower) or other.base != self.base:
            return NotImplemented
        return PPower(self.base, self.exponent + other.exponent)

    def __pow__(self, k) -> "PPower":
        return PPower(self.base, self.exponent * Fraction(k))

    def __lt__(self, other: "PPower") -> bool:
        return self._key(other) < 0

    def __le__(self, other: "PPower") -> bool:
        return self._key(other) <= 0

    def _key(self, other: "PPower") -> Fraction:
        if other.base != self.base:
            raise DomainError("compare p-powers with a common base only")
        return self.exponent - other.exponent

    def __str__(self) -> str:
        return f"{self.base}^({self.exponent})"

    def to_json(self) -> dict:
        return {"base": self.base, "exponent": fraction_to_json(self.exponent), "approx": float(self)}


def fraction_to_json(x: Fraction):
    """Integers as JSON numbers, other rationals as ``"num/den"`` strings."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class LogValue:
    """The real number ``log(argument)``, or ``0.5*log(argument)`` if ``half``.

    Comparisons and sums are exact: two values are compared through
    ``exp(2*value)``, which is always rational.
    """

    __slots__ = ("argument", "half")

    def __init__(self, argument, half: bool = False):
        arg = linalg.to_fraction(argument)
        if arg <= 0:
            raise DomainError("LogValue argument must be positive")
        self.argument = arg
        self.half = bool(half)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(1)

    @property
    def squared_argument(self) -> Fraction:
        """``exp(2 * value)``, exact."""
        return self.argument if self.half else self.argument * self.argument

    @property
    def approx(self) -> float:
        v = math.log(self.argument.numerator) - math.log(self.argument.denominator)
        return 0.5 * v if self.half else v

    def __float__(self) -> float:
        return self.approx

    def __add__(self, other: "LogValue") -> "LogValue":
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        if not isinstance(other, LogValue):
            return NotImplemented
        if not self.half and not other.half:
            return LogValue(self.argument * other.argument)
        return LogValue(self.squared_argument * other.squared_argument, half=True)

    __radd__ = __add__

    def __sub__(self, other: "LogValue") -> "LogValue":
        if not self.half and not other.half:
            return LogValue(self.argument / other.argument)
        return LogValue(self.squared_argument / other.squared_argument, half=True)

    def __neg__(self) -> "LogValue":
        return LogValue(1 / self.argument, self.half)

    def _cmp(self, other) -> int:
        if not isinstance(other, LogValue):
            raise TypeError("LogValue compares with LogValue only")
        a, b = self.squared_argument, other.squared_argument
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogValue):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self) -> int:
        return hash(self.squared_argument)

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __repr__(self) -> str:
        pre = "½·" if self.half else ""
        return f"LogValue({pre}log {self.argument} ≈ {self.approx:.6g})"

    def to_json(self) -> dict:
        return {"arg": fraction_to_json(self.argument), "half": self.half, "approx": self.approx}


class ProjVector:
    """A nonzero rational vector up to scaling, with its primitive form."""

    __slots__ = ("coords", "primitive_form")

    def __init__(self, coords: Iterable):
        cs = tuple(linalg.to_fraction(c) for c in coords)
        if not cs or all(c == 0 for c in cs):
            raise DomainError("projective vector must be nonzero")
        self.coords = cs
        self.primitive_form = tuple(linalg.primitive(cs))

    def __len__(self) -> int:
        return len(self.coords)

    def __repr__(self) -> str:
        return f"ProjVector({list(self.primitive_form)})"


def _as_proj(f) -> ProjVector:
    return f if isinstance(f, ProjVector) else ProjVector(f)


class Subspace:
    """A rational subspace of Q^m.

    ``basis`` is an LLL-reduced basis of the lattice V ∩ Z^m, so its rows
    are primitive and its Plücker vector is primitive.  ``plucker`` is
    computed on first use and sign-normalized (first nonzero entry
    positive).  Equality is equality of subspaces, decided on the Hermite
    form of the lattice basis.
    """

    __slots__ = ("ambient_dim", "basis", "_plucker", "_key")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence[int]], plucker: Sequence[int] | None = None):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self._plucker = None if plucker is None else tuple(plucker)
        self._key = None

    @classmethod
    def span(cls, rows: Sequence[Sequence], ambient_dim: int | None = None) -> "Subspace":
        """Subspace spanned by ``rows`` (a spanning set, dependencies allowed)."""
        if not all(type(x) is int for r in rows for x in r):
            rows = [[linalg.to_fraction(x) for x in r] for r in rows]
        if ambient_dim is None:
            if not rows:
                raise DomainError("ambient dimension needed for an empty spanning set")
            ambient_dim = len(rows[0])
        if any(len(r) != ambient_dim for r in rows):
            raise DomainError("rows must have the ambient dimension")
        nonzero = [linalg.primitive(r) for r in rows if any(x != 0 for x in r)]
        if not nonzero:
            return cls.zero(ambient_dim)
        basis = [linalg.normalize_sign(r) for r in linalg.saturate(nonzero, ambient_dim)]
        return cls(ambient_dim, basis)

    @property
    def plucker(self) -> tuple:
        if self._plucker is None:
            plucker = linalg.normalize_sign(linalg.maximal_minors([list(r) for r in self.basis]))
            if math.gcd(*plucker) != 1:
                raise AssertionError("saturated basis must have a primitive Plücker vector")
            self._plucker = tuple(plucker)
        return self._plucker

    @property
    def gram_det(self) -> int:
        """det(B B^T), equal to the squared norm of the Plücker vector."""
        if not self.basis:
            return 1
        b = self.basis
        return linalg.det_int([[sum(x * y for x, y in zip(u, v)) for v in b] for u in b])

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(tuple(r) for r in linalg.hermite_normal_form(self.basis))
        return self._key

    @classmethod
    def from_basis(cls, rows: Sequence[Sequence]) -> "Subspace":
        """Like :meth:`span` but the rows must be linearly independent."""
        if not rows:
            raise DomainError("empty basis; use Subspace.zero")
        if linalg.rank_rational(rows) != len(rows):
            raise DomainError("basis rows are linearly dependent")
        return cls.span(rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), (1,))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span([[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence) -> bool:
        if self.dim == 0:
            return all(linalg.to_fraction(x) == 0 for x in vec)
        return linalg.rank_rational(list(self.basis) + [list(vec)]) == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.key) == (other.ambient_dim, other.key)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.key))

    def __repr__(self) -> str:
        return f"Subspace(m={self.ambient_dim}, basis={[list(r) for r in self.basis]})"

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [list(r) for r in self.basis], "plucker": list(self.plucker)}


# -- valuations and factorization -------------------------------------------


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = linalg.to_fraction(x)
    if x == 0:
        raise DomainError("valuation of zero")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def factorize(n: int, bound: int = DEFAULT_TRIAL_BOUND) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division up to ``bound``."""
    n = abs(int(n))
    if n == 0:
        raise DomainError("cannot factor zero")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise FactorizationError(f"cofactor {n} not resolved below trial bound {bound}")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def support_primes(x, bound: int = DEFAULT_TRIAL_BOUND) -> list[int]:
    """Primes p with v_p(x) != 0."""
    x = linalg.to_fraction(x)
    ps = set(factorize(x.numerator, bound)) | set(factorize(x.denominator, bound))
    return sorted(ps)


# -- local absolute values ---------------------------------------------------


def local_abs(x, v: Place):
    """|x|_v.  Finite places give an exact :class:`PPower` ``p^(-v_p(x))``."""
    x = linalg.to_fraction(x)
    if x == 0:
        raise DomainError("|0|_v is not a positive real")
    if v.is_archimedean:
        return abs(x)
    return PPower(v.prime, Fraction(-valuation(x, v.prime)))


def _local_abs_fraction(x: Fraction, v: Place) -> Fraction:
    a = local_abs(x, v)
    return a if isinstance(a, Fraction) else a.to_fraction()


def product_formula_residual(x, bound: int = DEFAULT_TRIAL_BOUND) -> Fraction:
    """Product of |x|_v over all places; equals 1 for every nonzero rational."""
    x = linalg.to_fraction(x)
    if x == 0:
        raise DomainError("product formula needs x != 0")
    residual = abs(x)
    for p in support_primes(x, bound):
        residual *= _local_abs_fraction(x, Place.finite(p))
    return residual


def weil_height(f) -> LogValue:
    """Absolute logarithmic Weil height of a projective point of Q^m."""
    f = _as_proj(f)
    return LogValue(max(abs(a) for a in f.primitive_form))


def l2_height(f) -> LogValue:
    """L² height: half the log of the squared norm of the primitive form."""
    f = _as_proj(f)
    return LogValue(sum(a * a for a in f.primitive_form), half=True)


def sandwich_check(f) -> bool:
    """Check h ≤ h_L2 ≤ h + ½·log m as integer inequalities."""
    f = _as_proj(f)
    mx = max(abs(a) for a in f.primitive_form)
    sq = sum(a * a for a in f.primitive_form)
    return mx * mx <= sq <= len(f) * mx * mx


def schmidt_height(s: Subspace) -> LogValue:
    """L² height of the primitive Plücker vector; zero for {0} and Q^m."""
    return LogValue(s.gram_det, half=True)


def liouville_gap(x, v: Place) -> bool:
    """Check log|x|_v ≥ −h({1, x}) exactly."""
    x = linalg.to_fraction(x)
    if x == 0:
        raise DomainError("Liouville inequality needs x != 0")
    h_arg = max(abs(x.numerator), x.denominator)
    return _local_abs_fraction(x, v) * h_arg >= 1


def height_of_values(values: Iterable) -> LogValue:
    """Weil height of a finite family of rationals, read as one projective point.

    An all-zero family is given height 0.
    """
    vals = [linalg.to_fraction(v) for v in values]
    if all(v == 0 for v in vals):
        return LogValue.zero()
    return weil_height(ProjVector(vals))


def rational_height(x) -> LogValue:
    """h({1, x}) = log max(|num|, den)."""
    x = linalg.to_fraction(x)
    return LogValue(max(abs(x.numerator), x.denominator))
