"""Exact auxiliary-function systems on G_a x G_m^n.

Exponentials at integer multiples of a rational point are rational, so
the whole interpolation system of a Baker-type construction can be
written down and solved exactly at small sizes.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial, lcm
from typing import Sequence

from linlog import kernels, linalg, siegel
from linlog.errors import DomainError, InconsistencyError
from linlog.heights import LogValue, Subspace, l2_height, weil_height
from linlog.polybasis import (Archimedean, UniPoly, WeightQuery, binomial_delta, divided_derivative,
                              matveev_family, monomial_family, weight_aleph)

# -- integrality of divided derivatives ---------------------------------------

BivPoly = dict  # (i, j) -> int, for sum c X^i Y^j


_TERM = re.compile(r"^([+-]?)(\d*)\*?((?:[XY](?:\^\d+)?\*?)*)$")


def parse_poly(text: str) -> BivPoly:
    """Parse an integer polynomial in X, Y such as ``"X^2*Y - 3*X + 1"``."""
    src = text.replace(" ", "")
    if not src:
        raise DomainError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", src)
    if "".join(terms) != src:
        raise DomainError(f"cannot parse polynomial {text!r}")
    out: BivPoly = {}
    for t in terms:
        m = _TERM.match(t)
        if not m:
            raise DomainError(f"cannot parse term {t!r}")
        sign, digits, mono = m.groups()
        if not digits and not mono:
            raise DomainError(f"cannot parse term {t!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        i = j = 0
        for var, exp in re.findall(r"([XY])(?:\^(\d+))?", mono):
            k = int(exp) if exp else 1
            if var == "X":
                i += k
            else:
                j += k
        out[(i, j)] = out.get((i, j), 0) + c
    return {k: v for k, v in out.items() if v}


def _grouped(P: BivPoly, b: int) -> dict[int, int]:
    """Coefficients of exp(e z) in P(exp z, exp(bz)), grouped by e = i + j b."""
    g: dict[int, int] = {}
    for (i, j), c in P.items():
        if i < 0 or j < 0:
            raise DomainError("exponents must be >= 0")
        g[i + j * b] = g.get(i + j * b, 0) + int(c)
    return {e: c for e, c in g.items() if c}


def _binom_general(e: int, ell: int) -> int:
    """Coefficient of T^ell in (1+T)^e, for any integer e."""
    num = 1
    for k in range(ell):
        num *= e - k
    return num // factorial(ell)


def coeff_derivative(P: BivPoly, b: int, ell: int) -> Fraction:
    """(1/ell!) (d/dz)^ell P(e^z, e^(bz)) at 0, i.e. sum c e^ell / ell!."""
    return sum((Fraction(c * e**ell, factorial(ell)) for e, c in _grouped(P, b).items()), Fraction(0))


def coeff_binomial_sum(P: BivPoly, b: int, ell: int, delta=binomial_delta) -> Fraction:
    """sum c Δ_ell(e) over the grouped exponents."""
    d = delta(ell)
    return sum((c * d(Fraction(e)) for e, c in _grouped(P, b).items()), Fraction(0))


def coeff_t_series(P: BivPoly, b: int, ell: int) -> int:
    """Coefficient of T^ell after substituting exp(z) = 1 + T."""
    return sum(c * _binom_general(e, ell) for e, c in _grouped(P, b).items())


def vanishing_order(P: BivPoly, b: int, lmax: int) -> int | None:
    """Order of z -> P(e^z, e^(bz)) at 0; None if it is at least lmax + 1."""
    g = _grouped(P, b)
    if not g:
        return None
    for ell in range(lmax + 1):
        if sum(c * e**ell for e, c in g.items()) != 0:
            return ell
    return None


@dataclass(frozen=True)
class IntegralityWitness:
    ell: int
    coeff_derivative: Fraction
    coeff_binomial_sum: Fraction
    coeff_Tseries: Fraction

    @property
    def agree(self) -> bool:
        return self.coeff_derivative == self.coeff_binomial_sum == self.coeff_Tseries

    @property
    def integral(self) -> bool:
        return self.coeff_derivative.denominator == 1

    def to_json(self) -> dict:
        def j(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {"ell": self.ell, "derivative": j(self.coeff_derivative),
                "binomial_sum": j(self.coeff_binomial_sum), "t_series": j(self.coeff_Tseries)}


@dataclass(frozen=True)
class IntegralityReport:
    order: int | None  # None: at least lmax + 1
    lmax: int
    witnesses: tuple

    def to_json(self) -> dict:
        return {"vanishing_order": self.order if self.order is not None else f">{self.lmax}",
                "witnesses": [w.to_json() for w in self.witnesses]}


def fact_integrality(P: BivPoly, b: int, lmax: int, delta=binomial_delta) -> IntegralityReport:
    """Three-way witnesses for ell <= min(order, lmax).

    Raises :class:`InconsistencyError` if the three coefficients disagree
    or the one at the vanishing order is not an integer.
    """
    if not P or all(c == 0 for c in P.values()):
        raise DomainError("P must be nonzero")
    if lmax < 0:
        raise DomainError("lmax must be >= 0")
    order = vanishing_order(P, b, lmax)
    top = lmax if order is None else min(order, lmax)
    wits = []
    for ell in range(top + 1):
        w = IntegralityWitness(ell, coeff_derivative(P, b, ell), coeff_binomial_sum(P, b, ell, delta),
                               Fraction(coeff_t_series(P, b, ell)))
        if not w.agree:
            raise InconsistencyError(f"integrality routes disagree at ell={ell}: {w.to_json()}")
        wits.append(w)
    if order is not None and order <= lmax and not wits[order].integral:
        raise InconsistencyError(f"non-integral coefficient at the vanishing order {order}")
    return IntegralityReport(order, lmax, tuple(wits))


# -- evaluation systems -------------------------------------------------------


@dataclass(frozen=True)
class SystemSpec:
    """Data of an interpolation system on G_a x G_m^n.

    ``directions`` are integer vectors of Z^n spanning V; the derivation
    space is W = t_{G_a} + V.  ``d_flat`` selects the Matveev family (None:
    monomials).
    """

    degrees: tuple  # (D0, D1, ..., Dn)
    alpha: tuple  # n nonzero rationals
    directions: tuple  # vectors spanning V in Z^n
    S1: int
    T1: int
    d_flat: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "alpha", tuple(linalg.to_fraction(a) for a in self.alpha))
        object.__setattr__(self, "directions", tuple(tuple(int(x) for x in v) for v in self.directions))
        n = len(self.alpha)
        if len(self.degrees) != n + 1:
            raise DomainError("need degrees (D0, D1, ..., Dn)")
        if any(d < 0 for d in self.degrees):
            raise DomainError("degrees must be >= 0")
        if any(a == 0 for a in self.alpha):
            raise DomainError("alpha coordinates must be nonzero")
        if any(len(v) != n for v in self.directions):
            raise DomainError("directions must live in Z^n")
        if self.S1 < 0 or self.T1 < 0:
            raise DomainError("S1, T1 must be >= 0")
        rank = linalg.rank_rational(self.directions) if self.directions else 0
        if rank != len(self.directions):
            raise DomainError("directions must be independent")
        if n - rank < 1:
            raise DomainError("codim V must be >= 1 (t = 0 is degenerate)")

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def W_dim(self) -> int:
        return 1 + len(self.directions)

    def family(self) -> list[UniPoly]:
        D0 = self.degrees[0]
        return monomial_family(D0) if self.d_flat is None else matveev_family(self.d_flat, D0)

    def columns(self) -> list[tuple[int, ...]]:
        return list(product(*(range(d + 1) for d in self.degrees)))

    def rows(self) -> list[tuple[int, tuple]]:
        taus = [t for t in product(range(self.T1 + 1), repeat=self.W_dim) if sum(t) <= self.T1]
        return [(s, t) for s in range(self.S1 + 1) for t in taus]

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "alpha": [str(a) for a in self.alpha],
                "directions": [list(v) for v in self.directions], "S1": self.S1, "T1": self.T1,
                "d_flat": self.d_flat}

    @classmethod
    def from_json(cls, data: dict) -> "SystemSpec":
        return cls(tuple(data["degrees"]), tuple(data["alpha"]), tuple(tuple(v) for v in data.get("directions", [])),
                   int(data["S1"]), int(data["T1"]), data.get("d_flat"))


@dataclass
class EvaluationMatrix:
    spec: SystemSpec | None
    rows: list  # row labels (s, tau)
    cols: list  # column labels lambda
    entries: list  # list of lists of Fraction

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_json(self) -> dict:
        def j(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {"rows": [[s, list(t)] for s, t in self.rows], "cols": [list(c) for c in self.cols],
                "entries": [[j(x) for x in r] for r in self.entries]}


def build_system(spec: SystemSpec) -> EvaluationMatrix:
    """Entry ((s, tau), lambda) = P_{lambda0}^{(tau0)}(s)/tau0! * prod_j <lambda, v_j>^tau_j / tau_j! * prod alpha_i^(s lambda_i)."""
    fam = spec.family()
    cols = spec.columns()
    rows = spec.rows()
    dd_cache: dict = {}
    entries = []
    for s, tau in rows:
        row = []
        for lam in cols:
            key = (lam[0], tau[0], s)
            if key not in dd_cache:
                dd_cache[key] = divided_derivative(fam[lam[0]], tau[0], s)
            val = dd_cache[key]
            if val:
                for v, tj in zip(spec.directions, tau[1:]):
                    if tj:
                        freq = sum(a * b for a, b in zip(lam[1:], v))
                        val *= Fraction(freq**tj, factorial(tj))
                for a, li in zip(spec.alpha, lam[1:]):
                    val *= a ** (s * li)
            row.append(val)
        entries.append(row)
    return EvaluationMatrix(spec, rows, cols, entries)


def _integer_rows(M: EvaluationMatrix) -> list[list[int]]:
    out = []
    for r in M.entries:
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def system_rank(M: EvaluationMatrix) -> int:
    """Exact rank by fraction-free elimination on denominator-cleared rows."""
    if not M.entries or not M.cols:
        return 0
    return kernels.bareiss_rank(_integer_rows(M))


def system_rank_rational(M: EvaluationMatrix) -> int:
    """Same rank by Gauss-Jordan with rational pivots."""
    if not M.entries or not M.cols:
        return 0
    return linalg.rank_rational(M.entries)


# -- auxiliary polynomial -----------------------------------------------------


@dataclass
class AuxPolynomial:
    coeffs: dict  # lambda -> Fraction, one coefficient equal to 1
    cols: list
    vector: tuple  # primitive integer vector
    height: LogValue

    def to_json(self) -> dict:
        def j(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {"coeffs": [{"lambda": list(k), "value": j(v)} for k, v in sorted(self.coeffs.items())],
                "height_l2": self.height.to_json()}


@dataclass
class HeightReport:
    height: float
    shape: float
    ratio: float
    c: float
    terms: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"height_l2": self.height, "shape": self.shape, "ratio": self.ratio, "c": self.c, "terms": self.terms}


def kernel_vectors(M: EvaluationMatrix) -> list[list[int]]:
    ncols = len(M.cols)
    if not any(any(x for x in r) for r in M.entries):
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    return [linalg.primitive(v) for v in linalg.nullspace(M.entries, ncols)]


def shape_bound(M: EvaluationMatrix, c: float = 10.0, chi_H: float = 1.0) -> tuple[float, dict]:
    """c (log D0 + max D_i + weight + sum D_i max h(s alpha_i) + T (1 + chi_H + sum h_L2(w_j)))."""
    spec = M.spec
    if spec is None:
        raise DomainError("shape needs the system data")
    D0 = spec.degrees[0]
    aleph = weight_aleph(WeightQuery(tuple(spec.family()), spec.T1, max(spec.S1, 1), Archimedean(math.e))).hi
    pts = sum(d * spec.S1 * weil_height([1, a]).approx for d, a in zip(spec.degrees[1:], spec.alpha))
    dirs = [[1] + [0] * spec.n] + [[0] + list(v) for v in spec.directions]
    wh = sum(l2_height(w).approx for w in dirs)
    terms = {"log_D0": math.log(max(D0, 1)), "max_D": max(spec.degrees[1:], default=0), "weight": aleph,
             "points": pts, "derivatives": spec.T1 * (1 + chi_H + wh)}
    return c * sum(terms.values()), terms


def construct_aux_poly(M: EvaluationMatrix, c: float = 10.0, chi_H: float = 1.0,
                       search_box: int = siegel.DEFAULT_SEARCH_BOX) -> tuple[AuxPolynomial, HeightReport | None]:
    """Smallest-height kernel vector from a certified small basis of the kernel."""
    ncols = len(M.cols)
    kern = kernel_vectors(M)
    if not kern:
        raise DomainError("the system has a zero kernel")
    K = Subspace.span(kern, ncols)
    basis = siegel.small_basis(K, search_box)
    idx = min(range(len(basis.vectors)), key=lambda i: (basis.heights[i], basis.integer_vectors[i]))
    vec = basis.integer_vectors[idx]
    if any(sum(a * x for a, x in zip(row, vec)) for row in M.entries):
        raise InconsistencyError("kernel vector does not solve the system")
    lead = next(x for x in vec if x)
    coeffs = {col: Fraction(x, lead) for col, x in zip(M.cols, vec) if x}
    poly = AuxPolynomial(coeffs, list(M.cols), tuple(vec), basis.heights[idx])
    if M.spec is None:
        return poly, None
    shape, terms = shape_bound(M, c, chi_H)
    h = poly.height.approx
    return poly, HeightReport(h, shape, h / shape if shape else math.inf, c, terms)
