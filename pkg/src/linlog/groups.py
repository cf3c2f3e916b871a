"""Commutative group descriptors, subtori and the obstruction functional.

The ambient group is G0 x G with G0 the additive group and G a product of
factors.  Connected subgroups are handled for the toric part: a subgroup
is G0' x T' where G0' is 0 or G0 and T' is a subtorus of G_m^n given by a
saturated cocharacter lattice.  Closures are taken in a product of
projective lines, one per G0 or G_m coordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod
from typing import Iterable, Sequence

import mpmath

from linlog import linalg
from linlog.errors import DegenerateError, DomainError, InconsistencyError, PreconditionError, UnsupportedError
from linlog.heights import Subspace
from linlog.kernels import count_lattice_images

KINDS = ("additive", "multiplicative", "abelian")


@dataclass(frozen=True)
class Factor:
    kind: str
    dim: int = 1
    rho: int = 1
    deg: int = 1

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown factor kind {self.kind!r}")
        if self.dim < 1 or self.deg < 1:
            raise DomainError("factor dimension and degree must be >= 1")
        expected = 2 if self.kind == "abelian" else 1
        if self.rho != expected:
            raise DomainError(f"{self.kind} factors have analytic order {expected}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "dim": self.dim, "rho": self.rho, "deg": self.deg}


@dataclass(frozen=True)
class GroupDescriptor:
    """The group G = G_1 x ... x G_n; G0 is implicit at index 0."""

    factors: tuple
    y: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise DomainError("G needs at least one factor")
        if self.y not in (0, 1):
            raise DomainError("y must be 0 or 1")
        if self.y == 0 and any(f.kind == "additive" for f in self.factors):
            raise DomainError("y = 0 requires a semi-abelian G (no additive factor)")

    @classmethod
    def torus(cls, n: int, y: int = 0) -> "GroupDescriptor":
        return cls(tuple(Factor("multiplicative") for _ in range(n)), y)

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def g(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def is_toric(self) -> bool:
        return all(f.kind == "multiplicative" and f.dim == 1 for f in self.factors)

    @property
    def toric_indices(self) -> list[int]:
        """Factor indices (1-based, as multidegree variables) of the G_m factors."""
        return [i + 1 for i, f in enumerate(self.factors) if f.kind == "multiplicative" and f.dim == 1]

    def tangent_offsets(self) -> list[int]:
        """First tangent coordinate of each factor in Q^(1+g); G0 is coordinate 0."""
        out, pos = [], 1
        for f in self.factors:
            out.append(pos)
            pos += f.dim
        return out

    def degree(self) -> int:
        """deg(G0 x G) for the O(1,...,1) polarization of the product."""
        return full_multidegree(self, [1] * (self.n + 1))

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors], "y": self.y}

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        return cls(tuple(Factor(**f) for f in data["factors"]), int(data.get("y", 0)))


def full_multidegree(group: GroupDescriptor, X: Sequence) -> Fraction:
    """𝓗(G0 x G; X0..Xn) = (1+g)!/prod(g_i!) * prod(deg G_i) * X0 * prod X_i^g_i."""
    if len(X) != group.n + 1:
        raise DomainError("one variable per factor, G0 included")
    coeff = Fraction(factorial(1 + group.g), prod(factorial(f.dim) for f in group.factors))
    coeff *= prod(f.deg for f in group.factors)
    val = coeff * linalg.to_fraction(X[0])
    for f, x in zip(group.factors, X[1:]):
        val *= linalg.to_fraction(x) ** f.dim
    return val


@dataclass(frozen=True)
class SubgroupDescriptor:
    """Connected subgroup G0' x T' of G0 x G_m^n_m.

    ``torus`` is the Hermite normal form of the saturated cocharacter
    lattice of T' in Z^n_m.
    """

    n_m: int
    has_ga: bool
    torus: tuple

    @classmethod
    def from_lattice(cls, rows: Sequence[Sequence[int]], n_m: int | None = None) -> "SubgroupDescriptor":
        """Build from lattice rows of length 1 + n_m (column 0 is G0).

        A row touching column 0 must be the G0 unit row (±1, 0, ..., 0).
        Rows are saturated, so dependent or non-primitive rows are fine.
        """
        rows = [list(map(int, r)) for r in rows]
        if n_m is None:
            if not rows:
                raise DomainError("n_m needed for an empty lattice")
            n_m = len(rows[0]) - 1
        has_ga = False
        torus_rows = []
        for r in rows:
            if len(r) != n_m + 1:
                raise DomainError("lattice rows must have length 1 + n_m")
            if r[0] != 0:
                if abs(r[0]) != 1 or any(r[1:]):
                    raise DomainError("a row meeting the G0 column must be (±1, 0, ..., 0)")
                has_ga = True
            elif any(r[1:]):
                torus_rows.append(r[1:])
        return cls.make(n_m, has_ga, torus_rows)

    @classmethod
    def make(cls, n_m: int, has_ga: bool, torus_rows: Sequence[Sequence[int]]) -> "SubgroupDescriptor":
        sat = linalg.saturate(torus_rows, n_m) if torus_rows else []
        return cls(n_m, bool(has_ga), tuple(tuple(r) for r in linalg.hermite_normal_form(sat)))

    @classmethod
    def trivial(cls, n_m: int) -> "SubgroupDescriptor":
        return cls(n_m, False, ())

    @classmethod
    def whole(cls, n_m: int) -> "SubgroupDescriptor":
        return cls.make(n_m, True, [[int(i == j) for j in range(n_m)] for i in range(n_m)])

    @property
    def dim(self) -> int:
        return int(self.has_ga) + len(self.torus)

    @property
    def lattice(self) -> list[list[int]]:
        """Rows over the coordinates (G0, G_m, ..., G_m)."""
        rows = [[1] + [0] * self.n_m] if self.has_ga else []
        return rows + [[0] + list(r) for r in self.torus]

    def tangent(self, group: GroupDescriptor | None = None) -> Subspace:
        """Tangent space t_{G'} inside Q^(1+g)."""
        if group is None:
            group = GroupDescriptor.torus(self.n_m)
        tor = [i - 1 for i in group.toric_indices]
        if len(tor) != self.n_m:
            raise DomainError("subgroup does not match the toric part of the group")
        offs = group.tangent_offsets()
        m = 1 + group.g
        rows = []
        for r in self.lattice:
            v = [0] * m
            v[0] = r[0]
            for k, fi in enumerate(tor):
                v[offs[fi]] = r[1 + k]
            rows.append(v)
        return Subspace.span(rows, m) if rows else Subspace.zero(m)

    def sort_key(self) -> tuple:
        return (self.dim, int(self.has_ga), self.torus)

    def contains(self, other: "SubgroupDescriptor") -> bool:
        if other.has_ga and not self.has_ga:
            return False
        if not other.torus:
            return True
        if not self.torus:
            return False
        return linalg.rank_rational(list(self.torus) + list(other.torus)) == len(self.torus)

    def __str__(self) -> str:
        return f"G'(ga={int(self.has_ga)}, torus={[list(r) for r in self.torus]})"

    def to_json(self) -> dict:
        return {"lattice": self.lattice, "n_m": self.n_m, "dim": self.dim}


@dataclass(frozen=True)
class MultiDegree:
    """Coefficients of 𝓗 as a map from sorted index tuples to integers."""

    dim: int
    coeffs: dict = field(hash=False)

    @property
    def total(self) -> int:
        return sum(self.coeffs.values())

    def evaluate(self, X: Sequence):
        return sum((c * prod((X[i] for i in S), start=1) for S, c in self.coeffs.items()), start=0)

    def evaluate_exact(self, X: Sequence) -> Fraction:
        X = [linalg.to_fraction(x) for x in X]
        return sum((c * prod((X[i] for i in S), start=Fraction(1)) for S, c in self.coeffs.items()), Fraction(0))

    def to_json(self) -> dict:
        return {"dim": self.dim, "terms": [{"vars": list(S), "coeff": c} for S, c in sorted(self.coeffs.items())]}


def multidegree(sub: SubgroupDescriptor, index_map: Sequence[int] | None = None) -> MultiDegree:
    """𝓗(G'): the coefficient of prod_{i in S} X_i is d! |det(lattice columns S)|.

    ``index_map`` renames lattice columns to factor indices (default: the
    identity, column 0 being G0).
    """
    if not isinstance(sub, SubgroupDescriptor):
        raise UnsupportedError("multidegrees are implemented for subtori only")
    lat = sub.lattice
    d = sub.dim
    ncols = sub.n_m + 1
    if index_map is None:
        index_map = list(range(ncols))
    if d == 0:
        return MultiDegree(0, {(): 1})
    coeffs = {}
    for cols in combinations(range(ncols), d):
        det = linalg.det_int([[r[c] for c in cols] for r in lat])
        if det:
            coeffs[tuple(sorted(index_map[c] for c in cols))] = factorial(d) * abs(det)
    return MultiDegree(d, coeffs)


def subgroup_multidegree_value(sub: SubgroupDescriptor, group: GroupDescriptor, X: Sequence) -> Fraction:
    """𝓗(G'; X0..Xn) with X indexed by the factors of ``group``."""
    index_map = [0] + group.toric_indices
    return multidegree(sub, index_map).evaluate_exact(X)


# -- brute-force references ---------------------------------------------------


def hilbert_count(sub: SubgroupDescriptor, k: Sequence[int]) -> int:
    """Dimension of the degree-k piece of the multigraded coordinate ring of the closure."""
    lat = sub.lattice
    if not lat:
        return 1
    columns = [[r[c] for r in lat] for c in range(sub.n_m + 1)]
    return count_lattice_images(columns, list(k))


def _leading_value(sub: SubgroupDescriptor, k: Sequence[int], start: int = 2, limit: int = 80) -> int:
    """d-th finite difference of alpha -> H(alpha*k), once it is stable."""
    d = sub.dim
    history: list[int] = []
    alpha = start
    cache: dict[int, int] = {}

    def h(a: int) -> int:
        if a not in cache:
            cache[a] = hilbert_count(sub, [a * x for x in k])
        return cache[a]

    while alpha <= limit:
        diff = sum((-1) ** (d - j) * math.comb(d, j) * h(alpha + j) for j in range(d + 1))
        history.append(diff)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return diff
        alpha += 1
    raise InconsistencyError(f"Hilbert differences did not stabilize for {sub}")


def multidegree_bruteforce(sub: SubgroupDescriptor) -> MultiDegree:
    """𝓗(G') from Hilbert-function counts alone (no determinants).

    The leading form is multilinear of degree d, so its coefficients follow
    from its values at the points 1 + 1_T, T a d-subset, by solving a
    linear system.
    """
    d = sub.dim
    ncols = sub.n_m + 1
    if d == 0:
        return MultiDegree(0, {(): 1})
    subsets = list(combinations(range(ncols), d))
    rows, rhs = [], []
    for T in subsets:
        k = [2 if i in T else 1 for i in range(ncols)]
        rows.append([2 ** len(set(S) & set(T)) for S in subsets])
        rhs.append(_leading_value(sub, k))
    aug = [r + [v] for r, v in zip(rows, rhs)]
    red, piv = linalg.rref(aug)
    if len(piv) != len(subsets) or piv[-1] == len(subsets):
        raise InconsistencyError("interpolation system is singular")
    coeffs = {}
    for S, row in zip(subsets, red):
        c = row[-1]
        if c.denominator != 1:
            raise InconsistencyError(f"non-integral multidegree coefficient {c}")
        if c:
            coeffs[S] = int(c)
    return MultiDegree(d, coeffs)


def hilbert_degree(sub: SubgroupDescriptor) -> int:
    """deg of the closure from the diagonal Hilbert function."""
    return _leading_value(sub, [1] * (sub.n_m + 1)) if sub.dim else 1


def slice_degree(sub: SubgroupDescriptor) -> int:
    """deg of the closure by counting points of generic coordinate slices.

    For each d-subset S the slice {x_i = c_i, i in S} meets the subtorus in
    as many points as the index of the lattice spanned by the columns S,
    which is counted as the integer points of their half-open
    parallelepiped.
    """
    d = sub.dim
    if d == 0:
        return 1
    lat = sub.lattice
    total = 0
    for cols in combinations(range(sub.n_m + 1), d):
        gens = [[lat[r][c] for r in range(d)] for c in cols]  # d vectors in Z^d
        if linalg.rank_rational(gens) < d:
            continue
        # solve y = coefficients: x = sum y_j gens_j with 0 <= y_j < 1
        inv_rows = _inverse([[gens[j][i] for j in range(d)] for i in range(d)])
        lo = [sum(min(0, g[i]) for g in gens) for i in range(d)]
        hi = [sum(max(0, g[i]) for g in gens) for i in range(d)]
        count = 0
        for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            y = linalg.mat_vec(inv_rows, x)
            if all(0 <= t < 1 for t in y):
                count += 1
        total += count
    return factorial(d) * total


def _inverse(mat: list[list[int]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(mat)]
    red, _ = linalg.rref(aug)
    return [r[n:] for r in red]


# -- enumeration --------------------------------------------------------------


def enumerate_subtori(n_m: int, bound: int = 3) -> list[tuple]:
    """Saturated sublattices of Z^n_m spanned by vectors with entries in [-bound, bound].

    Returned as HNF row tuples, deduplicated, sorted by (dim, HNF).
    """
    vecs = []
    seen = set()
    for v in product(range(-bound, bound + 1), repeat=n_m):
        if any(v):
            key = tuple(linalg.normalize_sign(linalg.primitive(v)))
            if key not in seen:
                seen.add(key)
                vecs.append(key)
    out = [()]
    current: dict[tuple, list] = {(): []}
    for _d in range(1, n_m):
        nxt: dict[tuple, list] = {}
        for gens in current.values():
            for v in vecs:
                new_gens = gens + [list(v)]
                minors = linalg.maximal_minors(new_gens)
                if not any(minors):
                    continue
                g = math.gcd(*minors)
                key = tuple(linalg.normalize_sign([x // g for x in minors]))
                if key not in nxt:
                    nxt[key] = new_gens
        level = [tuple(tuple(r) for r in linalg.hermite_normal_form(linalg.saturate(g, n_m)))
                 for g in nxt.values()]
        out.extend(sorted(level))
        current = nxt
    if n_m:
        out.append(tuple(tuple(int(i == j) for j in range(n_m)) for i in range(n_m)))
    return out


def enumerate_family(n_m: int, bound: int = 3) -> list[SubgroupDescriptor]:
    """All G0' x T' with T' from :func:`enumerate_subtori`."""
    fam = []
    for tor in enumerate_subtori(n_m, bound):
        for ga in (False, True):
            fam.append(SubgroupDescriptor(n_m, ga, tor))
    return sorted(fam, key=SubgroupDescriptor.sort_key)


# -- orbit counts -------------------------------------------------------------


def _check_point(point: Sequence, n_m: int) -> list[Fraction]:
    p = [linalg.to_fraction(x) for x in point]
    if len(p) != n_m:
        raise DomainError("point must have one coordinate per G_m factor")
    if any(x == 0 for x in p):
        raise DomainError("G_m coordinates must be nonzero")
    return p


def character_value(point: Sequence[Fraction], c: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for x, e in zip(point, c):
        out *= x**e
    return out


def orbit_count(point: Sequence | None, sub: SubgroupDescriptor, S: int) -> int:
    """Number of classes of s*q, 0 <= s <= S, modulo G', where q = (1, point).

    ``point=None`` stands for a point with no multiple in any member
    (non-toric data), giving S + 1.
    """
    if S < 0:
        raise DomainError("S must be >= 0")
    if point is None:
        return S + 1
    p = _check_point(point, sub.n_m)
    if not sub.has_ga:
        return S + 1
    chars = linalg.integer_kernel(list(sub.torus), sub.n_m) if sub.torus else [
        [int(i == j) for j in range(sub.n_m)] for i in range(sub.n_m)]
    values = [character_value(p, c) for c in chars]
    if all(v == 1 for v in values):
        period = 1
    elif all(v in (1, -1) for v in values):
        period = 2
    else:
        return S + 1
    return min(period, S + 1)


def orbit_count_bruteforce(point: Sequence, sub: SubgroupDescriptor, S: int) -> int:
    """Same count by testing k*q in G' through prime exponent vectors."""
    from linlog.heights import factorize

    p = _check_point(point, sub.n_m)
    primes = sorted({q for x in p for q in (*factorize(x.numerator), *factorize(x.denominator))})
    expo = [[_vp(x, q) for x in p] for q in primes]
    signs = [0 if x > 0 else 1 for x in p]
    span_rows = list(sub.torus)

    def in_span(v: list[int]) -> bool:
        if not any(v):
            return True
        if not span_rows:
            return False
        return linalg.rank_rational(span_rows + [v]) == len(span_rows)

    def sign_ok(k: int) -> bool:
        eps = [(s * k) % 2 for s in signs]
        if not any(eps):
            return True
        # eps/2 must pair integrally with every character trivial on T'
        chars = linalg.integer_kernel(span_rows, sub.n_m) if span_rows else [
            [int(i == j) for j in range(sub.n_m)] for i in range(sub.n_m)]
        return all(sum(e * c for e, c in zip(eps, ch)) % 2 == 0 for ch in chars)

    def member(k: int) -> bool:
        if k == 0:
            return True
        if not sub.has_ga:
            return False
        return all(in_span([k * e for e in row]) for row in expo) and sign_ok(k)

    reps: list[int] = []
    for s in range(S + 1):
        if not any(member(s - r) for r in reps):
            reps.append(s)
    return len(reps)


def _vp(x: Fraction, q: int) -> int:
    from linlog.heights import valuation

    return valuation(x, q)


# -- obstruction functional ---------------------------------------------------


@dataclass(frozen=True)
class ObstructionParams:
    """T̃, C0, D̃0..D̃n (one per factor, G0 first) and S."""

    T_tilde: Fraction
    C0: int
    D_tilde: tuple
    S: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "T_tilde", linalg.to_fraction(self.T_tilde))
        object.__setattr__(self, "D_tilde", tuple(linalg.to_fraction(x) for x in self.D_tilde))
        if self.T_tilde <= 0 or any(x <= 0 for x in self.D_tilde):
            raise DomainError("T̃ and D̃_i must be positive")
        if self.C0 < 1 or self.S < 0:
            raise DomainError("need C0 >= 1 and S >= 0")


@dataclass(frozen=True)
class MemberEval:
    sub: SubgroupDescriptor
    lam: int  # λ'
    r: int  # r' = codim
    orbit: int
    q_value: Fraction  # A^(r'-λ'), exact
    b_exponent: int  # log B = log(q_value) / b_exponent

    def log_b(self, prec: int = 80):
        with mpmath.workprec(prec):
            q = self.q_value
            return mpmath.iv.log(mpmath.iv.mpf(q.numerator) / q.denominator) / self.b_exponent

    @property
    def A(self) -> float:
        return float(mpmath.power(mpmath.mpf(self.q_value.numerator) / self.q_value.denominator,
                                  mpmath.mpf(1) / (self.r - self.lam)))

    @property
    def B(self) -> float:
        return float(mpmath.exp(self.log_b(256).mid))

    def to_json(self) -> dict:
        return {"subgroup": self.sub.to_json(), "lambda": self.lam, "codim": self.r, "orbit": self.orbit,
                "A": self.A, "B": self.B}


def _lambda_and_codim(sub: SubgroupDescriptor, W: Subspace, group: GroupDescriptor) -> tuple[int, int]:
    t = sub.tangent(group)
    m = 1 + group.g
    if W.ambient_dim != m:
        raise DomainError("W must live in the tangent space of G0 x G")
    rows = list(t.basis) + list(W.basis)
    sum_dim = linalg.rank_rational(rows) if rows else 0
    if sum_dim == m:
        raise PreconditionError(f"t_G' + W is the full tangent space for {sub}")
    inter = t.dim + W.dim - sum_dim
    lam = W.dim - inter
    r = m - t.dim
    if r == lam:
        raise DegenerateError("r' = λ' makes the exponent 1/(r'-λ') undefined")
    return lam, r


def evaluate_member(sub: SubgroupDescriptor, params: ObstructionParams, point: Sequence, W: Subspace,
                    group: GroupDescriptor | None = None) -> MemberEval:
    if group is None:
        group = GroupDescriptor.torus(sub.n_m)
    if len(params.D_tilde) != group.n + 1:
        raise DomainError("need one D̃ per factor, G0 included")
    lam, r = _lambda_and_codim(sub, W, group)
    orb = orbit_count(point, sub, params.S)
    h_sub = subgroup_multidegree_value(sub, group, params.D_tilde)
    h_full = full_multidegree(group, params.D_tilde)
    q = params.T_tilde**lam * orb * h_sub / (params.C0 * h_full)
    if q <= 0:
        raise DegenerateError("A(G') vanishes")
    b_exp = (r - lam) if q >= 1 else r
    return MemberEval(sub, lam, r, orb, q, b_exp)


def obstruction_AB(sub: SubgroupDescriptor, params: ObstructionParams, point: Sequence, W: Subspace,
                   group: GroupDescriptor | None = None) -> tuple[float, float]:
    """A(G') and B(G') = A^((r'-λ')/r') * max(1, A)^(λ'/r')."""
    ev = evaluate_member(sub, params, point, W, group)
    return ev.A, ev.B


def _compare_log_b(a: MemberEval, b: MemberEval, prec: int) -> tuple[int, bool]:
    """Sign of log B(a) - log B(b), and whether intervals overlapped at ``prec``."""
    la, lb = a.log_b(prec), b.log_b(prec)
    if la.b < lb.a:
        return -1, False
    if la.a > lb.b:
        return 1, False
    la, lb = a.log_b(256), b.log_b(256)
    if la.b < lb.a:
        return -1, True
    if la.a > lb.b:
        return 1, True
    # exact: q_a^(1/ka) vs q_b^(1/kb)  <=>  q_a^kb vs q_b^ka
    lhs = a.q_value**b.b_exponent
    rhs = b.q_value**a.b_exponent
    return (lhs > rhs) - (lhs < rhs), True


@dataclass
class ObstructionReport:
    A: float
    B: float
    x: float
    argmin: SubgroupDescriptor
    family: list
    best: MemberEval
    interval_overlaps: int = 0
    minimizer_checked: bool = False
    omega_values: list = field(default_factory=list)  # (sub, 𝟋) pairs
    minimizer_ok: bool = True
    homogeneity_ok: bool = True

    def to_json(self) -> dict:
        return {
            "A": self.A, "B": self.B, "x": self.x,
            "argmin": self.argmin.to_json(),
            "family_size": len(self.family),
            "interval_overlaps": self.interval_overlaps,
            "minimizer_checked": self.minimizer_checked,
            "minimizer_ok": self.minimizer_ok,
            "homogeneity_ok": self.homogeneity_ok,
            "members": [m.to_json() for m in self.family],
        }


def choose_x(family: Sequence[SubgroupDescriptor], params: ObstructionParams, point: Sequence, W: Subspace,
             group: GroupDescriptor | None = None, precision: int = 80, rel_tol: float = 1e-9,
             skip_invalid: bool = False) -> ObstructionReport:
    """x = min over the family of B(G') and the minimizing subgroup.

    When some member has A <= 1 the report also checks that every member
    satisfies 𝟋 >= 1 at D# = x * D̃ with equality at the minimizer, and the
    homogeneity identity x^r' * 𝟋 = A^(r'-λ').
    """
    if not family:
        raise DomainError("empty subgroup family")
    evals = []
    for sub in family:
        try:
            evals.append(evaluate_member(sub, params, point, W, group))
        except PreconditionError:
            if not skip_invalid:
                raise
    if not evals:
        raise DomainError("no family member satisfies t_G' + W != t_G")
    best = evals[0]
    overlaps = 0
    for ev in evals[1:]:
        sign, overlapped = _compare_log_b(ev, best, precision)
        overlaps += overlapped
        if sign < 0 or (sign == 0 and ev.sub.sort_key() < best.sub.sort_key()):
            best = ev
    with mpmath.workprec(256):
        log_x = best.log_b(256).mid
        x = mpmath.exp(log_x)
    report = ObstructionReport(best.A, best.B, float(x), best.sub, evals, best, overlaps)
    if any(ev.q_value <= 1 for ev in evals):
        _verify_minimizer(report, params, group or GroupDescriptor.torus(family[0].n_m), x, rel_tol)
    return report


def omega_value(ev: MemberEval, params: ObstructionParams, group: GroupDescriptor, x) -> mpmath.mpf:
    """𝟋 = T̃^λ' * orbit * 𝓗(G'; D#) / (C0 * 𝓗(G0 x G; D#)) with D# = x * D̃, 256 bits."""
    with mpmath.workprec(256):
        dsharp = [x * mpmath.mpf(d.numerator) / d.denominator for d in params.D_tilde]
        index_map = [0] + group.toric_indices
        md = multidegree(ev.sub, index_map)
        h_sub = md.evaluate(dsharp)
        coeff = mpmath.mpf(factorial(1 + group.g)) / prod(factorial(f.dim) for f in group.factors)
        coeff *= prod(f.deg for f in group.factors)
        h_full = coeff * dsharp[0]
        for f, dv in zip(group.factors, dsharp[1:]):
            h_full *= dv**f.dim
        t = mpmath.mpf(params.T_tilde.numerator) / params.T_tilde.denominator
        return t**ev.lam * ev.orbit * h_sub / (params.C0 * h_full)


def _verify_minimizer(report: ObstructionReport, params: ObstructionParams, group: GroupDescriptor, x, tol: float) -> None:
    report.minimizer_checked = True
    ok = x <= 1 + mpmath.mpf(tol)
    homog = True
    with mpmath.workprec(256):
        for ev in report.family:
            om = omega_value(ev, params, group, x)
            report.omega_values.append((ev.sub, float(om)))
            if ev is report.best:
                ok &= abs(om - 1) <= tol
            else:
                ok &= om >= 1 - tol
            q = mpmath.mpf(ev.q_value.numerator) / ev.q_value.denominator
            homog &= abs(x**ev.r * om / q - 1) <= tol
    report.minimizer_ok = bool(ok)
    report.homogeneity_ok = bool(homog)


# -- rank bound and related checks ----------------------------------------


def rank_bound(sub: SubgroupDescriptor, T1: int, S1: int, D_prime: Sequence, point: Sequence, W: Subspace,
               c: float, group: GroupDescriptor | None = None) -> float:
    """c * T1^λ' * orbit_count(S1) * 𝓗(G'; D')."""
    if group is None:
        group = GroupDescriptor.torus(sub.n_m)
    lam, _r = _lambda_and_codim(sub, W, group)
    orb = orbit_count(point, sub, S1)
    return float(c) * T1**lam * orb * float(subgroup_multidegree_value(sub, group, D_prime))


def default_rank_constant(g: int) -> int:
    return 2**g * factorial(g + 1)


def proposition_rank_bound(C0: float, S0: float, S: float, multidegree_value: float) -> float:
    """C0^(3/2) * (S0/S) * 𝓗(G; D')."""
    return C0**1.5 * S0 / S * multidegree_value


@dataclass(frozen=True)
class NonNullReport:
    hypotheses_met: bool
    nonzero: bool | None
    d_max: int | None
    detail: str = ""

    def to_json(self) -> dict:
        return {"hypotheses_met": self.hypotheses_met, "nonzero": self.nonzero, "d_max": self.d_max,
                "detail": self.detail}


def nonnull_degrees_check(x: float, D_tilde: Sequence, T_tilde: float, S: int, C0: int,
                          group: GroupDescriptor) -> NonNullReport:
    """Check that the degrees floor(x * D̃_i), i >= 1, are not all zero.

    Hypotheses: S >= C0 deg(G0 x G) and T̃ (S+1) max D̃_i >= C0 deg(G0 x G) D̃0.
    If they hold and the conclusion fails, the inputs contradict the
    statement and :class:`InconsistencyError` is raised.
    """
    if x > 1:
        raise PreconditionError("x <= 1 is required")
    deg = group.degree()
    D = [float(v) for v in D_tilde]
    h1 = S >= C0 * deg
    h2 = float(T_tilde) * (S + 1) * max(D[1:]) >= C0 * deg * D[0]
    if not (h1 and h2):
        which = [n for n, ok in (("S >= C0 deg", h1), ("T(S+1)max D >= C0 deg D0", h2)) if not ok]
        return NonNullReport(False, None, None, "unmet: " + ", ".join(which))
    d_max = max(math.floor(x * v) for v in D[1:])
    if d_max < 1:
        raise InconsistencyError(f"all floor(x D̃_i) vanish (x max D̃_i = {x * max(D[1:]):.4g}) under the hypotheses")
    return NonNullReport(True, True, d_max)


def multiplicity_constant(group: GroupDescriptor) -> int:
    """8^g * deg(G0 x G) * prod deg G_i."""
    return 8**group.g * group.degree() * prod(f.deg for f in group.factors)


def multiplicity_hypothesis(T_tilde: float, D_tilde: Sequence, S: int, y: int, group: GroupDescriptor) -> bool:
    """T̃ >= c9 * max(D̃0/(S+1)^(1-y), D̃_1, ..., D̃_n, 1)."""
    D = [float(v) for v in D_tilde]
    rhs = multiplicity_constant(group) * max(D[0] / (S + 1) ** (1 - y), *D[1:], 1.0)
    return float(T_tilde) >= rhs


def family_for(group: GroupDescriptor, bound: int = 3) -> list[SubgroupDescriptor]:
    """Enumerated subtori of G0 x (toric part of G)."""
    return enumerate_family(len(group.toric_indices), bound)


def guard_orbits(point: Sequence, family: Iterable[SubgroupDescriptor], W: Subspace, s_max: int,
                 group: GroupDescriptor) -> list[dict]:
    """Members G' with t_G' + W != t_G that contain some s*q, 1 <= s <= s_max.

    The main theorems assume no such member exists.
    """
    bad = []
    for sub in family:
        try:
            _lambda_and_codim(sub, W, group)
        except (PreconditionError, DegenerateError):
            continue
        if orbit_count(point, sub, s_max) < s_max + 1:
            bad.append(sub.to_json())
    return bad
