"""Parameter selection and the explicit bound shapes U0, U1.

The archimedean and ultrametric parameter engines produce the integers
and reals (S0, S, U, T̃, D̃_i, ...) used by the transcendence argument,
pick the adjustment factor x through the obstruction functional, and
check the inequalities those parameters are meant to satisfy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import mpmath

from linlog import groups, linalg
from linlog.errors import DegenerateError, DomainError, InconsistencyError, PreconditionError, UnsupportedError
from linlog.heights import Subspace, is_prime, schmidt_height, weil_height
from linlog.polybasis import (Archimedean, Ultrametric, WeightQuery, matveev_family, weight_aleph,
                              weight_bound_matveev)

EXACT_WEIGHT_LIMIT = 2_000_000  # derivative values before switching to the closed-form bound


# -- height curves s -> h(s p_i) ------------------------------------------------


@dataclass(frozen=True)
class HeightCurve:
    """Upper envelope of s -> h(s p_i).

    ``linear``: slope*s (exact for a rational point of G_m).
    ``quadratic``: coeff*s^2 (canonical heights on abelian factors).
    ``table``: explicit values for s = 0, 1, ...
    """

    kind: str
    slope: float = 0.0
    values: tuple = ()

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "quadratic", "table"):
            raise DomainError(f"unknown height curve {self.kind!r}")
        if self.slope < 0 or any(v < 0 for v in self.values):
            raise DomainError("heights are nonnegative")
        if self.kind == "table" and not self.values:
            raise DomainError("empty height table")

    def max_height(self, n: int) -> float:
        """max of h(s p) over 0 <= s <= n."""
        n = int(n)
        if n < 0:
            raise DomainError("n must be >= 0")
        if self.kind == "linear":
            return self.slope * n
        if self.kind == "quadratic":
            return self.slope * n * n
        if n >= len(self.values):
            raise DomainError(f"height table covers s <= {len(self.values) - 1}, need s <= {n}")
        return max(self.values[: n + 1])

    def scaled(self, factor: float) -> "HeightCurve":
        return HeightCurve(self.kind, self.slope * factor, tuple(v * factor for v in self.values))

    def to_json(self) -> dict:
        if self.kind == "table":
            return {"kind": "table", "values": list(self.values)}
        return {"kind": self.kind, "slope": self.slope}

    @classmethod
    def from_json(cls, data: dict) -> "HeightCurve":
        if data.get("kind") == "table":
            return cls("table", 0.0, tuple(float(v) for v in data["values"]))
        return cls(data.get("kind", "linear"), float(data["slope"]))


# -- inputs -------------------------------------------------------------------


@dataclass(frozen=True)
class ArchPlace:
    e_param: float

    def __post_init__(self) -> None:
        if not self.e_param >= math.e * (1 - 1e-15):
            raise DomainError(f"radius parameter {self.e_param} is below e")

    @property
    def log_param(self) -> float:
        return math.log(self.e_param)


@dataclass(frozen=True)
class UltraPlace:
    prime: int
    r_param: float
    u_norm: Fraction

    def __post_init__(self) -> None:
        if not is_prime(self.prime):
            raise DomainError(f"{self.prime} is not prime")
        object.__setattr__(self, "u_norm", linalg.to_fraction(self.u_norm))
        check_ultra_guards(self.prime, self.r_param, self.u_norm)

    @property
    def log_param(self) -> float:
        return math.log(self.r_param)


def check_ultra_guards(p: int, r_param, u_norm) -> None:
    """‖u‖ < r_p^2 and 1 < r < r_p^2/‖u‖, decided exactly.

    r_p^2 = p^(-2/(p-1)), so ‖u‖ < r_p^2 iff ‖u‖^(p-1) * p^2 < 1.
    """
    u = linalg.to_fraction(u_norm)
    r = linalg.to_fraction(float(r_param))
    if u < 0:
        raise DomainError("‖u‖ must be nonnegative")
    if not r > 1:
        raise PreconditionError(f"guard failed: radius {float(r)} must exceed 1")
    if not u ** (p - 1) * p * p < 1:
        raise PreconditionError(f"guard failed: ‖u‖ = {u} is not below r_p^2 = {p}^(-2/{p - 1})")
    if not (r * u) ** (p - 1) * p * p < 1:
        raise PreconditionError(f"guard failed: radius {float(r)} is not below r_p^2/‖u‖")


@dataclass(frozen=True)
class Constants:
    C0: int = 2
    c_thm: float = 1.0
    c5: float | None = None  # None means (g+1) * C0^6
    chi_H_cap: float = 1.0
    subgroup_lattice_bound: int = 3

    def __post_init__(self) -> None:
        if self.C0 < 1:
            raise DomainError("C0 must be a positive integer")

    def height_window(self, g: int) -> float:
        return float(self.c5) if self.c5 is not None else float((g + 1) * self.C0**6)


@dataclass(frozen=True)
class BoundInput:
    group: groups.GroupDescriptor
    D: int
    t: int
    hV: float
    curves: tuple
    u_norms: tuple
    place: ArchPlace | UltraPlace
    constants: Constants = field(default_factory=Constants)
    V: Subspace | None = None  # inside Q^g, needed for x when t < g
    points: tuple | None = None  # exact toric coordinates, for orbit counts
    a_override: int | None = None

    def __post_init__(self) -> None:
        g = self.group.g
        if self.D < 1:
            raise DomainError("D must be >= 1")
        if not 1 <= self.t <= g:
            raise DomainError(f"need 1 <= t <= g = {g}")
        if self.hV < 0:
            raise DomainError("h(V) must be >= 0")
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "u_norms", tuple(float(u) for u in self.u_norms))
        if len(self.curves) != self.group.n:
            raise DomainError("one height curve per factor")
        if isinstance(self.place, ArchPlace) and len(self.u_norms) != self.group.n:
            raise DomainError("one logarithm norm per factor")
        if any(u < 0 for u in self.u_norms):
            raise DomainError("norms are nonnegative")
        if self.V is not None:
            if self.V.ambient_dim != g:
                raise DomainError("V must be a subspace of Q^g")
            if g - self.V.dim != self.t:
                raise DomainError("t must equal codim V")
        if self.points is not None:
            pts = tuple(linalg.to_fraction(x) for x in self.points)
            if len(pts) != len(self.group.toric_indices) or not self.group.is_toric:
                raise DomainError("exact points are supported for toric groups only")
            object.__setattr__(self, "points", pts)

    @property
    def g(self) -> int:
        return self.group.g

    @property
    def y(self) -> int:
        return self.group.y

    def W(self) -> Subspace:
        """t_{G0} + V inside Q^(1+g)."""
        m = 1 + self.g
        rows = [[1] + [0] * self.g]
        if self.V is None:
            if self.t != self.g:
                raise PreconditionError("a basis of V is needed when t < g")
        else:
            rows += [[0] + list(r) for r in self.V.basis]
        return Subspace.span(rows, m)

    def with_(self, **kw) -> "BoundInput":
        return replace(self, **kw)


def toric_input(points: Sequence, D: int = 1, t: int | None = None, V: Subspace | None = None,
                e_param: float = math.e, y: int = 0, constants: Constants | None = None,
                hV: float | None = None, a_override: int | None = None) -> BoundInput:
    """BoundInput for a rational point of G_m^n with principal logarithms."""
    pts = [linalg.to_fraction(x) for x in points]
    if any(x == 0 for x in pts):
        raise DomainError("points of G_m are nonzero")
    n = len(pts)
    curves = tuple(HeightCurve("linear", weil_height([1, x]).approx) for x in pts)
    norms = tuple(abs(complex(math.log(abs(x)), math.pi if x < 0 else 0.0)) for x in pts)
    if t is None:
        t = n if V is None else n - V.dim
    if hV is None:
        hV = schmidt_height(V).approx if V is not None and V.dim else 0.0
    return BoundInput(groups.GroupDescriptor.torus(n, y), D, t, hV, curves, norms, ArchPlace(e_param),
                      constants or Constants(), V, tuple(pts), a_override)


# -- parameters ---------------------------------------------------------------


@dataclass
class ParameterSet:
    a: int
    S0: int
    S: int
    U: float
    T_tilde: float
    T: int
    D_tilde: tuple
    D0_flat: int
    x: float
    D: tuple
    log_param: float
    flat_degenerate: bool = False
    obstruction: groups.ObstructionReport | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "a": self.a, "S0": self.S0, "S": self.S, "U": self.U, "T_tilde": self.T_tilde, "T": self.T,
            "D_tilde": list(self.D_tilde), "D0_flat": self.D0_flat, "x": self.x, "D": list(self.D),
            "flat_degenerate": self.flat_degenerate, "notes": list(self.notes),
        }
        if self.obstruction is not None:
            ob = self.obstruction
            out["obstruction"] = {"argmin": ob.argmin.to_json(), "A": ob.A, "B": ob.B,
                                  "family_size": len(ob.family), "interval_overlaps": ob.interval_overlaps,
                                  "minimizer_checked": ob.minimizer_checked, "minimizer_ok": ob.minimizer_ok}
        return out


def minimal_a_arch(D: int, hV: float, log_e: float) -> int:
    return max(1, math.ceil(D * max(1.0, hV) / log_e))


def minimal_a_ultra(D: int, hV: float, log_r: float) -> int:
    extra = max(0.0, math.log(1 / log_r))
    return max(1, math.ceil((D * max(1.0, hV) + extra) / log_r))


def _log_shape(inp: BoundInput, a: int, log_param: float, window: float, arch: bool) -> float:
    """log of the U0-style product with max h(s p_i) taken over s <= window * a."""
    D, t = inp.D, inp.t
    al = a * log_param
    lead = a**inp.y + D / log_param * math.log(math.e + D / log_param)
    out = math.log(al) + math.log(lead) / t
    nmax = math.floor(window * a)
    for i, (f, curve) in enumerate(zip(inp.group.factors, inp.curves)):
        num = D * curve.max_height(nmax)
        if arch:
            num += (inp.place.e_param * a * inp.u_norms[i]) ** f.rho
        out += f.dim / t * math.log1p(num / al)
    return out


def _exp_checked(v: float, what: str) -> float:
    if v > 709:
        raise DomainError(f"{what} overflows a double (log = {v:.1f})")
    return math.exp(v)


def _family_and_point(inp: BoundInput) -> tuple[list, tuple | None]:
    fam = groups.family_for(inp.group, inp.constants.subgroup_lattice_bound)
    return fam, inp.points


def _select_x(inp: BoundInput, T_tilde: float, D_tilde: Sequence[float], S: int, notes: list):
    C0 = inp.constants.C0
    params = groups.ObstructionParams(Fraction(T_tilde), C0, tuple(Fraction(d) for d in D_tilde), S)
    fam, point = _family_and_point(inp)
    if point is None:
        notes.append("orbit counts taken as S+1: no exact toric point data")
    rep = groups.choose_x(fam, params, point, inp.W(), inp.group, skip_invalid=True)
    if rep.interval_overlaps:
        notes.append(f"{rep.interval_overlaps} B-value comparisons needed refinement")
    return rep


def _finish(inp: BoundInput, a: int, log_param: float, U: float, notes: list, arch: bool) -> ParameterSet:
    C0, D, g, y = inp.constants.C0, inp.D, inp.g, inp.y
    S0, S = C0**3 * a, C0**6 * a
    T_tilde = C0 * U / (S0 * log_param)
    T = math.floor(T_tilde)
    if T < 1:
        raise DegenerateError(f"T = floor({T_tilde:.4g}) vanishes")
    D_tilde = []
    for i, curve in enumerate(inp.curves):
        den = D * curve.max_height((g + 1) * S) + S0 * log_param
        if arch:
            den += (inp.place.e_param * S * inp.u_norms[i]) ** inp.group.factors[i].rho
        D_tilde.append(U / (C0**2 * den))
    D0_flat = math.floor(S0 * log_param / (D * C0**3))
    D0_tilde = U / (C0**4 * (D * math.log(math.e + D / log_param) + S0**y * log_param))
    D_tilde = [D0_tilde] + D_tilde
    rep = _select_x(inp, T_tilde, D_tilde, S, notes)
    x = rep.x
    Ds = tuple(math.floor(x * d) for d in D_tilde)
    if Ds[0] == 0:
        notes.append("D0 = 0")
    if D0_flat == 0:
        notes.append("D0_flat = 0: monomial family used instead of the Matveev family")
    return ParameterSet(a, S0, S, U, T_tilde, T, tuple(D_tilde), D0_flat, x, Ds, log_param,
                        D0_flat == 0, rep, notes)


def choose_params_arch(inp: BoundInput) -> ParameterSet:
    if not isinstance(inp.place, ArchPlace):
        raise DomainError("archimedean parameters need an archimedean place")
    L = inp.place.log_param
    a_min = minimal_a_arch(inp.D, inp.hV, L)
    a = inp.a_override if inp.a_override is not None else a_min
    notes: list = []
    if a < a_min:
        notes.append(f"a = {a} is below the minimal admissible {a_min}")
    C0, g = inp.constants.C0, inp.g
    logU = 25 * g * math.log(C0) + _log_shape(inp, a, L, (g + 1) * C0**6, arch=True)
    U = _exp_checked(logU, "U")
    return _finish(inp, a, L, U, notes, arch=True)


def choose_params_ultra(inp: BoundInput) -> ParameterSet:
    if not isinstance(inp.place, UltraPlace):
        raise DomainError("ultrametric parameters need an ultrametric place")
    L = inp.place.log_param
    a_min = minimal_a_ultra(inp.D, inp.hV, L)
    a = inp.a_override if inp.a_override is not None else a_min
    notes: list = []
    if a < a_min:
        notes.append(f"a = {a} is below the minimal admissible {a_min}")
    C0, g = inp.constants.C0, inp.g
    logU = 25 * g * math.log(C0) + _log_shape(inp, a, L, (g + 1) * C0**6, arch=False)
    U = _exp_checked(logU, "U")
    return _finish(inp, a, L, U, notes, arch=False)


def choose_params(inp: BoundInput) -> ParameterSet:
    return choose_params_arch(inp) if isinstance(inp.place, ArchPlace) else choose_params_ultra(inp)


# -- condition checks ---------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    id: str
    holds: bool
    slack: float  # log(lhs) - log(rhs) for ">=" conditions

    def to_json(self) -> dict:
        s = self.slack
        return {"id": self.id, "holds": self.holds, "slack": s if math.isfinite(s) else str(s)}


def _geq(cid: str, lhs: float, rhs: float) -> Condition:
    if rhs <= 0:
        return Condition(cid, True, math.inf)
    if lhs <= 0:
        return Condition(cid, False, -math.inf)
    slack = math.log(lhs) - math.log(rhs)
    return Condition(cid, lhs >= rhs, slack)


def aleph_upper(ps: ParameterSet, inp: BoundInput) -> float:
    """Upper end of the weight of the family used for G0 (Matveev, or monomials)."""
    d_flat = max(ps.D0_flat, 1)
    D0 = ps.D[0]
    radius = (Archimedean(inp.place.e_param) if isinstance(inp.place, ArchPlace)
              else Ultrametric(inp.place.r_param, inp.place.prime))
    if (D0 + 1) * (ps.S + 1) * (min(ps.T, D0) + 1) <= EXACT_WEIGHT_LIMIT and D0 <= 40:
        fam = tuple(matveev_family(d_flat, D0))
        return weight_aleph(WeightQuery(fam, min(ps.T, D0), ps.S, radius, inp.D)).hi
    return weight_bound_matveev(D0, d_flat, ps.T, ps.S, radius, inp.D)


def _shared_conditions(ps: ParameterSet, inp: BoundInput) -> list[Condition]:
    C0, g, t, y = inp.constants.C0, inp.g, inp.t, inp.y
    Dt = ps.D_tilde
    out = [
        _geq("1a", ps.T_tilde, C0**2),
        _geq("1b", ps.S / ps.S0, C0**2),
        _geq("1c", ps.S0, C0**2),
        _geq("2", ps.T_tilde, C0 * max(Dt[0] / (ps.S + 1) ** (1 - y), *Dt[1:])),
    ]
    log_lhs = (g - t + 1) * math.log(ps.T_tilde) + math.log(ps.S + 1)
    log_rhs = math.log(C0) + math.log(Dt[0]) + sum(f.dim * math.log(d) for f, d in zip(inp.group.factors, Dt[1:]))
    out.append(Condition("3", log_lhs <= log_rhs, log_rhs - log_lhs))
    return out


def check_conditions_arch(ps: ParameterSet, inp: BoundInput, aleph_hi: float | None = None) -> list[Condition]:
    """Six parameter conditions plus the auxiliary U >= C0^2 D log(D0 S)."""
    C0, D, g = inp.constants.C0, inp.D, inp.g
    if aleph_hi is None:
        aleph_hi = aleph_upper(ps, inp)
    out = _shared_conditions(ps, inp)
    out.append(_geq("4", ps.U, C0**1.5 * D * aleph_hi))
    out.append(_geq("5", ps.S0 * ps.log_param, C0**3 * D * max(1.0, inp.hV)))
    for i, curve in enumerate(inp.curves):
        rho = inp.group.factors[i].rho
        inner = D * curve.max_height((g + 1) * ps.S) + (inp.place.e_param * ps.S * inp.u_norms[i]) ** rho
        out.append(_geq(f"6.{i + 1}", ps.U, C0**2 * ps.D[i + 1] * inner))
    d0s = ps.D[0] * ps.S
    out.append(_geq("aux", ps.U, C0**2 * D * math.log(d0s) if d0s > 1 else 0.0))
    return out


def check_conditions_ultra(ps: ParameterSet, inp: BoundInput, aleph_hi: float | None = None) -> list[Condition]:
    C0, D, g = inp.constants.C0, inp.D, inp.g
    if aleph_hi is None:
        aleph_hi = aleph_upper(ps, inp)
    out = _shared_conditions(ps, inp)
    out.append(_geq("i", ps.U, C0**1.5 * D * aleph_hi))
    out.append(_geq("ii", ps.S0 * ps.log_param, C0 * (D * max(1.0, inp.hV) + math.log(ps.S0))))
    for i, curve in enumerate(inp.curves):
        out.append(_geq(f"iii.{i + 1}", ps.U, C0**2 * D * ps.D[i + 1] * curve.max_height((g + 1) * ps.S)))
    return out


def first_failure(conds: Sequence[Condition]) -> str | None:
    return next((c.id for c in conds if not c.holds), None)


# -- bound shapes -------------------------------------------------------------


def eval_U0(inp: BoundInput, a: int, c5: float | None = None, prec: int | None = None):
    """U0 at the archimedean place.

    Returns a float, or an mpmath interval when ``prec`` (bits) is given.
    """
    if not isinstance(inp.place, ArchPlace):
        raise DomainError("U0 is defined at an archimedean place")
    if c5 is None:
        c5 = inp.constants.height_window(inp.g)
    L = inp.place.log_param
    if a < 1 or a * L < inp.D * max(1.0, inp.hV) * (1 - 1e-12):
        raise PreconditionError("a must satisfy a log(e) >= D max(1, h(V))")
    if prec is None:
        return _exp_checked(_log_shape(inp, a, L, c5, arch=True), "U0")
    return _interval_shape(inp, a, c5, prec, arch=True)


def eval_U1(inp: BoundInput, a: int, c6: float | None = None, prec: int | None = None):
    """U1 at an ultrametric place (log(1 + r) in front, no logarithm norms)."""
    if not isinstance(inp.place, UltraPlace):
        raise DomainError("U1 is defined at an ultrametric place")
    if c6 is None:
        c6 = inp.constants.height_window(inp.g)
    L = inp.place.log_param
    if a < 1:
        raise PreconditionError("a must be >= 1")
    if prec is not None:
        return _interval_shape(inp, a, c6, prec, arch=False)
    v = _log_shape(inp, a, L, c6, arch=False) + math.log(math.log1p(inp.place.r_param)) - math.log(L)
    return _exp_checked(v, "U1")


def _interval_shape(inp: BoundInput, a: int, window: float, prec: int, arch: bool):
    iv = mpmath.iv
    with mpmath.workprec(prec):
        if arch:
            L = iv.log(iv.mpf(inp.place.e_param))
        else:
            L = iv.log(iv.mpf(inp.place.r_param))
        D, t = inp.D, inp.t
        al = a * L
        lead = iv.mpf(a) ** inp.y + D / L * iv.log(iv.e + D / L)
        prefix = iv.log(1 + iv.mpf(inp.place.r_param)) * a if not arch else al
        out = prefix * lead ** (iv.mpf(1) / t)
        nmax = math.floor(window * a)
        for i, (f, curve) in enumerate(zip(inp.group.factors, inp.curves)):
            num = D * iv.mpf(curve.max_height(nmax))
            if arch:
                num += (iv.mpf(inp.place.e_param) * a * iv.mpf(inp.u_norms[i])) ** f.rho
            out *= (1 + num / al) ** (iv.mpf(f.dim) / t)
        return out


def eval_simple_bound(g: int, t: int, b: float, hp: float, c: float) -> float:
    """-c (log b)^(1 + (g+1)/t) max(1, hp)^(g/t)."""
    if not b >= math.e * (1 - 1e-15):
        raise DomainError("b must be >= e")
    if g < 1 or t < 1:
        raise DomainError("g and t must be >= 1")
    return -c * math.log(b) ** (1 + (g + 1) / t) * max(1.0, hp) ** (g / t)


def ultra_bridge_factor(p: int, r_param: float) -> tuple[float, float]:
    """(1 + log(1/r_p)/log r, log(r + 1)/log r): the U vs U1 conversion factor and its majorant shape."""
    lr = math.log(r_param)
    return 1 + math.log(p) / ((p - 1) * lr), math.log1p(r_param) / lr


# -- choice of the radius parameter -------------------------------------------


@dataclass
class OptimizeResult:
    e_star: float
    U0_star: float
    a_star: int
    e_reference: float
    U0_reference: float
    unimodal: bool
    grid: list

    def to_json(self) -> dict:
        return {"e_star": self.e_star, "U0_star": self.U0_star, "a_star": self.a_star,
                "e_reference": self.e_reference, "U0_reference": self.U0_reference,
                "unimodal_on_grid": self.unimodal}


def _u0_at_log(inp: BoundInput, log_e: float, c5: float | None) -> tuple[float, int]:
    e_param = math.exp(log_e)
    cand = inp.with_(place=ArchPlace(max(e_param, math.e)))
    a = minimal_a_arch(inp.D, inp.hV, cand.place.log_param)
    return eval_U0(cand, a, c5), a


def optimize_e(inp: BoundInput, c5: float | None = None, grid: int = 200, report_only: bool = False,
               tol: float = 1e-10) -> OptimizeResult:
    """Minimize U0 over e in [e, e (1 + h(p))^2], a re-derived per candidate.

    A grid scan over log e locates the best cell; golden-section search
    refines inside the neighbouring cells.
    """
    if inp.group.n != 1 and not report_only:
        raise UnsupportedError("the optimal-radius claim concerns a single factor")
    hp = max(c.max_height(1) for c in inp.curves)
    lo, hi = 1.0, 1.0 + 2 * math.log1p(hp)
    if hi <= lo:
        hi = lo
    xs = [lo + (hi - lo) * k / grid for k in range(grid + 1)]
    ys = [_u0_at_log(inp, x, c5)[0] for x in xs]
    k = min(range(len(ys)), key=ys.__getitem__)
    # unimodal: nonincreasing up to k, nondecreasing after
    unimodal = all(ys[i] >= ys[i + 1] * (1 - 1e-12) for i in range(k)) and \
        all(ys[i] <= ys[i + 1] * (1 + 1e-12) for i in range(k, len(ys) - 1))
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, grid)]
    phi = (math.sqrt(5) - 1) / 2
    c, d = b - phi * (b - a), a + phi * (b - a)
    fc, fd = _u0_at_log(inp, c, c5)[0], _u0_at_log(inp, d, c5)[0]
    while b - a > tol * max(1.0, abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = _u0_at_log(inp, c, c5)[0]
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = _u0_at_log(inp, d, c5)[0]
    best_x, best_y = min([(xs[k], ys[k]), (c, fc), (d, fd)], key=lambda p: p[1])
    ref_log = 1 + 0.5 * math.log(max(1.0, hp))
    ref_y = _u0_at_log(inp, ref_log, c5)[0]
    if ref_y < best_y * (1 - 1e-9):
        raise InconsistencyError(f"reference radius beats the optimizer ({ref_y} < {best_y})")
    a_star = _u0_at_log(inp, best_x, c5)[1]
    return OptimizeResult(math.exp(best_x), best_y, a_star, math.exp(ref_log), ref_y, unimodal,
                          list(zip(xs, ys)))


# -- JSON ---------------------------------------------------------------------


def input_from_json(data: dict, constants: Constants | None = None) -> BoundInput:
    """Build a BoundInput from a request dictionary.

    Either ``points`` (rational coordinates of a point of G_m^n) or
    ``group`` + ``curves`` + ``u_norms`` must be given.
    """
    consts = constants or Constants()
    over = {k: data[k] for k in ("C0", "c_thm", "c5", "chi_H_cap", "subgroup_lattice_bound") if k in data}
    if over:
        consts = replace(consts, **over)
    V = None
    if data.get("V"):
        V = Subspace.span(data["V"])
    a = data.get("a")
    place = _place_from_json(data.get("place", {"kind": "archimedean", "e_param": math.e}))
    if "points" in data:
        y = int(data.get("y", data.get("group", {}).get("y", 0)))
        inp = toric_input(data["points"], int(data.get("D", 1)), data.get("t"), V,
                          place.e_param if isinstance(place, ArchPlace) else math.e, y, consts,
                          data.get("hV"), a)
        if "u_norms" in data:
            inp = inp.with_(u_norms=tuple(float(u) for u in data["u_norms"]))
        if isinstance(place, UltraPlace):
            inp = inp.with_(place=place)
        return inp
    group = groups.GroupDescriptor.from_json(data["group"])
    curves = tuple(HeightCurve.from_json(c) for c in data["curves"])
    norms = tuple(float(u) for u in data.get("u_norms", [0.0] * group.n))
    t = int(data.get("t", group.g if V is None else group.g - V.dim))
    hV = float(data["hV"]) if "hV" in data else (schmidt_height(V).approx if V is not None and V.dim else 0.0)
    return BoundInput(group, int(data.get("D", 1)), t, hV, curves, norms, place, consts, V, None, a)


def _place_from_json(data: dict):
    kind = data.get("kind", "archimedean")
    if kind == "archimedean":
        if "log_e" in data:
            return ArchPlace(math.exp(float(data["log_e"])))
        return ArchPlace(float(data.get("e_param", math.e)))
    if kind == "ultrametric":
        return UltraPlace(int(data["prime"]), float(data["r_param"]), data["u_norm"])
    raise DomainError(f"unknown place kind {kind!r}")
