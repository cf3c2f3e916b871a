"""Command-line front end.

Every command prints one JSON report on stdout::

    {"command": ..., "request": ..., "results": ..., "provenance": ..., "warnings": [...]}

``provenance`` tags each top-level result as exact, interval or sampled.
Exit codes: 0 success, 1 precondition failure, 2 inconsistency,
3 inconclusive, 64 usage error, 78 malformed configuration.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from linlog import auxsys, bounds, groups, heights, interp, kernels, polybasis, siegel
from linlog.config import Config, ConfigError, parse_config
from linlog.errors import InconclusiveError, LinlogError
from linlog.heights import Place, ProjVector, Subspace

EXIT_USAGE = 64

EXACT, INTERVAL, SAMPLED = "exact", "interval", "sampled"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


# -- JSON helpers -------------------------------------------------------------


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"expected an exact rational, got {x!r}")


def exact_json(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vector(text: str) -> list[Fraction]:
    try:
        return [_frac(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector {text!r}: {exc}") from None


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def subspace_from_json(data: dict) -> Subspace:
    """``{"basis": [[...]]}`` or ``{"equations": [[...]]}`` with exact rationals."""
    if "basis" in data:
        rows = [[_frac(x) for x in r] for r in data["basis"]]
        m = int(data.get("ambient_dim", len(rows[0]) if rows else 0))
        return Subspace.span(rows, m)
    if "equations" in data:
        eqs = [[_frac(x) for x in r] for r in data["equations"]]
        m = int(data.get("ambient_dim", len(eqs[0])))
        from linlog import linalg
        return Subspace.span(linalg.nullspace(eqs, m), m)
    raise UsageError("subspace file needs 'basis' or 'equations'")


def subspace_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "dim": s.dim,
            "basis": [[exact_json(x) for x in r] for r in s.basis],
            "plucker": [exact_json(x) for x in s.plucker]}


def _clean(obj):
    """Make floats JSON-safe (inf/nan become strings) and tuples lists."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, Fraction):
        return exact_json(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


class Report:
    def __init__(self, command: str, request: dict):
        self.command = command
        self.request = request
        self.results: dict = {}
        self.provenance: dict = {}
        self.warnings: list[str] = []
        self.inconclusive = False

    def add(self, key: str, value, tag: str) -> None:
        self.results[key] = value
        self.provenance[key] = tag

    def to_json(self) -> dict:
        return _clean({"command": self.command, "request": self.request, "results": self.results,
                       "provenance": self.provenance, "warnings": self.warnings})


# -- commands -----------------------------------------------------------------


def cmd_height(args, cfg: Config) -> Report:
    rep = Report(f"height {args.kind}", {k: v for k, v in vars(args).items() if k in ("vector", "subspace", "value")})
    if args.kind in ("weil", "l2", "sandwich"):
        if not args.vector:
            raise UsageError("--vector is required")
        v = ProjVector(_vector(args.vector))
        rep.add("primitive_form", list(v.primitive_form), EXACT)
        if args.kind == "weil":
            rep.add("height", heights.weil_height(v).to_json(), EXACT)
        elif args.kind == "l2":
            rep.add("height", heights.l2_height(v).to_json(), EXACT)
        else:
            rep.add("weil", heights.weil_height(v).to_json(), EXACT)
            rep.add("l2", heights.l2_height(v).to_json(), EXACT)
            rep.add("sandwich_holds", heights.sandwich_check(v), EXACT)
    elif args.kind == "schmidt":
        if not args.subspace:
            raise UsageError("--subspace is required")
        s = subspace_from_json(_load_json(args.subspace))
        rep.add("subspace", subspace_json(s), EXACT)
        rep.add("height", heights.schmidt_height(s).to_json(), EXACT)
        rep.add("dual_height", heights.schmidt_height(siegel.dual_subspace(s)).to_json(), EXACT)
    elif args.kind == "product":
        if args.value is None:
            raise UsageError("--value is required")
        x = _vector(args.value)[0]
        rep.add("residual", exact_json(heights.product_formula_residual(x)), EXACT)
        rep.add("height", heights.rational_height(x).to_json(), EXACT)
        places = {"inf": exact_json(abs(x))}
        for p in heights.support_primes(x):
            places[str(p)] = heights.local_abs(x, Place.finite(p)).to_json()
        rep.add("places", places, EXACT)
    return rep


def cmd_poly(args, cfg: Config) -> Report:
    rep = Report(f"poly {args.kind}", {k: v for k, v in vars(args).items()
                                       if k in ("n", "d_flat", "d0", "T", "S", "e_param", "prime", "r_param")})
    if args.kind == "delta":
        rep.add("family", [polybasis.binomial_delta(args.n).to_json()], EXACT)
        return rep
    fam = polybasis.monomial_family(args.d0) if args.d_flat is None else polybasis.matveev_family(args.d_flat, args.d0)
    rep.add("family", [p.to_json() for p in fam], EXACT)
    if args.kind == "matveev":
        return rep
    if args.prime is not None:
        radius = polybasis.Ultrametric(args.r_param, args.prime)
    else:
        radius = polybasis.Archimedean(args.e_param)
    enc = polybasis.weight_aleph(polybasis.WeightQuery(tuple(fam), args.T, args.S, radius))
    rep.add("enclosure", enc.to_json(), SAMPLED if not enc.exact_sup else EXACT)
    if args.d_flat is not None:
        rep.add("bound", polybasis.weight_bound_matveev(args.d0, args.d_flat, args.T, args.S, radius,
                                                        c=cfg.shape_constant), INTERVAL)
    else:
        rep.warnings.append("shape bound applies to the Matveev family only")
    return rep


def cmd_siegel(args, cfg: Config) -> Report:
    s = subspace_from_json(_load_json(args.subspace))
    rep = Report("siegel basis", {"subspace": args.subspace})
    b = siegel.small_basis(s, args.box or cfg.siegel_search_box)
    rep.add("basis", b.integer_vectors, EXACT)
    rep.add("totals", {"sum_l2_heights": b.total.to_json(), "schmidt_height": heights.schmidt_height(s).to_json(),
                       "slack_dlogd": s.dim * math.log(s.dim)}, EXACT)
    rep.add("certificate", b.certificate, EXACT)
    return rep


def _subgroup_from_json(data: dict, n_m: int | None = None) -> groups.SubgroupDescriptor:
    return groups.SubgroupDescriptor.from_lattice(data["lattice"], data.get("n_m", n_m))


def cmd_group(args, cfg: Config) -> Report:
    data = _load_json(args.input)
    rep = Report(f"group {args.kind}", {"input": args.input})
    if args.kind == "multidegree":
        sub = _subgroup_from_json(data)
        md = groups.multidegree(sub)
        rep.add("subgroup", sub.to_json(), EXACT)
        rep.add("multidegree", md.to_json(), EXACT)
        if args.check:
            rep.add("bruteforce_agrees", groups.multidegree_bruteforce(sub) == md, EXACT)
        if "X" in data:
            rep.add("value", exact_json(md.evaluate_exact([_frac(x) for x in data["X"]])), EXACT)
        return rep
    group = groups.GroupDescriptor.from_json(data["group"])
    params = groups.ObstructionParams(_frac(data["T_tilde"]), int(data.get("C0", cfg.C0)),
                                      tuple(_frac(d) for d in data["D_tilde"]), int(data["S"]))
    W = subspace_from_json(data["W"]) if "W" in data else Subspace.span([[1] + [0] * group.g], 1 + group.g)
    point = [_frac(x) for x in data["point"]] if data.get("point") is not None else None
    bound = int(data.get("bound", cfg.subgroup_lattice_bound))
    fam = groups.family_for(group, bound)
    ob = groups.choose_x(fam, params, point, W, group, precision=cfg.float_precision_bits, skip_invalid=True)
    rep.add("selection", ob.to_json(), INTERVAL)
    if ob.interval_overlaps:
        rep.warnings.append(f"{ob.interval_overlaps} comparisons overlapped at {cfg.float_precision_bits} bits "
                            "and were refined")
    if point is None:
        rep.warnings.append("no point data: orbit counts taken as S+1")
    return rep


def _bound_input(path: str, cfg: Config) -> bounds.BoundInput:
    data = _load_json(path)
    return bounds.input_from_json(data, cfg.constants())


def _guards(inp: bounds.BoundInput, window: float, a: int, rep: Report) -> None:
    if inp.points is None:
        rep.add("guards", {"checked": False}, EXACT)
        rep.warnings.append("non-toric or point-free input: orbit guards unchecked")
        return
    s_max = max(1, math.floor(window * a))
    fam = groups.family_for(inp.group, inp.constants.subgroup_lattice_bound)
    try:
        W = inp.W()
    except LinlogError as exc:
        rep.add("guards", {"checked": False, "reason": str(exc)}, EXACT)
        return
    bad = groups.guard_orbits(inp.points, fam, W, s_max, inp.group)
    rep.add("guards", {"checked": True, "s_max": s_max, "violations": bad}, EXACT)
    if bad:
        rep.warnings.append(f"{len(bad)} subgroups contain a multiple of the point")


def _params_block(inp: bounds.BoundInput, rep: Report) -> bounds.ParameterSet | None:
    try:
        ps = bounds.choose_params(inp)
    except LinlogError as exc:
        rep.warnings.append(f"parameter system unavailable: {exc}")
        return None
    rep.add("parameters", ps.to_json(), INTERVAL)
    if isinstance(inp.place, bounds.ArchPlace):
        conds = bounds.check_conditions_arch(ps, inp)
    else:
        conds = bounds.check_conditions_ultra(ps, inp)
    rep.add("conditions", [c.to_json() for c in conds], SAMPLED)
    first = bounds.first_failure(conds)
    if first:
        rep.warnings.append(f"condition {first} fails")
    return ps


def cmd_params(args, cfg: Config) -> Report:
    inp = _bound_input(args.input, cfg)
    rep = Report("params", {"input": args.input})
    _params_block(inp, rep)
    return rep


def cmd_bound(args, cfg: Config) -> Report:
    if args.kind == "simple":
        rep = Report("bound simple", {"g": args.g, "t": args.t, "b": args.b, "hp": args.hp, "c": args.c})
        rep.add("bound", bounds.eval_simple_bound(args.g, args.t, args.b, args.hp, args.c), INTERVAL)
        return rep
    if not args.input:
        raise UsageError("--input is required")
    inp = _bound_input(args.input, cfg)
    rep = Report(f"bound {args.kind}", {"input": args.input})
    ultra = isinstance(inp.place, bounds.UltraPlace)
    window = inp.constants.height_window(inp.g) if not ultra or cfg.c6 is None else cfg.c6
    if args.kind == "optimize-e":
        res = bounds.optimize_e(inp, window, report_only=args.report_only)
        rep.add("bound", res.to_json(), SAMPLED)
        if not res.unimodal:
            rep.warnings.append("U0 is not unimodal on the sampled grid")
        return rep
    if args.kind == "u0":
        if ultra:
            raise UsageError("u0 needs an archimedean place")
        a = inp.a_override or bounds.minimal_a_arch(inp.D, inp.hV, inp.place.log_param)
        val = bounds.eval_U0(inp, a, window)
        enc = bounds.eval_U0(inp, a, window, prec=cfg.float_precision_bits)
    else:
        if not ultra:
            raise UsageError("u1 needs an ultrametric place")
        a = inp.a_override or bounds.minimal_a_ultra(inp.D, inp.hV, inp.place.log_param)
        val = bounds.eval_U1(inp, a, window)
        enc = bounds.eval_U1(inp, a, window, prec=cfg.float_precision_bits)
    rep.add("bound", {"value": val, "enclosure": [float(enc.a), float(enc.b)], "a": a, "window": window,
                      "lower_bound_log_distance": -inp.constants.c_thm * val}, INTERVAL)
    _params_block(inp, rep)
    _guards(inp, window, a, rep)
    return rep


def cmd_interp(args, cfg: Config) -> Report:
    data = _load_json(args.sample)
    rep = Report(f"interp {args.kind}", {"sample": args.sample})
    S1, T1 = int(data["S1"]), int(data["T1"])
    if args.kind == "check-arch":
        f = interp.sample_from_json(data)
        if not isinstance(f, interp.ExpPolySample):
            raise UsageError("check-arch needs a poly-exp sample ('terms')")
        res = interp.check_waldschmidt(f, S1, T1, float(data["r"]), float(data["R"]), int(data.get("samples", 512)))
        tag = SAMPLED
    else:
        f = interp.sample_from_json(data)
        if not isinstance(f, interp.PadicSeries):
            raise UsageError("check-padic needs a p-adic sample ('prime', 'coeffs')")
        res = interp.check_roy(f, S1, T1, _frac(data["r"]), _frac(data["R"]))
        tag = EXACT if res.exact else INTERVAL
    rep.add("check", res.to_json(), tag)
    if res.holds is None:
        rep.warnings.append("inconclusive: " + (res.detail or "tolerance not met"))
        rep.inconclusive = True
    return rep


def cmd_auxsys(args, cfg: Config) -> Report:
    spec = auxsys.SystemSpec.from_json(_load_json(args.spec))
    rep = Report(f"auxsys {args.kind}", {"spec": spec.to_json()})
    M = auxsys.build_system(spec)
    rep.add("shape", list(M.shape), EXACT)
    if args.kind == "build":
        rep.add("matrix", M.to_json(), EXACT)
    elif args.kind == "rank":
        r = auxsys.system_rank(M)
        r2 = auxsys.system_rank_rational(M)
        if r != r2:
            from linlog.errors import InconsistencyError
            raise InconsistencyError(f"elimination strategies disagree: {r} vs {r2}")
        rep.add("rank", r, EXACT)
        rep.add("kernel_dim", len(M.cols) - r, EXACT)
    else:
        poly, hrep = auxsys.construct_aux_poly(M, cfg.shape_constant, cfg.chi_H_cap, cfg.siegel_search_box)
        rep.add("polynomial", poly.to_json(), EXACT)
        rep.add("residual_zero", True, EXACT)
        rep.add("height_report", hrep.to_json() if hrep else None, SAMPLED)
    return rep


def cmd_fact(args, cfg: Config) -> Report:
    P = auxsys.parse_poly(args.poly)
    rep = Report("fact check", {"poly": args.poly, "b": args.b, "lmax": args.lmax})
    res = auxsys.fact_integrality(P, args.b, args.lmax)
    rep.add("integrality", res.to_json(), EXACT)
    return rep


def cmd_selftest(args, cfg: Config) -> Report:
    from linlog import acceptance

    only = [int(x) for x in args.only.split(",")] if args.only else None
    rep = Report("selftest", {"only": only, "precision": cfg.float_precision_bits, "tamper_delta": args.tamper_delta})
    results = acceptance.run_all(only, precision=cfg.float_precision_bits, tamper_delta=args.tamper_delta,
                                 quick=args.quick)
    rep.add("criteria", [r.to_json(timing=False) for r in results], EXACT)
    rep.add("all_passed", all(r.passed for r in results), EXACT)
    rep.add("backend", kernels.BACKEND, EXACT)
    for r in results:
        rep.warnings.extend(f"criterion {r.number}: {w}" for w in r.warnings)
    return rep


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linlog", description="Exact machinery for linear forms in logarithms.")
    p.add_argument("--config", help="TOML constants file (default: $LINLOG_CONFIG)")
    p.add_argument("--precision", type=int, help="interval precision in bits (overrides the config)")
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("height", help="heights of vectors, subspaces and rationals")
    h.add_argument("kind", choices=["weil", "l2", "sandwich", "schmidt", "product"])
    h.add_argument("--vector", help="comma-separated rationals")
    h.add_argument("--subspace", help="JSON file with 'basis' or 'equations'")
    h.add_argument("--value", help="a nonzero rational")
    h.set_defaults(func=cmd_height)

    po = sub.add_parser("poly", help="binomial and Matveev polynomial families")
    po.add_argument("kind", choices=["delta", "matveev", "weight"])
    po.add_argument("--n", type=int, default=1)
    po.add_argument("--d-flat", dest="d_flat", type=int)
    po.add_argument("--d0", type=int, default=1)
    po.add_argument("--T", type=int, default=1)
    po.add_argument("--S", type=int, default=1)
    po.add_argument("--e", dest="e_param", type=float, default=math.e)
    po.add_argument("--prime", type=int)
    po.add_argument("--r", dest="r_param", type=float, default=2.0)
    po.set_defaults(func=cmd_poly)

    si = sub.add_parser("siegel", help="certified small bases")
    si.add_argument("kind", choices=["basis"])
    si.add_argument("--subspace", required=True)
    si.add_argument("--box", type=int)
    si.set_defaults(func=cmd_siegel)

    g = sub.add_parser("group", help="subgroup multidegrees and obstruction selection")
    g.add_argument("kind", choices=["multidegree", "select-subgroup"])
    g.add_argument("--input", "--subgroup", dest="input", required=True)
    g.add_argument("--check", action="store_true", help="also compare with Hilbert-function counts")
    g.set_defaults(func=cmd_group)

    pa = sub.add_parser("params", help="parameter system and its conditions")
    pa.add_argument("--input", required=True)
    pa.set_defaults(func=cmd_params)

    b = sub.add_parser("bound", help="evaluate U0, U1, the simple bound or optimize the radius")
    b.add_argument("kind", choices=["u0", "u1", "simple", "optimize-e"])
    b.add_argument("--input")
    b.add_argument("--report-only", action="store_true")
    b.add_argument("--g", type=int, default=1)
    b.add_argument("--t", type=int, default=1)
    b.add_argument("--b", type=float, default=math.e)
    b.add_argument("--hp", type=float, default=0.0)
    b.add_argument("--c", type=float, default=1.0)
    b.set_defaults(func=cmd_bound)

    it = sub.add_parser("interp", help="interpolation inequalities on samples")
    it.add_argument("kind", choices=["check-arch", "check-padic"])
    it.add_argument("--sample", required=True)
    it.set_defaults(func=cmd_interp)

    ax = sub.add_parser("auxsys", help="exact interpolation systems")
    ax.add_argument("kind", choices=["build", "rank", "construct"])
    ax.add_argument("--spec", required=True)
    ax.set_defaults(func=cmd_auxsys)

    fa = sub.add_parser("fact", help="integrality of divided derivatives")
    fa.add_argument("kind", choices=["check"])
    fa.add_argument("--poly", required=True)
    fa.add_argument("--b", type=int, required=True)
    fa.add_argument("--lmax", type=int, default=10)
    fa.set_defaults(func=cmd_fact)

    st = sub.add_parser("selftest", help="run the acceptance criteria")
    st.add_argument("--only", help="comma-separated criterion numbers")
    st.add_argument("--quick", action="store_true", help="reduced sample counts")
    st.add_argument("--tamper-delta", action="store_true", help="fault injection: corrupt the binomial table")
    st.add_argument("--strict", action="store_true", help="exit 2 if a criterion fails")
    st.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = parse_config(args.config)
        if args.precision is not None:
            from dataclasses import replace
            cfg = replace(cfg, float_precision_bits=args.precision)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return exc.exit_code
    try:
        rep = args.func(args, cfg)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except LinlogError as exc:
        err = {"command": args.command, "error": type(exc).__name__, "message": str(exc),
               "exit_code": exc.exit_code}
        print(json.dumps(err, sort_keys=True), file=out)
        return exc.exit_code
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"bad input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    body = rep.to_json()
    print(json.dumps(body, sort_keys=True, separators=(",", ":") if args.compact else None,
                     indent=None if args.compact else 2), file=out)
    if rep.inconclusive:
        return InconclusiveError.exit_code
    if args.command == "selftest" and args.strict and not rep.results.get("all_passed", True):
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
