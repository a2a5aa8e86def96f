"""Command line interface: ``hilbert49 <subcommand>`` (or ``python -m hilbert49``).

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import mpmath

from . import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _default_dps() -> int:
    try:
        return int(os.environ.get("HILBERT49_DPS", "50"))
    except ValueError:
        return 50


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(verify._jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _k_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",")]


# subcommands ----------------------------------------------------------------------

def cmd_field(args) -> int:
    from .cubicfield import (embeddings, format_element_pretty, is_totally_positive, norm,
                             parse_element, totally_positive_of_trace, trace)
    if args.element:
        x = parse_element(args.element)
        emb = [mpmath.nstr(v, 15) for v in embeddings(x, args.dps).values]
        payload = {"element": format_element_pretty(x), "norm": norm(x), "trace": trace(x),
                   "embeddings": emb, "totally_positive": is_totally_positive(x)}
        text = "\n".join(f"{k:17s} {v}" for k, v in payload.items())
        _emit(args, payload, text)
        return EXIT_OK
    t = args.trace
    elems = totally_positive_of_trace(t)
    payload = {"trace": t, "count": len(elems), "elements": [format_element_pretty(e) for e in elems]}
    _emit(args, payload, f"trace {t}: {len(elems)} totally positive elements\n  "
          + "\n  ".join(payload["elements"]))
    return EXIT_OK


def cmd_ideal(args) -> int:
    from .cubicfield import parse_element
    from .ideals import P7, count_cusps, divisor_sum_s, factor_element, rho_LK, s_of_element
    if args.cusps:
        n = count_cusps()
        _emit(args, {"cusps": n}, f"cusps of Gamma(p): {n}")
        return EXIT_OK
    if not args.element:
        print("ideal: give an element or --cusps", file=sys.stderr)
        return EXIT_USAGE
    x = parse_element(args.element)
    fac = factor_element(x)
    payload = {"element": args.element, "factorization": str(fac), "norm": fac.norm}
    payload["s"] = s_of_element(x) if fac.exponent(P7) == 0 else None
    payload["divisor_sum_s"] = divisor_sum_s(x)
    payload["rho_LK"] = rho_LK(x)
    _emit(args, payload, "\n".join(f"{k:14s} {v}" for k, v in payload.items()))
    return EXIT_OK


def cmd_expand(args) -> int:
    from .eisenstein import build_all
    from .qseries import to_interchange, to_symmetrized
    s = build_all(args.trace_bound)
    names = [args.series] if args.series != "all" else ["F0", "F1", "F2", "F4", "E2"]
    out = {}
    for n in names:
        out[n] = to_interchange(s[n]) if args.style == "interchange" else to_symmetrized(s[n])
    if args.format == "json":
        _emit(args, out, "")
    else:
        print("\n\n".join(f"{n} = {v}" if args.style == "symmetrized" else f"# {n}\n{v}" for n, v in out.items()))
    return EXIT_OK


def cmd_rep(args) -> int:
    from .grouprep import gamma4, gamma7, group, invariant_dimension, projective_image
    ks = _k_range(args.k)
    dims = {k: invariant_dimension(k) for k in ks}
    payload = {"order": len(group()), "projective_order": len(projective_image()),
               "invariant_dimensions": dims, "gamma4": repr(gamma4()), "gamma7": repr(gamma7())}
    text = (f"group order {payload['order']}, projective image {payload['projective_order']}\n"
            + "invariants: " + ", ".join(f"k={k}: {d}" for k, d in dims.items()))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_relation(args) -> int:
    from .relations import InsufficientRows, find_relation, reference_P8
    try:
        res = find_relation(args.trace_bound)
    except InsufficientRows as exc:
        _emit(args, {"status": "insufficient", "detail": str(exc)}, f"insufficient rows: {exc}")
        return EXIT_FAIL
    ok = res.relation == reference_P8()
    payload = {"status": "pass" if ok else "fail", "kernel_dimension": res.kernel_dimension,
               "rows": res.rows, "terms": len(res.relation), "relation": str(res.relation)}
    _emit(args, payload, f"kernel dimension {res.kernel_dimension} from {res.rows} rows; "
          f"{len(res.relation)} terms; matches reference: {ok}\n{res.relation}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_toric(args) -> int:
    from . import toric
    if args.fan:
        level = {"X": "p", "Y": "full"}[args.fan[0]]
        res = args.fan.split("-")[1]
        fan = toric.build_cusp_fan(level, res)
        rays = [list(map(str, r.coords)) for r in fan.rays]
        payload = {"rays": rays, "kinds": fan.kinds, "cones": fan.cones,
                   "indices": [fan.lattice_index(c) for c in fan.cones]}
        text = "\n".join(f"{k}{o + 1} {' '.join(r)}" for k, o, r in zip(fan.kinds, fan.orbits, rays))
        text += "\ncones\n" + "\n".join(" ".join(map(str, c)) for c in fan.cones)
        _emit(args, payload, text)
        return EXIT_OK
    if args.facets:
        reps = [toric.verify_hull_facet(f) for f in (toric.FACET_T1, toric.FACET_T2)]
        payload = [{"vertices": [str(v) for v in r.vertices], "form": r.integer_form,
                    "multiplier": str(r.multiplier), "trace_bound": r.trace_bound, "ok": r.ok} for r in reps]
        _emit(args, {"facets": payload}, "\n".join(
            f"{r['vertices']}: {r['form'][0]} >= {r['form'][1]}, multiplier {r['multiplier']}, ok={r['ok']}"
            for r in payload))
        return EXIT_OK if all(r.ok for r in reps) else EXIT_FAIL
    inter = toric.intersection_numbers()
    payload = {**inter, "K_ch.M": toric.kch_on_d1(), "divisors": toric.divisor_counts()}
    _emit(args, payload, "\n".join(f"{k:22s} {v}" for k, v in inter.items()))
    return EXIT_OK


def cmd_dims(args) -> int:
    from . import dims
    rows = []
    for k in _k_range(args.k):
        if args.group == "gamma-p":
            rows.append(dims.dimension_gamma_p(k))
        elif args.group == "gamma-1":
            if k >= 4 and k % 2 == 0:
                rows.append(dims.dimension_gamma1(k))
        else:
            total = dims.poincare_invariant_ring(k)
            rows.append(dims.DimensionReport("galois", k, total - 8 if k >= 2 else 0, total, 8))
    payload = {"rows": [r.__dict__ for r in rows], "volumes": dims.volume_constants()}
    _emit(args, payload, "\n".join(r.row() for r in rows))
    return EXIT_OK


def cmd_octic(args) -> int:
    from .octic import verify_singular_orbit
    with mpmath.workdps(args.dps):
        r = verify_singular_orbit(args.trace_bound, args.dps)
    payload = {k: v for k, v in r.items() if k not in ("checks", "point")}
    ok = r["orbit"] == 84 and r["all_singular"]
    text = (f"orbit of the point over (i,i,i): {r['orbit']} points, stabilizer {r['stabilizer']}\n"
            f"max |Q| {mpmath.nstr(r['max_q'], 3)}, max |grad| {mpmath.nstr(r['max_gradient'], 3)}, "
            f"min |cubic| {mpmath.nstr(r['min_cubic'], 5)}, tail bound {mpmath.nstr(r['tail_bound'], 3)}\n"
            f"all A2 checks passed: {r['all_singular']}")
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_all(args) -> int:
    cfg = verify.Config(trace_bound=args.trace_bound, dps=args.dps)
    checks = verify.verify_all(cfg, args.only)
    if args.format == "json":
        print(verify.report_json(checks))
    else:
        for c in checks:
            print(c.line())
            for n in c.notes:
                print(f"    {n}")
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


# parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--dps", type=int, default=_default_dps(), help="working decimal precision")
    p = argparse.ArgumentParser(prog="hilbert49", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field", parents=[common], help="totally positive elements, norms, embeddings")
    s.add_argument("--trace", type=int, default=7)
    s.add_argument("--element", help='e.g. "w^2+w+1"')
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("ideal", parents=[common], help="factorization and the characters s, rho")
    s.add_argument("element", nargs="?")
    s.add_argument("--cusps", action="store_true")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("expand", parents=[common], help="q-expansions of F0, F1, F2, F4, E2")
    s.add_argument("--series", choices=("F0", "F1", "F2", "F4", "E2", "all"), default="all")
    s.add_argument("--trace-bound", type=int, default=20)
    s.add_argument("--style", choices=("symmetrized", "interchange"), default="symmetrized")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("rep", parents=[common], help="the 336-element group and its invariants")
    s.add_argument("--k", default="0..12")
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("relation", parents=[common], help="discover the degree 8 relation")
    s.add_argument("--trace-bound", type=int, default=25)
    s.set_defaults(func=cmd_relation)

    s = sub.add_parser("toric", parents=[common], help="cusp fans and intersection numbers")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--fan", choices=("X-ch", "X-sm", "Y-ch", "Y-sm"))
    g.add_argument("--facets", action="store_true")
    g.add_argument("--intersections", action="store_true")
    s.set_defaults(func=cmd_toric)

    s = sub.add_parser("dims", parents=[common], help="dimension tables")
    s.add_argument("--group", choices=("gamma-p", "gamma-1", "galois"), default="gamma-p")
    s.add_argument("--k", default="2..10")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("octic", parents=[common], help="the 84 A2 points of the octic")
    s.add_argument("--verify", action="store_true", help="(default action)")
    s.add_argument("--trace-bound", type=int, default=80)
    s.set_defaults(func=cmd_octic)

    s = sub.add_parser("verify-all", parents=[common], help="run every regression check")
    s.add_argument("--trace-bound", type=int, default=None, help="bound for the relation search")
    s.add_argument("--only", nargs="*", choices=[f.__name__ for f in verify.ALL_CHECKS])
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
