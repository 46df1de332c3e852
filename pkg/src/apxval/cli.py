"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 usage or parse error,
3 internal inconsistency (two independent computation routes disagree).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from .config import SessionConfig, load_config_file
from .errors import ApxError, InternalInconsistency
from .ordval import Cut, format_value, parse_cut, scale_cut, shift_cut
from .hahn import Series, resolve_predicate
from .parsing import ParseError, format_poly, format_series, parse_poly, parse_series
from .valpoly import ValPoly
from .envelope import AffineFamily, eventual_order, eventual_argmin
from .apprtype import ApproxType, Fixed, NotFixed
from .reldeg import approx_coefficient, rel_degree, reduced_factor_shape
from .tamegal import TameCyclic, valuation_independence_witness
from .curated import trace_pulldown_scenario
from .corpus import run_corpus
from .ordval import INF


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_type(args, cfg: SessionConfig) -> ApproxType:
    with open(args.type) as fh:
        desc = json.load(fh)
    p = desc.get("p", cfg.p)
    target = parse_series(desc["target"], p)
    ground = resolve_predicate(desc.get("ground", "Z[1/p]"), p)
    hint = parse_cut(desc["hint"]) if desc.get("hint") else None
    minpoly = parse_poly(desc["minpoly"], p) if desc.get("minpoly") else None
    return ApproxType.from_truncations(
        target,
        ground,
        transcendental=bool(desc.get("transcendental", False)),
        minpoly=minpoly,
        distance_hint=hint,
        window=cfg.window,
        tail_depth=cfg.tail_depth,
    )


def cmd_eval(args, cfg):
    s = parse_series(args.series, cfg.p)
    if args.poly:
        f = parse_poly(args.poly, cfg.p)
        out = f(s)
        _emit(
            args,
            {"series": format_series(out), "value": format_value(out.val())},
            f"{format_series(out)}  (v = {format_value(out.val())})",
        )
    else:
        _emit(
            args,
            {"series": format_series(s), "value": format_value(s.val())},
            f"{format_series(s)}  (v = {format_value(s.val())})",
        )
    return 0


def cmd_dist(args, cfg):
    A = _load_type(args, cfg)
    c = A.distance()
    _emit(args, {"distance": str(c)}, str(c))
    return 0


def cmd_fixes(args, cfg):
    A = _load_type(args, cfg)
    g = parse_poly(args.poly, cfg.p)
    res = A.fixes_value(g)
    if isinstance(res, Fixed):
        _emit(
            args,
            {"fixed": True, "value": format_value(res.value)},
            f"fixed, value {format_value(res.value)}",
        )
    else:
        _emit(
            args,
            {"fixed": False, "h": res.h, "beta": format_value(res.beta)},
            f"not fixed: v g(c) = {format_value(res.beta)} + {res.h}*v(x-c)",
        )
    return 0


def cmd_extend(args, cfg):
    A = _load_type(args, cfg)
    g = parse_poly(args.poly, cfg.p)
    v = A.kaplansky_extend(g)
    _emit(args, {"value": format_value(v)}, format_value(v))
    return 0


def cmd_reldeg(args, cfg):
    A = _load_type(args, cfg)
    f = parse_poly(args.poly, cfg.p)
    rd = rel_degree(A, f)
    payload = {
        "h": rd.h,
        "beta": format_value(rd.beta),
        "taylor_intercepts": [format_value(b) for b in rd.taylor_intercepts],
        "law_verification_depth": len(A.tail()),
    }
    _emit(args, payload, f"h = {rd.h}, beta = {format_value(rd.beta)}")
    return 0


def cmd_approx_coeff(args, cfg):
    A = _load_type(args, cfg)
    f = parse_poly(args.poly, cfg.p)
    d, rd = approx_coefficient(A, f)
    dist = shift_cut(d.val(), scale_cut(rd.h, A.distance()))
    payload = {
        "d": format_series(d),
        "vd": format_value(d.val()),
        "h": rd.h,
        "image_distance": str(dist),
    }
    _emit(args, payload, f"d = {format_series(d)}, image distance {dist}")
    return 0


def cmd_factor_shape(args, cfg):
    A = _load_type(args, cfg)
    f = parse_poly(args.poly, cfg.p)
    n = A.tail()[-1]
    c = A.approximants[n]
    gam = A.gamma(n)
    d = Series.monomial(cfg.p, -gam)
    residues = reduced_factor_shape(A, f, c, d)
    root = (d * (A.target - c)).residue()
    payload = {"residue_coeffs": residues, "root": root}
    _emit(
        args,
        payload,
        f"residue polynomial coefficients {residues} (root {root})",
    )
    return 0


def cmd_envelope(args, cfg):
    desc = json.loads(args.family)
    approach = parse_cut(desc["approach"])
    items = [
        (
            it["i"],
            INF if it["intercept"] == "inf" else Fraction(it["intercept"]),
            it["slope"],
        )
        for it in desc["items"]
    ]
    fam = AffineFamily.make(items, approach)
    order = eventual_order(fam)
    argmin = eventual_argmin(fam)
    payload = {
        "beta": str(order.beta),
        "permutation": list(order.permutation),
        "argmin": argmin,
    }
    _emit(
        args,
        payload,
        f"beta = {order.beta}, order {list(order.permutation)}, "
        f"argmin {argmin}",
    )
    return 0


def cmd_tame_witness(args, cfg):
    G = TameCyclic.make(cfg.p, args.n)
    sigmas = [G.element(int(k)) for k in args.sigmas.split(",")]
    ds = [parse_series(text, cfg.p) for text in args.ds]
    d = valuation_independence_witness(G, sigmas, ds)
    terms = [sig(d) * di for sig, di in zip(sigmas, ds)]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    payload = {
        "witness": format_series(d),
        "sum": format_series(total),
        "sum_value": format_value(total.val()),
        "min_value": format_value(min(t.val() for t in terms)),
    }
    _emit(args, payload, f"d = {format_series(d)} (sum value {payload['sum_value']})")
    return 0


def cmd_trace_gen(args, cfg):
    sc = trace_pulldown_scenario()
    rd = rel_degree(sc.x_type, sc.trace_poly)
    payload = {
        "witness": format_series(sc.witness),
        "trace": format_series(sc.trace),
        "h": rd.h,
        "pulled_down": all(sc.ground(e) for e, _ in sc.trace.terms),
    }
    _emit(
        args,
        payload,
        f"Tr(d*x) = {format_series(sc.trace)}, h = {rd.h}",
    )
    return 0


def cmd_corpus(args, cfg):
    records, ok = run_corpus(args.filter or "")
    summary = {
        "cases": len(records),
        "passed": sum(1 for r in records if r["status"] == "pass"),
    }
    for r in records:
        print(json.dumps(r, sort_keys=True))
    print(json.dumps(summary, sort_keys=True))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apxval",
        description="Exact valuation-theoretic computations on truncated "
        "Hahn series.",
    )
    parser.add_argument("--p", type=int, default=None, help="residue prime")
    parser.add_argument("--precision", type=str, default=None)
    parser.add_argument("--depth", type=int, default=None)
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--config", type=str, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval")
    sp.add_argument("series")
    sp.add_argument("--poly", default=None)
    sp.set_defaults(fn=cmd_eval)

    for name, fn, with_poly in (
        ("dist", cmd_dist, False),
        ("fixes", cmd_fixes, True),
        ("extend", cmd_extend, True),
        ("reldeg", cmd_reldeg, True),
        ("approx-coeff", cmd_approx_coeff, True),
        ("factor-shape", cmd_factor_shape, True),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("--type", required=True, help="JSON type description")
        if with_poly:
            sp.add_argument("--poly", required=True)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("envelope")
    sp.add_argument("family", help="JSON affine family")
    sp.set_defaults(fn=cmd_envelope)

    sp = sub.add_parser("tame-witness")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sigmas", required=True, help="comma-separated indices")
    sp.add_argument("--ds", nargs="+", required=True, help="series literals")
    sp.set_defaults(fn=cmd_tame_witness)

    sp = sub.add_parser("trace-gen")
    sp.set_defaults(fn=cmd_trace_gen)

    sp = sub.add_parser("corpus")
    sp.add_argument("--filter", default="")
    sp.set_defaults(fn=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = SessionConfig()
    if args.config:
        cfg = load_config_file(args.config, cfg)
    if args.p is not None:
        cfg = replace(cfg, p=args.p)
    if args.precision is not None:
        cfg = replace(cfg, precision=Fraction(args.precision))
    if args.depth is not None:
        cfg = replace(cfg, depth=args.depth, tail_depth=args.depth)
    try:
        cfg = cfg.validated()
        return args.fn(args, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except ApxError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
