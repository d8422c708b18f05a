"""Command line interface: ``somos5 {theory,density,prime,verify}``.

Exit codes: 0 success, 1 a computed value disagrees with the expected
constant, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import agl, census, density, divpoly
from .census import classify_prime, default_checkpoints, density_table
from .verify import SUITES, verify_suites

EXPECTED = {
    "H3_order": 256,
    "I3_order": 8192,
    "counts": [3754, 4036, 365, 36],
    "mu_zero": "1/57344",
    "density": "5087/10752",
    "density_decimal": "0.473121",
    "bracket3": ["1877/4096", "515/1024"],
}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def theory_report() -> dict:
    res = density.total_density()
    b3, b4 = density.bracket_density(3), density.bracket_density(4)
    return {
        "H3_order": len(agl.build_H3()),
        "I3_order": len(agl.build_Ik(3)),
        "counts": [res.good, res.bad, res.inconclusive_even, res.inconclusive_odd],
        "mu_values": {
            "good": _frac(res.class_values.get("good", Fraction(0))),
            "bad": _frac(res.class_values.get("bad", Fraction(0))),
            "inconclusive_gamma_delta_even": _frac(res.class_values.get("even", Fraction(0))),
            "inconclusive_gamma_delta_odd": _frac(res.class_values.get("odd", Fraction(0))),
            "identity": _frac(res.identity_mu),
        },
        "mu_zero": _frac(res.identity_mu),
        "density": _frac(res.total),
        "density_decimal": f"{float(res.total):.6f}",
        "bracket3": [_frac(b3[0]), _frac(b3[1])],
        "bracket4": [_frac(b4[0]), _frac(b4[1])],
    }


def report_mismatches(report: dict) -> list[str]:
    return [f"{key}: got {report[key]!r}, expected {want!r}"
            for key, want in EXPECTED.items() if report[key] != want]


def _cmd_theory(args) -> int:
    if args.dump_group is not None:
        G = agl.build_Ik(args.dump_group)
        w = csv.writer(sys.stdout, lineterminator="\n")
        for row in zip(*G.columns()):
            w.writerow([int(x) for x in row])
        return 0
    if args.emit_f8:
        for c in divpoly.build_f8():
            print(c)
        return 0
    report = theory_report()
    bad = report_mismatches(report)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(f"|H3| = {report['H3_order']}")
        print(f"|I3| = {report['I3_order']}")
        g, b, e, o = report["counts"]
        print(f"good {g}, bad {b}, inconclusive (gamma, delta even) {e}, inconclusive (gamma or delta odd) {o}")
        for name, val in report["mu_values"].items():
            print(f"mu[{name}] = {val}")
        print(f"density = {report['density']} = {report['density_decimal']}")
        print(f"bracket k=3: [{report['bracket3'][0]}, {report['bracket3'][1]}]")
        print(f"bracket k=4: [{report['bracket4'][0]}, {report['bracket4'][1]}]")
    for line in bad:
        print("MISMATCH " + line, file=sys.stderr)
    return 1 if bad else 0


def _parse_checkpoints(text: str) -> list[int]:
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad checkpoint list: {text!r}")


def _cmd_density(args) -> int:
    xs = args.checkpoints or default_checkpoints(args.limit)
    xs = [x for x in xs if x <= args.limit]
    rows = density_table(xs, jobs=args.jobs, cap=args.cap)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "pi", "pi_prime", "ratio"])
        for r in rows:
            w.writerow([r.x, r.pi, r.pi_prime, r.ratio_str])
    elif args.format == "json":
        print(json.dumps([{"x": r.x, "pi": r.pi, "pi_prime": r.pi_prime, "ratio": r.ratio_str}
                          for r in rows], indent=2))
    else:
        print(f"{'x':>12} {'pi(x)':>10} {'pi_prime(x)':>12} {'ratio':>9}")
        for r in rows:
            print(f"{r.x:>12} {r.pi:>10} {r.pi_prime:>12} {r.ratio_str:>9}")
        print(f"limit {_frac(density.TARGET_DENSITY)} = {float(density.TARGET_DENSITY):.6f}")
    return 0


def _cmd_prime(args) -> int:
    from .arith import factor_small
    if args.p < 2 or factor_small(args.p) != [args.p]:
        print(f"error: {args.p} is not prime", file=sys.stderr)
        return 2
    try:
        c = classify_prime(args.p)
    except AssertionError as exc:
        print(f"MISMATCH {exc}", file=sys.stderr)
        return 1
    row = {"p": c.p, "method": c.method.value, "ord_P": c.ord_P, "ord_R": c.ord_R,
           "divides": c.divides}
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(list(row))
        w.writerow(["" if v is None else v for v in row.values()])
    elif args.format == "json":
        print(json.dumps(row))
    else:
        for k, v in row.items():
            print(f"{k}: {v}")
    return 0


def _cmd_verify(args) -> int:
    results = verify_suites(args.suite)
    for name, ok, detail in results:
        line = f"{name}: {'pass' if ok else 'FAIL'}"
        print(line + (f" ({detail})" if detail and not ok else ""))
    return 0 if all(ok for _, ok, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="somos5", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = dict(choices=["table", "csv", "json"], default="table")

    p = sub.add_parser("theory", help="exact density from the image group I_3")
    p.add_argument("--format", **fmt)
    p.add_argument("--dump-group", type=int, choices=[3, 4], metavar="K",
                   help="print I_K as CSV rows a,b,c,d,e,f")
    p.add_argument("--emit-f8", action="store_true",
                   help="print the degree-64 polynomial's coefficients, constant first")
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("density", help="empirical census of pi'(x)")
    p.add_argument("--limit", type=lambda s: int(float(s)), required=True)
    p.add_argument("--checkpoints", type=_parse_checkpoints)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=lambda s: int(float(s)), default=census.DEFAULT_CAP)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("prime", help="classify a single prime")
    p.add_argument("p", type=int)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=_cmd_prime)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "limit", None) is not None and args.limit > args.cap:
        parser.error(f"--limit exceeds the census cap {args.cap}")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
