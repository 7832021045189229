"""Command-line interface.

Subcommands mirror the library: exact series evaluation (``limit``,
``mell-dist``, ``riemannian-bound``), trace-class tables
(``enumerate-classes``), closed-form expectations (``exact``), seeded
Monte Carlo (``sample``) and exhaustive small-case enumeration
(``brute-force``).  All output goes to stdout (or --out); validation
failures exit nonzero with a one-line diagnostic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import exact, harness, series, words
from ._kernel import LANE


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fp:
            fp.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cmd_enumerate_classes(args) -> int:
    table = words.enumerate_trace_classes(args.max_trace)
    _emit(table.to_csv(), args.out)
    return 0


def _cmd_limit(args) -> int:
    table = series.series_table(args.terms)
    lo, hi = table.bracket
    if args.format == "json":
        payload = {
            "terms": [{"trace": k, "p": table.p[k], "partial_sum": table.S[k]}
                      for k in sorted(table.p)],
            "lower": lo,
            "upper": hi,
            "remainder": table.remainder,
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = [f"{'trace':>6} {'p_k':>14} {'S_k':>14}"]
        for k in sorted(table.p):
            lines.append(f"{k:>6} {table.p[k]:>14.9f} {table.S[k]:>14.9f}")
        lines.append("")
        lines.append(f"limit bracket: [{lo:.9f}, {hi:.9f}]  (remainder {table.remainder:.3g})")
        _emit("\n".join(lines), args.out)
    return 0


def _cmd_mell_dist(args) -> int:
    rows = [(k, series.mell_limit_pmf(k)) for k in range(1, args.max_k + 1)]
    if args.format == "json":
        payload = {"pmf": {str(k): p for k, p in rows},
                   "mean_truncated": sum(k * p for k, p in rows)}
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = [f"{'k':>4} {'P[m=k]':>14}"]
        lines += [f"{k:>4} {p:>14.10f}" for k, p in rows]
        lines.append(f"truncated mean: {sum(k * p for k, p in rows):.6f}")
        _emit("\n".join(lines), args.out)
    return 0


def _cmd_riemannian_bound(args) -> int:
    lo, hi = series.riemannian_bounds(args.m1, args.m2)
    coeff = series.riemannian_bound_coefficient(1e-9)
    if args.format == "json":
        _emit(json.dumps({"lower": lo, "upper": hi, "coefficient": coeff}, indent=2),
              args.out)
    else:
        _emit(f"coefficient: {coeff:.6f}\nlower: {lo:.6f}\nupper: {hi:.6f}", args.out)
    return 0


def _fraction_line(name: str, value: Fraction) -> str:
    return f"{name} = {value.numerator}/{value.denominator} = {float(value):.12g}"


def _cmd_exact(args) -> int:
    what = args.what
    if what == "omega":
        count = exact.omega_count(args.n)
        _emit(f"|pairings({args.n})| = {count}", args.out)
        return 0
    if what == "xk":
        if args.k is None:
            raise ValueError("--k is required for xk")
        val = exact.expected_xk(args.n, args.k)
        _emit(_fraction_line(f"E[X_{{{args.n},{args.k}}}]", val), args.out)
        return 0
    if what == "z":
        if not args.word:
            raise ValueError("--word is required for z")
        cls = words.canonicalize(args.word)
        val = exact.expected_z_class(args.n, cls)
        _emit(_fraction_line(f"E[Z_{{{args.n},[{cls.canonical}]}}]", val), args.out)
        return 0
    if what == "dnk":
        if args.k is None:
            raise ValueError("--k is required for dnk")
        val = exact.dnk_count(args.n, args.k)
        prob = exact.dnk_probability(args.n, args.k)
        _emit(_fraction_line("count", val) + "\n" + _fraction_line("probability", prob),
              args.out)
        return 0
    if what == "gbound":
        if args.k is None:
            raise ValueError("--k is required for gbound")
        val = exact.gnk_probability_upper(args.n, args.k)
        _emit(f"P[separating {args.k}-circuit] <= {val:.12g}", args.out)
        return 0
    raise ValueError(f"unknown quantity {what!r}")


def parse_stats(spec: str) -> harness.StatsRequest:
    """Parse a --stats string like "genus,xk:3,z:LR+LLR,mell,systole,separating:6"."""
    genus = mell = systole = False
    xk_max = 0
    sep = 0
    z: tuple = ()
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        name, _, arg = token.partition(":")
        if name == "genus":
            genus = True
        elif name == "xk":
            xk_max = int(arg) if arg else 3
        elif name == "z":
            if not arg:
                raise ValueError("z needs word(s), e.g. z:LR+LLR")
            z = tuple(arg.split("+"))
        elif name == "mell":
            mell = True
        elif name == "systole":
            systole = True
        elif name == "separating":
            if not arg:
                raise ValueError("separating needs a bound, e.g. separating:6")
            sep = int(arg)
        else:
            raise ValueError(f"unknown statistic {name!r}")
    return harness.StatsRequest(genus=genus, xk_max=xk_max, z_classes=z,
                                mell=mell, systole=systole, separating_bound=sep)


def _report_csv(report: harness.RunReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["key", "value"])

    def walk(prefix: str, obj) -> None:
        if isinstance(obj, dict):
            for k in sorted(obj, key=str):
                walk(f"{prefix}.{k}" if prefix else str(k), obj[k])
        elif isinstance(obj, (list, tuple)):
            writer.writerow([prefix, " ".join(map(str, obj))])
        else:
            writer.writerow([prefix, obj])

    walk("", report.to_dict())
    return buf.getvalue()


def _emit_report(report: harness.RunReport, fmt: str, out: Optional[str]) -> None:
    if fmt == "json":
        _emit(report.to_json(), out)
    elif fmt == "csv":
        _emit(_report_csv(report), out)
    else:
        _emit(report.to_text(), out)


def _cmd_sample(args) -> int:
    config = harness.RunConfig(n=args.n, samples=args.count, seed=args.seed,
                               stats=parse_stats(args.stats), workers=args.workers)
    report = harness.run(config)
    _emit_report(report, args.format, args.out)
    return 0


def _cmd_brute_force(args) -> int:
    report = harness.run_exhaustive(args.n, parse_stats(args.stats))
    _emit_report(report, args.format, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randsurf",
        description="Systoles of random surfaces via random cubic ribbon graphs "
                    f"(kernel: {LANE})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate-classes", help="trace classes up to a bound, as CSV")
    p.add_argument("--max-trace", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_enumerate_classes)

    p = sub.add_parser("limit", help="bracket the limiting expected systole")
    p.add_argument("--terms", type=int, required=True,
                   help="largest trace in the partial sum (>= 4)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("mell-dist", help="limit law of the shortest essential circuit")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_mell_dist)

    p = sub.add_parser("riemannian-bound", help="systole bracket for a Riemannian model")
    p.add_argument("--m1", type=float, required=True)
    p.add_argument("--m2", type=float, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_riemannian_bound)

    p = sub.add_parser("exact", help="closed-form exact values")
    p.add_argument("--what", choices=["xk", "z", "omega", "dnk", "gbound"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--word")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("sample", help="seeded Monte Carlo over random pairings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stats", required=True,
                   help='e.g. "genus,xk:3,z:LR+LLR,mell,systole,separating:6"')
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("brute-force", help="exact statistics over every pairing")
    p.add_argument("--n", type=int, required=True, choices=[1, 2])
    p.add_argument("--stats", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=_cmd_brute_force)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
