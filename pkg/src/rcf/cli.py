"""Command-line front end: ``rcf eval | modulus | solve | verify | table``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from mpmath import mp, mpf

from .cfrac import FractionKind, fraction_direct, fraction_oracle
from .closed_forms import EQUATIONS, closed_form, solve_equation
from .elliptic import ellK, modulus_from_r, parse_r
from .errors import RCFError
from .numerics import PrecisionContext
from .qseries import Nome, as_nome
from .verifier import run_suite

KINDS = [k.value for k in FractionKind]
ROUTES = ("direct", "oracle", "closed")


def fmt(x, digits: int) -> str:
    """``x`` rounded to ``digits`` significant digits, in positional notation."""
    with mp.workdps(digits + 10):
        return mp.nstr(x, digits, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)


class UsageError(Exception):
    pass


def _context(args) -> PrecisionContext:
    if args.prec < 64:
        raise UsageError("--prec must be at least 64")
    ctx = PrecisionContext(args.prec)
    if getattr(args, "digits", 0) is None:
        args.digits = min(args.default_digits, int(0.3 * args.prec))
    digits = getattr(args, "digits", None)
    if digits is not None and not 1 <= digits <= 0.3 * args.prec:
        raise UsageError(f"--digits must lie in [1, {int(0.3 * args.prec)}] at {args.prec} bits")
    return ctx


def _point(args, ctx):
    """``(r or None, nome)`` from ``--r`` or ``--q``."""
    if args.r is not None:
        r = parse_r(args.r)
        return r, modulus_from_r(r, ctx).nome
    with ctx.workprec():
        nome = as_nome(mpf(args.q))
        if nome.value == 0:
            raise UsageError("q must be positive")
        return None, nome


def _r_of(nome: Nome, ctx):
    with ctx.workprec():
        return (mp.log(nome.value) / mp.pi) ** 2


def cmd_eval(args) -> int:
    ctx = _context(args)
    r, nome = _point(args, ctx)
    if args.route == "direct":
        value = fraction_direct(args.kind, nome, ctx)
    elif args.route == "oracle":
        value = fraction_oracle(args.kind, nome, ctx)
    else:
        value = closed_form(args.kind, r if r is not None else _r_of(nome, ctx), ctx)
    print(fmt(value, args.digits))
    return 0


def cmd_modulus(args) -> int:
    ctx = _context(args)
    r, nome = _point(args, ctx)
    point = modulus_from_r(r if r is not None else _r_of(nome, ctx), ctx)
    with ctx.workprec():
        rows = {
            "r": str(point.r) if r is not None else fmt(point.r, args.digits),
            "q": fmt(point.q, args.digits),
            "k": fmt(point.k, args.digits),
            "kprime": fmt(point.kprime, args.digits),
            "K": fmt(ellK(point.k, ctx), args.digits),
        }
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for name, value in rows.items():
            print(f"{name:<7} {value}")
    return 0


def cmd_solve(args) -> int:
    ctx = _context(args)
    sol = solve_equation(args.equation, parse_r(args.r), ctx)
    n = len(sol.roots)
    print(f"{sol.name} at r = {args.r}: degree {sol.polynomial.degree}, {n} real root{'' if n == 1 else 's'}")
    for root in sol.roots:
        mark = "*" if root.value == sol.selected else " "
        mult = f"  (multiplicity {root.multiplicity})" if root.multiplicity > 1 else ""
        print(f"{mark} {fmt(root.value, args.digits)}{mult}")
    print(f"selected {fmt(sol.selected, args.digits)}")
    print(f"oracle   {fmt(sol.oracle, args.digits)}")
    return 0


def cmd_verify(args) -> int:
    ctx = _context(args)
    report = run_suite(args.suite, ctx, jobs=args.jobs)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        print(report.to_text())
    return 0 if report.success else 1


def cmd_table(args) -> int:
    ctx = _context(args)
    kind = FractionKind.parse(args.fraction)
    rows = []
    for item in args.r_list.split(","):
        r = parse_r(item)
        nome = modulus_from_r(r, ctx).nome
        rows.append({
            "r": str(r),
            "q": fmt(nome.value, args.digits),
            "direct": fmt(fraction_direct(kind, nome, ctx), args.digits),
            "oracle": fmt(fraction_oracle(kind, nome, ctx), args.digits),
            "closed": fmt(closed_form(kind, r, ctx), args.digits),
        })
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print("  ".join(f"{k}={v}" for k, v in row.items()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcf",
        description="Evaluate and verify Ramanujan's continued fractions at arbitrary precision.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, digits=50):
        p.add_argument("--prec", type=int, default=256, help="working precision in bits (default 256)")
        p.add_argument("--digits", type=int, default=None,
                       help=f"significant digits printed (default {digits}, capped at 0.3 * prec)")
        p.set_defaults(default_digits=digits)

    def point(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--r", help="r in q = exp(-pi sqrt(r)); exact rationals like 1/4 or 5/2")
        g.add_argument("--q", help="the nome q itself, a decimal in (0, 1)")

    p = sub.add_parser("eval", help="evaluate one fraction")
    p.add_argument("kind", choices=KINDS)
    point(p)
    common(p)
    p.add_argument("--route", choices=ROUTES, default="direct")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("modulus", help="singular modulus k_r, k'_r and K(k_r)")
    point(p)
    common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("solve", help="real roots of one of the polynomial equations")
    p.add_argument("equation", choices=EQUATIONS)
    p.add_argument("--r", required=True)
    common(p, digits=30)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the identity catalog")
    p.add_argument("--suite", default=None, help="check id or tag (default: every check)")
    p.add_argument("--prec", type=int, default=256)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="one fraction over a list of r by all three routes")
    p.add_argument("--fraction", required=True, choices=KINDS)
    p.add_argument("--r-list", required=True, help="comma-separated r values")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    common(p, digits=30)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (RCFError, ValueError, ZeroDivisionError) as exc:
        print(f"rcf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
