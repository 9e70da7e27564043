"""Command-line front end: ``twistalg <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import cd_oracle, clifford
from .algebra import AlgebraContext, matrix_rep, mul, mul_table
from .dyadic import DimensionTooLarge
from .experiments import DEFAULT_TRIALS, norm_growth, orthogonality_scan
from .groups import GroupTooLarge, NotAGroup, dyadic, read_csv
from .twist import Twist, TwistTable, check_properties, hadamard, cyd, clf, materialize

SEED_ENV = "TWISTALG_SEED"


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _aligned(rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    w = max((len(c) for r in rows for c in r), default=1)
    return "".join(" ".join(c.rjust(w) for c in r) + "\n" for r in rows)


def _twist(args) -> Twist:
    try:
        return Twist.of(args.twist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_twist_table(args, out):
    table = materialize(_twist(args), args.n)
    if args.format == "json":
        out.write(table.to_json() + "\n")
    elif args.format == "csv":
        out.write(table.to_csv())
    else:
        out.write(_aligned([[f"{v:+d}" for v in row] for row in table.signs.astype(int).tolist()]))
    return 0


def cmd_mul_table(args, out):
    ctx = AlgebraContext.dyadic(_twist(args), args.n)
    cells = mul_table(ctx)
    if args.format == "json":
        out.write(json.dumps({"twist": ctx.twist.name, "n": args.n, "table": cells}) + "\n")
    elif args.format == "csv":
        out.write(_csv(cells))
    else:
        out.write(_aligned(cells))
    return 0


def cmd_mul(args, out):
    ctx = AlgebraContext.dyadic(_twist(args), args.n)
    try:
        x, y = ctx.parse(args.x), ctx.parse(args.y)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    z = mul(ctx, x, y)
    out.write((z.to_json() if args.format == "json" else str(z)) + "\n")
    return 0


def cmd_translate(args, out):
    terms = args.terms or [line for line in sys.stdin.read().splitlines() if line.strip()]
    results = []
    for t in terms:
        try:
            results.append(clifford.translate(t))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.format == "json":
        out.write(json.dumps(dict(zip(terms, results))) + "\n")
    else:
        out.write("".join(r + "\n" for r in results))
    return 0


def cmd_check_properties(args, out):
    if args.group:
        group = read_csv(Path(args.group))
        if not args.signs:
            raise UsageError("--group needs --signs with a sign table for that group")
        text = Path(args.signs).read_text()
        tt = TwistTable.from_json(text) if args.signs.endswith(".json") else TwistTable.from_csv(text)
        twist = Twist.table(group, tt.signs)
    else:
        if args.n is None:
            raise UsageError("check-properties needs --n (or --group/--signs)")
        group = dyadic(args.n)
        twist = _twist(args)
    report = check_properties(twist, group)
    out.write((json.dumps(report.as_dict()) if args.format == "json" else report.to_text()) + "\n")
    failed = [p for p in args.require if not report.results[p].holds]
    if failed:
        print(f"required properties failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def cmd_oracle_check(args, out):
    results = [
        cd_oracle.sweep("cayley-dickson oracle vs cyd", cd_oracle.oracle_twist, cyd, args.n),
        cd_oracle.sweep("pair-product oracle vs hadamard", cd_oracle.hadamard_oracle_twist, hadamard, args.n),
    ]
    if args.clifford:
        dim = 1 << args.n
        bad = [(p, q) for p in range(dim) for q in range(dim)
               if clifford.blade_mul_oracle(clifford.Blade(p), clifford.Blade(q)) != (clf(p, q), clifford.Blade(p ^ q))]
        results.append(cd_oracle.SweepResult("blade factor oracle vs clf", args.n, dim * dim, len(bad),
                                             bad[0] if bad else None))
    if args.format == "json":
        out.write(json.dumps([{"name": r.name, "n": r.n, "checked": r.checked, "failed": r.failed,
                               "first_failure": r.first_failure} for r in results]) + "\n")
    else:
        out.write("".join(r.line() + "\n" for r in results))
    return 0 if all(r.passed for r in results) else 1


def cmd_matrix_rep(args, out):
    ctx = AlgebraContext.dyadic(_twist(args), args.n)
    if not 0 <= args.p < ctx.dim:
        raise UsageError(f"--p must lie in 0..{ctx.dim - 1}")
    L = matrix_rep(ctx, args.p)
    if args.format == "json":
        out.write(json.dumps({"twist": ctx.twist.name, "n": args.n, "p": args.p, "matrix": L.tolist()}) + "\n")
    elif args.format == "csv":
        out.write(_csv(L.tolist()))
    else:
        out.write(_aligned(L.tolist()))
    return 0


def _ns(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def cmd_experiment(args, out):
    seed = args.seed if args.seed is not None else _default_seed()
    if args.which == "orthogonality":
        ns = _ns(args.n or "1..4")
        reports = [orthogonality_scan(n, args.trials, seed) for n in ns]
    else:
        ns = _ns(args.n or "4..10")
        reports = [norm_growth(args.twist, ns, args.profile, args.trials, seed)]
    if args.format == "json":
        out.write(json.dumps([json.loads(r.to_json()) for r in reports]) + "\n")
    else:
        out.write("\n".join(r.to_text() for r in reports))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistalg", description="Twisted group algebras over the XOR group")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, twist=True, n=True, formats=("text", "csv", "json")):
        if twist:
            p.add_argument("--twist", default="cyd", help="cyd, clf, hadamard, trivial, grade-parity, xor-parity")
        if n:
            p.add_argument("--n", type=int, required=True, help="dimension exponent (algebra has 2**n basis vectors)")
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("twist-table", help="print the sign matrix of a twist")
    common(p)
    p.set_defaults(func=cmd_twist_table)

    p = sub.add_parser("mul-table", help="print the basis multiplication table as +k/-k cells")
    common(p)
    p.set_defaults(func=cmd_mul_table)

    p = sub.add_parser("mul", help="multiply two elements, e.g. \"1-2*i3\" \"i6\"")
    common(p, formats=("text", "json"))
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("translate", help="translate between e-notation and i-notation")
    common(p, twist=False, n=False, formats=("text", "json"))
    p.add_argument("terms", nargs="*", help="terms such as e134 or i13 (read from stdin when absent)")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("check-properties", help="exhaustively check the twist axioms")
    p.add_argument("--twist", default="cyd")
    p.add_argument("--n", type=int)
    p.add_argument("--group", help="CSV Cayley table of a finite group")
    p.add_argument("--signs", help="CSV or JSON sign table for --group")
    p.add_argument("--require", action="append", default=[],
                   choices=["positive", "identive", "invertive", "proper", "associative", "alt_associative"],
                   help="exit 1 unless this property holds (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check_properties)

    p = sub.add_parser("oracle-check", help="compare sign rules with the brute-force oracles on every pair")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--clifford", action="store_true", help="also sweep the blade factor oracle against clf")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("matrix-rep", help="print the left-regular matrix L_p")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_matrix_rep)

    p = sub.add_parser("experiment", help="numerical experiments on truncated sequences")
    p.add_argument("which", choices=("orthogonality", "norm-growth"))
    p.add_argument("--n", help="dimension exponents, e.g. 4..10 or 1,2,3")
    p.add_argument("--twist", default="convolution", help="convolution or a twist name (norm-growth)")
    p.add_argument("--profile", default="geometric:0.5", help="geometric[:r] or power[:s]")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, help=f"defaults to ${SEED_ENV} or 0")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_experiment)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, DimensionTooLarge, GroupTooLarge, NotAGroup, ValueError, IndexError, OSError) as exc:
        print(f"twistalg {args.command}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
