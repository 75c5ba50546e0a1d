"""Command line entry point: ``sumprod gen | analyze | certify | recheck | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .certify import build_bundle, recheck_bundle
from .combinatorics import TRIVIAL_BUDGET, growth_report
from .errors import DomainError, ParseError, ResourceError, SumprodError
from .families import KINDS, FamilySpec, generate
from .io import format_set_text, read_set_file, report_json, report_row, write_report
from .notation import parse_ambient
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_MAX_SIZE = 512


class UsageError(Exception):
    pass


def _seed(value):
    if value is not None:
        return value
    env = os.environ.get("SUMPROD_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SUMPROD_SEED must be an integer, got {env!r}") from None


def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _load(path, max_size):
    A, meta = read_set_file(path)
    if len(A) > max_size:
        raise ResourceError(f"{path}: |A| = {len(A)} exceeds --max-size {max_size}")
    return A, meta


def cmd_gen(args) -> int:
    if args.family == "custom_file" and not args.inp:
        raise UsageError("custom_file needs --in PATH")
    fs = FamilySpec(
        kind=args.family,
        ambient=parse_ambient(args.ambient),
        n=args.n,
        degree=args.degree,
        seed=_seed(args.seed),
        start=args.start,
        step=args.step,
        path=args.inp[0] if args.inp else None,
    )
    A = generate(fs)
    if len(A) > args.max_size:
        raise ResourceError(f"generated |A| = {len(A)} exceeds --max-size {args.max_size}")
    _emit(format_set_text(A, fs.describe()), args.out)
    return EXIT_OK


def _analyze_one(path, max_size, budget):
    A, meta = _load(path, max_size)
    family = meta.get("family", Path(path).stem)
    rep = growth_report(A, family, energy_k=2, budget=budget)
    row = report_json(rep)
    for key in ("seed", "rng"):
        if key in meta:
            row[key] = meta[key]
    return report_row(rep), row


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps submission order, so output ordering does not depend on jobs
        return list(pool.map(fn, *zip(*items)))


def cmd_analyze(args) -> int:
    if not args.inp:
        raise UsageError("analyze needs at least one --in PATH")
    paths = sorted(args.inp)
    results = _map(_analyze_one, [(p, args.max_size, args.energy_budget) for p in paths], args.jobs)
    if args.format == "json":
        text = json.dumps([r[1] for r in results], indent=2) + "\n"
    else:
        text = write_report([r[0] for r in results])
    _emit(text, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    if not args.inp or len(args.inp) != 1:
        raise UsageError("certify takes exactly one --in PATH")
    A, meta = _load(args.inp[0], args.max_size)
    text, ok = build_bundle(A, meta.get("family", Path(args.inp[0]).stem))
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_recheck(args) -> int:
    if not args.inp or len(args.inp) != 1:
        raise UsageError("recheck takes exactly one --in PATH")
    checks = recheck_bundle(Path(args.inp[0]).read_text(encoding="utf-8"))
    ok = all(c.passed for c in checks)
    lines = [c.line() for c in checks] + [f"status: {'PASS' if ok else 'FAIL'}"]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        doc = {
            "suite": args.suite,
            "passed": len(checks) - len(failed),
            "failed": len(failed),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [c.line() for c in checks]
        lines.append(f"summary: {len(checks) - len(failed)} passed, {len(failed)} failed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumprod", description="Exact sum-product experiments over F_q((1/t)) and Q_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--in", dest="inp", action="append", metavar="PATH", help="input file (repeatable)")
        p.add_argument("--out", default=None, help="output path, default stdout")
        p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
        p.add_argument("--energy-budget", type=int, default=TRIVIAL_BUDGET,
                       help="largest |A|^(2k) for the brute-force trivial-solution census")

    g = sub.add_parser("gen", help="write a generated set file")
    common(g)
    g.add_argument("--family", required=True, choices=KINDS)
    g.add_argument("--ambient", required=True, help="e.g. 'p=2', 'p=2,e=2,modulus=1,1,1' or 'padic: p=3'")
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--degree", type=int, default=None)
    g.add_argument("--seed", type=int, default=None, help="falls back to $SUMPROD_SEED, then 0")
    g.add_argument("--start", default=None)
    g.add_argument("--step", default=None)
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="growth report rows for set files")
    common(a)
    a.add_argument("--format", choices=("csv", "json"), default="csv")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("certify", help="chain/separable certificate bundle")
    common(c)
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("recheck", help="re-verify a certificate bundle from disk")
    common(r)
    r.set_defaults(func=cmd_recheck)

    v = sub.add_parser("verify", help=f"run an invariant battery ({', '.join(SUITES)})")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"sumprod: resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ParseError as exc:
        print(f"sumprod: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError, SumprodError, ValueError, OSError) as exc:
        print(f"sumprod: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
