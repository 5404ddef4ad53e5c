"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from pathlib import Path

from . import mub, phasespace as ps, render, transforms as tf
from .gf import MAX_DEGREE, MIN_DEGREE, GF2n, poly_str
from .verify import MAX_VERIFY_DEGREE, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _check_degree(n: int, low: int, high: int, what: str) -> None:
    if not low <= n <= high:
        raise UsageError(f"{what} supports {low} <= n <= {high}, got n = {n}")


def _bundle_label(bundle: ps.Bundle, index: int) -> str:
    return bundle.label or f"bundle{index + 1}"


def _bundles(n: int) -> list[tuple[str, ps.Bundle]]:
    _check_degree(n, 1, ps.MAX_EXHAUSTIVE_DEGREE, "bundle enumeration")
    return list(_labeled_bundles(n))


@lru_cache(maxsize=None)
def _labeled_bundles(n: int) -> tuple[tuple[str, ps.Bundle], ...]:
    return tuple((_bundle_label(b, i), b) for i, b in enumerate(ps.enumerate_bundles(GF2n(n))))


def _lookup(n: int, label: str) -> ps.Bundle:
    from .reference import reference_tables

    aliases = {t.name: t.label for t in reference_tables()} if n == 2 else {}
    label = aliases.get(label, label)
    for name, b in _bundles(n):
        if name == label:
            return b
    raise UsageError(f"unknown bundle label {label!r}")


# -- commands -------------------------------------------------------------------


def cmd_field(args) -> tuple[str, int]:
    _check_degree(args.n, MIN_DEGREE, MAX_DEGREE, "field construction")
    f = GF2n(args.n)
    if args.format == "json":
        body = f.to_json()
        body["trace"] = [f.trace(x) for x in f.elements()]
        return _dump(body), EXIT_OK
    lines = [
        f"GF(2^{f.n}) modulus {poly_str(f.modulus)} ({f.modulus})",
        "self-dual basis: " + ", ".join(f.label(t) for t in f.basis),
        "element  trace  coordinates",
    ]
    for x in f.elements():
        lines.append(f"{f.label(x):>7}  {f.trace(x):>5}  {''.join(map(str, f.expand(x)))}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_curves(args) -> tuple[str, int]:
    _check_degree(args.n, 1, ps.MAX_EXHAUSTIVE_DEGREE, "exhaustive census")
    census = ps.enumerate_structures(GF2n(args.n))
    counts = census.counts()
    summary = {
        "ray": counts["ray"],
        "regular": counts["regular-alpha"] + counts["regular-beta"],
        "exceptional": counts["exceptional"],
    }
    if args.format == "json":
        return _dump({"n": args.n, "curves": [c.to_json() for c in census], "summary": summary}), EXIT_OK
    lines = []
    for i, c in enumerate(census, start=1):
        cl = c.classification
        flags = [name for name, on in (("alpha-degenerate", cl.alpha_degenerate),
                                       ("beta-degenerate", cl.beta_degenerate),
                                       ("symmetric", cl.symmetric)) if on]
        lines.append(f"{i:>3}  {c.kind.value:<14} {c.equation():<44} {' '.join(flags)}".rstrip())
    lines.append(f"{summary['ray']} rays, {summary['regular']} regular, {summary['exceptional']} exceptional")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_bundles(args) -> tuple[str, int]:
    bundles = _bundles(args.n)
    if args.format == "json":
        return _dump({"n": args.n, "bundles": [b.to_json() for _, b in bundles]}), EXIT_OK
    lines = []
    for label, b in bundles:
        lines.append(f"{label}: " + " | ".join(c.equation() for c in b.curves))
    lines.append(f"{len(bundles)} bundles")
    return "\n".join(lines) + "\n", EXIT_OK


def _format_report(label: str, report: dict) -> str:
    lines = [f"== {label} =="]
    for row in report["rows"]:
        lines.append(f"{row['basis']}  {row['curve']}  [{row['separability']}]")
        lines.append("     operators:  " + ", ".join(row["operators"]))
        lines.append("     factorized: " + ", ".join(row["factorized"]))
    for flag in report["flags"]:
        lines.append(f"  ! {flag}")
    return "\n".join(lines)


def cmd_tables(args) -> tuple[str, int]:
    bundles = _bundles(args.n)
    if args.bundle:
        bundles = [(args.bundle, _lookup(args.n, args.bundle))]
    reports = [(label, mub.bundle_report(b)) for label, b in bundles]
    if args.format == "json":
        body = {"n": args.n, "bundles": []}
        for (label, report), (_, b) in zip(reports, bundles):
            body["bundles"].append({"label": label, **b.to_json(), "report": report})
        return _dump(body), EXIT_OK
    return "\n\n".join(_format_report(label, r) for label, r in reports) + "\n", EXIT_OK


def cmd_transform(args) -> tuple[str, int]:
    if not args.src or not args.dst:
        raise UsageError("transform needs --src and --dst")
    src, dst = _lookup(args.n, args.src), _lookup(args.n, args.dst)
    found = tf.find_transformation(src, dst)
    word = found.word() if found is not None else "none"
    if args.format == "json":
        return _dump({"src": args.src, "dst": args.dst, "transformation": None if found is None else word}), EXIT_OK
    return word + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    _check_degree(args.n, 1, MAX_VERIFY_DEGREE, "verify")
    results = run_checks(args.n)
    ok = all(r.passed for r in results)
    if args.format == "json":
        body = {"n": args.n, "passed": ok, "checks": [vars(r) for r in results]}
        return _dump(body), EXIT_OK if ok else EXIT_FAIL
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> tuple[str, int]:
    if not args.bundle:
        raise UsageError("render needs --bundle")
    b = _lookup(args.n, args.bundle)
    if args.format == "svg":
        return render.render_svg(b), EXIT_OK
    if args.format == "json":
        return _dump({"bundle": args.bundle, "grid": render.grid_marks(b)}), EXIT_OK
    return render.render_ascii(b), EXIT_OK


COMMANDS = {
    "field": cmd_field,
    "curves": cmd_curves,
    "bundles": cmd_bundles,
    "tables": cmd_tables,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="field degree (d = 2**n)")
    common.add_argument("--format", choices=("text", "json", "svg"), default="text")
    common.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    parser = argparse.ArgumentParser(prog="mubcurves", description="Phase-space curves and mutually unbiased bases over GF(2^n)")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field", parents=[common], help="field tables and self-dual basis")
    sub.add_parser("curves", parents=[common], help="census of additive commutative curves")
    sub.add_parser("bundles", parents=[common], help="bundles of curves meeting only at the origin")
    p = sub.add_parser("tables", parents=[common], help="operator tables for every bundle")
    p.add_argument("--bundle")
    p = sub.add_parser("transform", parents=[common], help="local map between two bundles")
    p.add_argument("--src")
    p.add_argument("--dst")
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p = sub.add_parser("render", parents=[common], help="phase-space picture of a bundle")
    p.add_argument("--bundle")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format == "svg" and args.command != "render":
        print("error: --format svg is only available for render", file=sys.stderr)
        return EXIT_USAGE
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, ps.CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
