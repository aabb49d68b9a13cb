"""Command-line front end.

    khicone torus 2 3
    khicone alexander "t^3 - t^2 + 1 - t^-2 + t^-3" --json
    khicone staircase 0 2 3 --c-plus 3/2 --c-minus -5
    khicone batch knots.txt --jobs 4
    khicone selftest all --seed 42

Exit codes: 0 success, 1 malformed input, 2 polynomial not of L-space form.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import selftest
from .laurent import NotLSpaceForm, PolynomialError
from .report import (InputError, KnotInput, build_report, dumps, parse_knot_input, parse_line,
                     read_batch, render_table)
from .staircase import ZeroScalar

EXIT_OK, EXIT_INPUT, EXIT_NOT_LSPACE = 0, 1, 2


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c-plus", type=_fraction, default=Fraction(1), help="scalar on d1+ (default 1)")
    p.add_argument("--c-minus", type=_fraction, default=Fraction(1), help="scalar on d1- (default 1)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khicone", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torus", help="torus knot T(p, q)")
    p.add_argument("p")
    p.add_argument("q")
    _common(p)

    p = sub.add_parser("alexander", help="Alexander polynomial text")
    p.add_argument("poly", nargs="+")
    _common(p)

    p = sub.add_parser("staircase", help="staircase exponents 0 n1 ... nk")
    p.add_argument("exponents", nargs="+")
    _common(p)

    p = sub.add_parser("batch", help="one knot input per line; '#' starts a comment")
    p.add_argument("path")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    _common(p)

    p = sub.add_parser("selftest", help="run seeded property suites")
    p.add_argument("suite", choices=selftest.SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None)
    return parser


def run_one(knot: KnotInput, c_plus, c_minus) -> tuple[int, dict]:
    """Return ``(exit_code, payload)``; payload is a report or an error record."""
    try:
        return EXIT_OK, build_report(knot, c_plus, c_minus)
    except NotLSpaceForm as exc:
        return EXIT_NOT_LSPACE, {"schema": "1", "input": knot.echo(), "error": "NotLSpaceForm",
                                 "message": str(exc)}
    except (PolynomialError, InputError, ZeroScalar) as exc:
        return EXIT_INPUT, {"schema": "1", "input": knot.echo(), "error": type(exc).__name__,
                            "message": str(exc)}


def _batch_worker(args):
    lineno, line, c_plus, c_minus = args
    try:
        knot = parse_line(line)
        if knot.kind == "batch":
            raise InputError("nested batch files are not supported")
    except InputError as exc:
        return EXIT_INPUT, {"schema": "1", "line": lineno, "error": "InputError", "message": str(exc)}
    code, payload = run_one(knot, c_plus, c_minus)
    payload = dict(payload, line=lineno)
    return code, payload


def run_batch(path: str, c_plus, c_minus, jobs: int = 1) -> tuple[int, list[dict]]:
    lines = read_batch(path)
    work = [(n, line, c_plus, c_minus) for n, line in lines]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_worker, work))
    else:
        results = [_batch_worker(w) for w in work]
    codes = {c for c, _ in results}
    code = EXIT_INPUT if EXIT_INPUT in codes else (EXIT_NOT_LSPACE if EXIT_NOT_LSPACE in codes else EXIT_OK)
    for _, payload in results:
        if "error" in payload:
            payload["message"] = f"{path}:{payload['line']}: {payload['message']}"
    return code, [p for _, p in results]


def _emit_error(payload: dict, as_json: bool) -> None:
    if as_json:
        print(dumps(payload))
    print(f"error: {payload['error']}: {payload['message']}", file=sys.stderr)


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)

    if args.command == "selftest":
        results = selftest.run(args.suite, args.seed, args.cases)
        for r in results:
            print(r.line())
            for f in r.failures[:10]:
                print(f"    {f}")
        ok = all(r.passed for r in results)
        print("all suites passed" if ok else "FAILURES")
        return 0 if ok else 1

    if args.command == "batch":
        code, payloads = run_batch(args.path, args.c_plus, args.c_minus, args.jobs)
        if args.json:
            print(dumps({"schema": "1", "reports": payloads}))
        else:
            for p in payloads:
                if "error" in p:
                    print(f"error: {p['error']}: {p['message']}")
                else:
                    print(render_table(p))
                print()
        return code

    tokens = [args.command] + {
        "torus": lambda: [args.p, args.q],
        "alexander": lambda: args.poly,
        "staircase": lambda: args.exponents,
    }[args.command]()
    try:
        knot = parse_knot_input(tokens)
    except InputError as exc:
        print(f"error: InputError: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code, payload = run_one(knot, args.c_plus, args.c_minus)
    if code != EXIT_OK:
        _emit_error(payload, args.json)
        return code
    print(dumps(payload) if args.json else render_table(payload))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
