"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 validation failure,
3 not conjugate (``compare``), 4 chain search bounds exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import catalog
from . import chorizo as chz
from . import conjugacy as cj
from .chains import ChainError, SearchBoundExceeded, SearchBounds
from .generate import relabel
from .model import InputError, PseudoPeriodicData, from_json, load, to_json, validate

log = logging.getLogger("pseudoperiodic")

EXIT_OK, EXIT_MALFORMED, EXIT_INVALID, EXIT_NOT_CONJUGATE, EXIT_BOUNDS = 0, 1, 2, 3, 4
BUILTIN = "builtin:"


class Invalid(Exception):
    pass


def _bounds(text: str) -> SearchBounds:
    try:
        length, entry = (int(x) for x in text.split(","))
        return SearchBounds(length, entry)
    except ValueError:
        raise argparse.ArgumentTypeError("expected L,N with positive integers (L >= 2)") from None


def _read(path: str) -> PseudoPeriodicData:
    if path.startswith(BUILTIN):
        try:
            return catalog.builtin_get(path[len(BUILTIN):]).data
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if path == "-":
        try:
            return from_json(json.load(sys.stdin), name="<stdin>")
        except json.JSONDecodeError as exc:
            raise InputError(f"stdin: not valid JSON ({exc})") from None
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _read_valid(path: str) -> PseudoPeriodicData:
    data = _read(path)
    report = validate(data)
    if not report.ok:
        raise Invalid(f"{path}: invalid input\n{report}")
    return data


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_validate(args) -> int:
    data = _read(args.file)
    report = validate(data)
    _emit({"valid": report.ok, "violations": [
        {"check": v.check, "message": v.message, "ids": list(v.ids)} for v in report.violations]})
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_quotient(args) -> int:
    data = _read_valid(args.file)
    ch = chz.build_generalized_quotient(data, args.bounds)
    if args.dot:
        Path(args.dot).write_text(chz.to_dot(ch), encoding="utf-8")
        log.info("wrote %s", args.dot)
    if args.format == "dot":
        sys.stdout.write(chz.to_dot(ch))
    else:
        _emit(chz.to_json(ch, data.genus))
    return EXIT_OK


def cmd_invariants(args) -> int:
    data = _read_valid(args.file)
    _emit(cj.invariants(data, args.bounds).to_json())
    return EXIT_OK


def cmd_compare(args) -> int:
    d1, d2 = _read_valid(args.file1), _read_valid(args.file2)
    verdict = cj.conjugate(d1, d2, args.bounds)
    _emit(verdict.to_json())
    return EXIT_OK if verdict.conjugate else EXIT_NOT_CONJUGATE


def cmd_catalog(args) -> int:
    if args.export:
        for p in catalog.export(args.export):
            log.info("wrote %s", p)
    if args.name:
        try:
            e = catalog.builtin_get(args.name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        _emit(to_json(e.data))
    elif not args.export:
        _emit([{"name": n, "description": catalog.builtin_get(n).description} for n in catalog.builtin_list()])
    return EXIT_OK


def selfcheck_entry(e: catalog.CatalogEntry, bounds: SearchBounds) -> list[str]:
    """Failure messages for one catalog entry (empty when every invariant holds)."""
    fails = []
    report = validate(e.data)
    if not report.ok:
        return [f"invalid: {report}"]
    ch = chz.build_generalized_quotient(e.data, bounds)
    res = chz.checks(ch, e.data.genus)
    if not res["euler_balance"]:
        fails.append("euler balance")
    if not res["semidefinite"]:
        fails.append("intersection form")
    if isinstance(res["self_intersections"], str):
        fails.append(res["self_intersections"])
    exp = e.expected
    if "multiplicities" in exp and ch.multiplicity_multiset() != exp["multiplicities"]:
        fails.append(f"multiplicities {ch.multiplicity_multiset()} != {exp['multiplicities']}")
    if "components" in exp and len(ch.components) != exp["components"]:
        fails.append(f"{len(ch.components)} components, expected {exp['components']}")
    for other, want in sorted(exp.get("verdicts", {}).items()):
        got = cj.conjugate(e.data, catalog.builtin_get(other).data, bounds).verdict
        if got != want:
            fails.append(f"compare with {other}: {got}, expected {want}")
    twin = relabel(e.data, random.Random(0))
    got = cj.conjugate(e.data, twin, bounds).verdict
    if got != cj.INVARIANTS_EQUAL:
        fails.append(f"relabeled copy compares as {got}")
    return fails


def cmd_selfcheck(args) -> int:
    failed = 0
    for name in catalog.builtin_list():
        fails = selfcheck_entry(catalog.builtin_get(name), args.bounds)
        failed += bool(fails)
        print(f"{'PASS' if not fails else 'FAIL'} {name}" + "".join(f"\n  {f}" for f in fails))
    print(f"{len(catalog.builtin_list()) - failed}/{len(catalog.builtin_list())} catalog entries pass")
    return EXIT_OK if not failed else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    def options(default_bounds, default_verbose):
        parser = argparse.ArgumentParser(add_help=False)
        parser.add_argument("--bounds", type=_bounds, default=default_bounds, metavar="L,N",
                            help="chain search limits: max entries per chain, max entry value")
        parser.add_argument("-v", "--verbose", action="count", default=default_verbose)
        return parser

    # options may come before or after the subcommand; the subcommand copy must not reset them
    common = options(argparse.SUPPRESS, argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="pseudoperiodic", parents=[options(SearchBounds(), 0)],
                                description="Generalized quotients and conjugacy invariants of "
                                            "pseudoperiodic maps of negative twist.")
    sub = p.add_subparsers(dest="command", required=True)
    note = f"FILE is a JSON path, '-' for stdin, or {BUILTIN}NAME for a catalog entry"

    s = sub.add_parser("validate", parents=[common], help="check every consistency condition", epilog=note)
    s.add_argument("file", metavar="FILE")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("quotient", parents=[common], help="the generalized quotient as a chorizo", epilog=note)
    s.add_argument("file", metavar="FILE")
    s.add_argument("--dot", metavar="PATH", help="also write the dual graph as DOT")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("invariants", parents=[common], help="canonical encodings of the triple", epilog=note)
    s.add_argument("file", metavar="FILE")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("compare", parents=[common], help="conjugacy verdict for two inputs", epilog=note)
    s.add_argument("file1", metavar="FILE1")
    s.add_argument("file2", metavar="FILE2")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("catalog", parents=[common], help="list, print or export built-in examples")
    s.add_argument("--name")
    s.add_argument("--export", metavar="DIR")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("selfcheck", parents=[common], help="run all catalog invariants")
    s.set_defaults(func=cmd_selfcheck)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except SearchBoundExceeded as exc:
        print(f"search bounds exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except Invalid as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except (ChainError, chz.MultiplicityMismatch) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, KeyError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run())
