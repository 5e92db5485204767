"""Command line entry point: ``halfcanon <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .formats import FormatId, Presentation, builtin
from .groebner import subring_presentation
from .hilbert import format_series, hilbert_series
from .polycore import Field, ParseError
from .presentation_io import PresentationError, read_presentation, write_presentation
from .resolution import ResolutionTooLong, betti_table, format_betti, free_resolution
from .spincomb import GraphError, count_regular_ggs, parse_graph
from .verify import CertificateReport, VerifyConfig, run_certificate


class UsageError(Exception):
    pass


def format_report(report: CertificateReport, mode: str = "text") -> str:
    if mode == "json":
        return json.dumps(report.as_dict(), indent=2) + "\n"
    if mode != "text":
        raise ValueError(f"unknown report mode {mode!r}")
    head = f"format {report.format or '-'}  seed {'-' if report.seed is None else report.seed}  field {report.field}"
    lines = [head]
    width = max((len(c.name) for c in report.checks), default=4)
    for c in report.checks:
        row = f"{c.status.upper():7} {c.name:<{width}}"
        if c.expected:
            row += f"  expected: {c.expected}"
        if c.actual:
            row += f"  actual: {c.actual}"
        lines.append(row.rstrip())
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def _field(text: str) -> Field:
    if text.lower() in ("q", "qq"):
        return Field.rationals()
    try:
        return Field.gf(int(text))
    except ValueError as exc:
        raise UsageError(f"--field: {exc}") from None


def _parse_gens(text: str, pres: Presentation) -> list:
    out = []
    for item in text.split(","):
        name, eq, body = item.partition("=")
        if not eq or not name.strip():
            raise UsageError(f"--gens: expected NAME=POLY, got {item!r}")
        out.append((name.strip(), pres.ring.parse(body)))
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    pres = read_presentation(args.file)
    config = VerifyConfig(oracle_degree=args.oracle_degree, deterministic=args.deterministic)
    report = run_certificate(pres, config)
    sys.stdout.write(format_report(report, "json" if args.json else "text"))
    return 0 if report.verdict == "pass" else 1


def cmd_hilbert(args) -> int:
    pres = read_presentation(args.file)
    series = hilbert_series(pres.ideal.groebner())
    print(format_series(series))
    if args.expand is not None:
        print(" ".join(str(c) for c in series.expand(args.expand)))
    return 0


def cmd_resolve(args) -> int:
    pres = read_presentation(args.file)
    try:
        res = free_resolution(pres.ideal, max_length=args.max_length)
    except ResolutionTooLong as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = format_betti(betti_table(res))
    sys.stdout.write(text)
    if args.betti_out:
        Path(args.betti_out).write_text(text)
    return 0


def cmd_builtin(args) -> int:
    fmt = FormatId.parse(args.format)
    field_ = _field(args.field) if args.field else Field()
    _emit(write_presentation(builtin(fmt, args.seed, field_)), args.out)
    return 0


def cmd_subring(args) -> int:
    pres = read_presentation(args.file)
    sub = subring_presentation(pres.ideal, _parse_gens(args.gens, pres))
    sys.stdout.write(write_presentation(Presentation(sub.ring, sub, None, None)))
    return 0


def cmd_ggs_count(args) -> int:
    graph = parse_graph(Path(args.file).read_text())
    print(count_regular_ggs(graph, args.b1))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="halfcanon",
                                     description="Half-canonical rings of genus two curves: build, compute, certify.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the full certificate on a presentation file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle-degree", type=int, default=10)
    p.add_argument("--deterministic", action="store_true", help="zero the timing fields")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hilbert", help="print the Hilbert series")
    p.add_argument("file")
    p.add_argument("--expand", type=int, metavar="D", help="also print coefficients up to degree D")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("resolve", help="print the minimal graded Betti numbers")
    p.add_argument("file")
    p.add_argument("--max-length", type=int)
    p.add_argument("--betti-out", metavar="FILE")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("builtin", help="write an instance of a built-in format")
    p.add_argument("format", choices=[f.value for f in FormatId])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--field", help="a prime p, or q for the rationals (default 32003)")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("subring", help="present the subring generated by given elements")
    p.add_argument("file")
    p.add_argument("--gens", required=True, help='e.g. "Y1=x^2,Y2=y,U=x*z"')
    p.set_defaults(func=cmd_subring)

    p = sub.add_parser("ggs-count", help="count regular ggs structures on a nodal curve")
    p.add_argument("file")
    p.add_argument("--b1", type=int, help="first Betti number, overriding the dual-graph value")
    p.set_defaults(func=cmd_ggs_count)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        import logging
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, PresentationError, ParseError, GraphError, OSError, ValueError) as exc:
        print(f"halfcanon {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
