"""Command-line entry point: ``zonograph {recognize,realize,generate,stats,verify}``.

Exit codes: 0 success or accept, 1 rejected input or failed verification,
2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .formats import InputError, dump_graph, emit_off, parse_graph, parse_off, stats
from .oracle import build_zonotope, graph_of, random_generators
from .polyhedron import verify_zonohedron
from .realizer import InfeasibleDirectionError, realize_detailed
from .recognizer import Rejection, recognize, report
from .reducer import reduce_to_cube

EXIT_OK, EXIT_REJECT, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_recognize(args) -> int:
    result = recognize(parse_graph(_read(args.graph)))
    _emit(report(result))
    return EXIT_REJECT if isinstance(result, Rejection) else EXIT_OK


def cmd_realize(args) -> int:
    g = parse_graph(_read(args.graph))
    cert = recognize(g)
    if isinstance(cert, Rejection):
        _emit(report(cert))
        return EXIT_REJECT
    trace = reduce_to_cube(g, cert)
    zone_scales = args.zone_scales
    if zone_scales is not None and len(zone_scales) != len(trace.steps):
        raise InputError(f"--zone-scales needs {len(trace.steps)} values, got {len(zone_scales)}")
    try:
        real = realize_detailed(g, cert, trace, scale=args.scale, zone_scales=zone_scales)
    except InfeasibleDirectionError as exc:
        _emit({"accepted": True, "realized": False, "error": str(exc)})
        return EXIT_REJECT
    _write(args.output, emit_off(real.polyhedron, args.precision))
    if args.trace:
        doc = trace.to_json()
        doc["directions"] = [
            {"d": [str(c) for c in d.d], "method": d.method, "perturbed": d.perturbed}
            for d in real.directions
        ]
        doc["added_zone_lengths"] = list(real.added_zone_lengths)
        _write(args.trace, json.dumps(doc))
    _emit({
        "accepted": True,
        "realized": True,
        "vertices": real.polyhedron.vertex_count,
        "faces": real.polyhedron.face_count,
        "expansions": len(real.directions),
        "output": args.output,
    })
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.seed is None:
        print("generate: refusing to run without --seed (outputs must be reproducible)",
              file=sys.stderr)
        return EXIT_INPUT
    if args.m < 3:
        raise InputError("-m must be at least 3")
    poly = build_zonotope(random_generators(args.m, args.seed))
    g = graph_of(poly)
    _write(args.output, dump_graph(g) + "\n")
    if args.off:
        _write(args.off, emit_off(poly, args.precision))
    _emit({"m": args.m, "seed": args.seed, "n": g.vertex_count, "output": args.output})
    return EXIT_OK


def cmd_stats(args) -> int:
    cert = recognize(parse_graph(_read(args.graph)))
    if isinstance(cert, Rejection):
        _emit(report(cert))
        return EXIT_REJECT
    _emit(stats(cert).to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify_zonohedron(parse_off(_read(args.mesh)))
    print(rep.summary())
    return EXIT_OK if rep.ok else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonograph", description="Recognize and realize zonohedral graphs."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide whether a graph is zonohedral")
    p.add_argument("graph")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("realize", help="build a convex zonohedron with the given graph")
    p.add_argument("graph")
    p.add_argument("-o", "--output", required=True, help="OFF file to write")
    p.add_argument("--scale", type=_fraction, default=Fraction(1),
                   help="length of every expansion (rational, default 1)")
    p.add_argument("--zone-scales", type=_fraction, nargs="+", metavar="S",
                   help="one expansion length per added zone, in order of addition")
    p.add_argument("--trace", help="write the reduction trace and directions as JSON")
    p.add_argument("--precision", type=int, help="decimal digits in the OFF file")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("generate", help="graph of a random generic zonotope")
    p.add_argument("-m", type=int, required=True, help="number of generators")
    p.add_argument("--seed", type=int, help="random seed (required)")
    p.add_argument("-o", "--output", required=True, help="graph JSON to write")
    p.add_argument("--off", help="also write the zonotope itself as OFF")
    p.add_argument("--precision", type=int, help="decimal digits in the OFF file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="vertex, face and zone counts of an accepted graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="exact zonohedron check of an OFF mesh")
    p.add_argument("mesh")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except InputError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
