"""Command line interface.

Exit codes: 0 success, 1 invalid input, 2 limit exceeded (unsolved or the
oracle's size guard), 3 internal invariant failure.  Machine-readable output
goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .driver import SolveConfig, solve
from .errors import GuardExceeded, InternalError, MalformedInput, MalformedSequence
from .graph import DistanceCache
from .heuristics import bff_d, bounds_from_sequence, conjectured_bound, theorem1_bound, validate_sequence
from .ingest import labels_by_id, parse_instance
from .oracle import DEFAULT_GUARD, brute_force_burning_number
from .report import SolveReport, write_report

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _non_negative_float(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphburn", description="Exact graph burning number solver.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", type=Path, help="edge list or MatrixMarket file")
    common.add_argument("--format", choices=["auto", "edgelist", "mtx"], default="auto")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")

    p = sub.add_parser("solve", parents=[common], help="compute the burning number")
    p.add_argument("--seed", type=int, default=0, help="tie-break seed for the first fire source")
    p.add_argument("--time-limit", type=_non_negative_float, metavar="SEC")
    p.add_argument("--node-budget", type=_non_negative_int)
    p.add_argument("--no-timing", action="store_true", help="omit the timing object")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; only single-threaded solving is implemented")

    p = sub.add_parser("validate", parents=[common], help="check a burning sequence")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sequence", help="comma-separated vertex labels")
    group.add_argument("--sequence-file", type=Path, help="file with comma/whitespace-separated labels")

    p = sub.add_parser("bounds", parents=[common], help="heuristic sequence and bounds only")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("oracle", parents=[common], help="brute-force burning number (small graphs)")
    p.add_argument("--oracle-guard", type=_non_negative_int, default=DEFAULT_GUARD)
    return parser


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _pretty_report(r: SolveReport, timing: bool) -> str:
    lines = [
        f"instance        {r.instance}",
        f"vertices/edges  {r.vertex_count} / {r.edge_count}",
        f"bounds (L, U)   {r.L}, {r.U}",
        f"status          {r.status}",
        f"burning number  {r.optimum if r.optimum is not None else f'in [{r.lower_bound}, {r.upper_bound}]'}",
        f"sequence        {', '.join(map(str, r.sequence))}",
        f"BFS runs        {r.bfs_count}",
        "",
        f"{'B':>4}  {'outcome':<11} {'rows':>6} {'cuts':>6} {'nodes':>9}",
    ]
    for d in r.decisions:
        lines.append(f"{d.B:>4}  {d.outcome:<11} {d.covering_constraints_loaded:>6} "
                     f"{d.cuts_added:>6} {d.nodes:>9}")
    if timing:
        lines.append("")
        lines.append(f"total time      {r.to_dict()['timing']['total_ms']} ms")
    return "\n".join(lines)


def _read_sequence(args: argparse.Namespace) -> list[int]:
    text = args.sequence if args.sequence is not None else args.sequence_file.read_text()
    tokens = [t for t in text.replace(",", " ").split()]
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedSequence(f"sequence labels must be integers: {text.strip()!r}") from None


def _run(args: argparse.Namespace) -> int:
    if args.command == "solve" and args.threads != 1:
        print("error: --threads is reserved; only 1 is supported", file=sys.stderr)
        return EXIT_INPUT

    g, label_map = parse_instance(args.instance, args.format)
    labels = labels_by_id(label_map)
    name = args.instance.stem

    if args.command == "solve":
        cfg = SolveConfig(seed=args.seed, node_budget=args.node_budget, time_limit=args.time_limit)
        report = solve(g, cfg, name=name, labels=labels).report
        timing = not args.no_timing
        _emit(args, _pretty_report(report, timing) if args.pretty else write_report(report, timing=timing))
        if report.status != "OPTIMAL":
            print(f"limit reached: burning number in [{report.lower_bound}, {report.upper_bound}]",
                  file=sys.stderr)
            return EXIT_LIMIT
        return EXIT_OK

    cache = DistanceCache(g)
    if args.command == "validate":
        seq = []
        for label in _read_sequence(args):
            if label not in label_map:
                raise MalformedSequence(f"label {label} is not a vertex of the instance")
            seq.append(label_map[label])
        miss = validate_sequence(g, seq, cache)
        if miss is None:
            _emit(args, "VALID")
            return EXIT_OK
        _emit(args, f"UNCOVERED vertex={labels[miss.vertex]} deficit={miss.deficit}")
        return EXIT_INPUT

    if args.command == "bounds":
        seq = bff_d(g, cache, args.seed)
        b = bounds_from_sequence(seq)
        out = {"instance": name, "vertex_count": g.vertex_count, "edge_count": g.edge_count,
               "heuristic_sequence": [labels[v] for v in seq], "L": b.L, "U": b.U,
               "theorem1_bound": theorem1_bound(g), "conjectured_bound": conjectured_bound(g)}
        if args.pretty:
            _emit(args, "\n".join(f"{k:<20}{v}" for k, v in out.items()))
        else:
            _emit(args, json.dumps(out, indent=2))
        return EXIT_OK

    res = brute_force_burning_number(g, guard=args.oracle_guard)
    out = {"instance": name, "burning_number": res.burning_number,
           "sequence": [labels[v] for v in res.witness], "nodes_explored": res.nodes_explored}
    if args.pretty:
        _emit(args, f"burning number {res.burning_number}: {', '.join(map(str, out['sequence']))}")
    else:
        _emit(args, json.dumps(out, indent=2))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return _run(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (MalformedInput, MalformedSequence, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
