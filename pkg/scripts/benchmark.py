"""Solve every instance file in a directory and print one CSV row per graph.

    python scripts/benchmark.py DIR [--time-limit SEC] [--reports OUTDIR]

Instances are not shipped (apart from karate); download them from the
network repository of your choice and point this script at the folder.
Columns mirror a typical results table: size, heuristic bounds, optimum,
covering rows loaded at b-1 and b, BFS runs and wall time.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from graphburn import SolveConfig, parse_instance, write_report
from graphburn.driver import solve
from graphburn.errors import MalformedInput
from graphburn.ingest import labels_by_id

COLUMNS = ["instance", "n", "m", "S", "L", "U", "status", "b", "cov_b_minus_1", "cov_b",
           "queries", "bfs", "seconds"]
SUFFIXES = {".mtx", ".edges", ".txt", ".el"}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("directory", type=Path)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reports", type=Path, help="also write each JSON report here")
    args = p.parse_args(argv)

    files = sorted(f for f in args.directory.iterdir() if f.suffix in SUFFIXES)
    if not files:
        print(f"no instance files in {args.directory}", file=sys.stderr)
        return 1
    if args.reports:
        args.reports.mkdir(parents=True, exist_ok=True)
    out = csv.DictWriter(sys.stdout, COLUMNS)
    out.writeheader()
    for f in files:
        try:
            g, label_map = parse_instance(f)
        except MalformedInput as exc:
            print(f"skipping {f.name}: {exc}", file=sys.stderr)
            continue
        t = time.perf_counter()
        r = solve(g, SolveConfig(seed=args.seed, time_limit=args.time_limit), name=f.stem,
                  labels=labels_by_id(label_map)).report
        out.writerow({
            "instance": f.stem, "n": r.vertex_count, "m": r.edge_count, "S": r.heuristic_size,
            "L": r.L, "U": r.U, "status": r.status, "b": r.optimum,
            "cov_b_minus_1": r.constraints_at_opt_minus_1, "cov_b": r.constraints_at_opt,
            "queries": r.decision_queries, "bfs": r.bfs_count,
            "seconds": f"{time.perf_counter() - t:.2f}",
        })
        sys.stdout.flush()
        if args.reports:
            (args.reports / f"{f.stem}.json").write_text(write_report(r))
    return 0


if __name__ == "__main__":
    sys.exit(main())
