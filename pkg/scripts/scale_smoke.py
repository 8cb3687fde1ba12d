"""Solve one large random connected graph and report time and peak memory.

    python scripts/scale_smoke.py --vertices 50000 --edges 150000 --seed 0

The graph is a random recursive tree (every vertex attaches to a uniformly
chosen earlier vertex) plus uniformly random extra edges, so it is connected
by construction.  Prints one JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import resource
import sys
import time

import numpy as np

from graphburn import SolveConfig, build_graph, solve


def random_connected(n: int, m: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    child = np.arange(1, n)
    tree = np.stack([child, rng.integers(0, child)], axis=1)
    extra = rng.integers(0, n, size=(max(0, m - (n - 1)), 2))
    return np.concatenate([tree, extra])


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--vertices", type=int, default=50_000)
    p.add_argument("--edges", type=int, default=150_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=None)
    args = p.parse_args(argv)

    t0 = time.perf_counter()
    g = build_graph(args.vertices, random_connected(args.vertices, args.edges, args.seed))
    run = solve(g, SolveConfig(time_limit=args.time_limit), name=f"random-{args.vertices}-{args.seed}")
    elapsed = time.perf_counter() - t0
    r = run.report
    out = {
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
        "status": r.status,
        "optimum": r.optimum,
        "L": r.L,
        "U": r.U,
        "bfs_count": r.bfs_count,
        "decisions": [[d.B, d.outcome, d.covering_constraints_loaded] for d in r.decisions],
        "seconds": round(elapsed, 2),
        # ru_maxrss is KiB on Linux
        "max_rss_mb": round(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024, 1),
    }
    print(json.dumps(out))
    return 0 if r.status == "OPTIMAL" else 2


if __name__ == "__main__":
    sys.exit(main())
