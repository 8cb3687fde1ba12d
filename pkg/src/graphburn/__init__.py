"""Exact solver for the graph burning problem.

Typical use::

    from graphburn import parse_instance, solve
    g, labels = parse_instance("karate.mtx")
    report = solve(g).report
"""

__version__ = "0.1.0"

from .decision import DecisionOutcome, Verdict, solve_decision
from .driver import SolveConfig, prym, solve
from .graph import UNREACHABLE, DistanceCache, Graph, bfs_distances, build_graph, connected_components
from .heuristics import bff_d, bounds_from_sequence, theorem1_bound, validate_sequence
from .ingest import InstanceFormat, parse_instance
from .oracle import brute_force_burning_number, brute_force_decision
from .report import SolveReport, read_report, write_report

__all__ = [
    "UNREACHABLE", "DecisionOutcome", "DistanceCache", "Graph", "InstanceFormat",
    "SolveConfig", "SolveReport", "Verdict", "bff_d", "bfs_distances",
    "bounds_from_sequence", "brute_force_burning_number", "brute_force_decision",
    "build_graph", "connected_components", "parse_instance", "prym", "read_report",
    "solve", "solve_decision", "theorem1_bound", "validate_sequence", "write_report",
]
