"""Exact burning number: farthest-first bounds plus binary search on the horizon."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Sequence

from .decision import DecisionOutcome, Verdict, solve_decision
from .errors import EmptyInstance, InternalError
from .graph import DistanceCache, Graph
from .heuristics import (bff_d, bounds_from_sequence, conjectured_bound, theorem1_bound,
                         validate_sequence)
from .report import DecisionRecord, SolveReport

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveConfig:
    seed: int = 0
    node_budget: int | None = None
    time_limit: float | None = None
    emit_per_B_stats: bool = True
    cuts_per_round: int = 1

    def __post_init__(self) -> None:
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("node_budget must be non-negative")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be non-negative")


@dataclass
class SolveRun:
    """A finished :func:`prym` call: the report plus the raw decision outcomes."""

    report: SolveReport
    heuristic: list[int]
    decisions: list[DecisionOutcome]
    cache: DistanceCache


def prym(g: Graph, cfg: SolveConfig | None = None, *, name: str = "",
         labels: Sequence[int] | None = None) -> SolveReport:
    return solve(g, cfg, name=name, labels=labels).report


def solve(g: Graph, cfg: SolveConfig | None = None, *, name: str = "",
          labels: Sequence[int] | None = None, cache: DistanceCache | None = None) -> SolveRun:
    """Compute the burning number of ``g`` and an optimal sequence.

    The heuristic sequence ``S`` gives ``U = |S|`` and
    ``L = ceil((|S| + 2) / 3)``.  While ``L < U`` the midpoint horizon is
    decided; a feasible answer replaces ``S`` and becomes the new ``U``, an
    infeasible one moves ``L`` past it.  Distance rows are shared by every
    query through one cache.  ``labels`` maps dense ids back to the instance's
    original vertex labels for the report.
    """
    cfg = cfg or SolveConfig()
    if g.vertex_count == 0:
        raise EmptyInstance("cannot burn a graph with no vertices")
    cache = cache or DistanceCache(g)
    labels = list(range(g.vertex_count)) if labels is None else list(labels)
    t0 = time.perf_counter()
    deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit

    best = bff_d(g, cache, cfg.seed)
    bounds = bounds_from_sequence(best)
    heuristic = list(best)
    t_heur = time.perf_counter() - t0
    log.info("heuristic sequence of length %d, bounds [%d, %d]", len(best), bounds.L, bounds.U)

    L, U = bounds.L, bounds.U
    outcomes: list[DecisionOutcome] = []
    decision_ms: list[float] = []
    budget_left = cfg.node_budget
    status = "OPTIMAL"
    while L < U:
        B = (L + U) // 2
        t = time.perf_counter()
        out = solve_decision(g, B, heuristic, cache, budget=budget_left, deadline=deadline,
                             cuts_per_round=cfg.cuts_per_round)
        decision_ms.append((time.perf_counter() - t) * 1000)
        outcomes.append(out)
        if budget_left is not None:
            budget_left = max(0, budget_left - out.nodes)
        log.info("B=%d: %s with %d covering rows", B, out.verdict.value, out.constraints_loaded)
        if out.verdict is Verdict.FEASIBLE:
            best, U = out.sequence, B
        elif out.verdict is Verdict.INFEASIBLE:
            L = B + 1
        else:
            status = "UNSOLVED"
            break

    if validate_sequence(g, best, cache) is not None or len(best) != U:
        raise InternalError("final sequence does not burn the graph")
    total_ms = (time.perf_counter() - t0) * 1000

    by_B = {o.horizon: o for o in outcomes}
    optimum = U if status == "OPTIMAL" else None
    records = [
        DecisionRecord(B=o.horizon, outcome=o.verdict.value,
                       covering_constraints_loaded=o.constraints_loaded,
                       initial_constraints=o.initial_constraints, cuts_added=o.cuts_added,
                       separation_calls=o.separation_calls, nodes=o.nodes)
        for o in outcomes
    ] if cfg.emit_per_B_stats else []

    def loaded(B: int) -> int | None:
        o = by_B.get(B)
        return None if o is None else o.constraints_loaded

    report = SolveReport(
        instance=name,
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        L=bounds.L,
        U=bounds.U,
        status=status,
        optimum=optimum,
        lower_bound=L,
        upper_bound=U,
        sequence=[labels[v] for v in best],
        heuristic_size=len(heuristic),
        theorem1_bound=theorem1_bound(g),
        conjectured_bound=conjectured_bound(g),
        decision_queries=len(outcomes),
        constraints_at_opt_minus_1=loaded(optimum - 1) if optimum else None,
        constraints_at_opt=loaded(optimum) if optimum else None,
        bfs_count=cache.bfs_count,
        decisions=records,
        timing={"heuristic_ms": t_heur * 1000, "decision_ms": decision_ms, "total_ms": total_ms},
    )
    report.check()
    return SolveRun(report, heuristic, outcomes, cache)
