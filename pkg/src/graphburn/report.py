"""Solve reports and their canonical JSON form.

Field order in the JSON output is fixed (see ``docs/report-schema.md``) and
wall-clock data lives only under ``"timing"`` so reports from two runs can be
compared after dropping that key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources
from typing import Any

from .errors import InternalError

SCHEMA_VERSION = 1
STATUSES = ("OPTIMAL", "UNSOLVED")
OUTCOMES = ("FEASIBLE", "INFEASIBLE", "UNKNOWN")


@dataclass
class DecisionRecord:
    B: int
    outcome: str
    covering_constraints_loaded: int
    initial_constraints: int
    cuts_added: int
    separation_calls: int
    nodes: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "B": self.B,
            "outcome": self.outcome,
            "covering_constraints_loaded": self.covering_constraints_loaded,
            "initial_constraints": self.initial_constraints,
            "cuts_added": self.cuts_added,
            "separation_calls": self.separation_calls,
            "nodes": self.nodes,
        }


@dataclass
class SolveReport:
    instance: str
    vertex_count: int
    edge_count: int
    L: int
    U: int
    status: str
    optimum: int | None
    lower_bound: int
    upper_bound: int
    sequence: list[int]
    heuristic_size: int
    theorem1_bound: int
    conjectured_bound: int
    decision_queries: int
    constraints_at_opt_minus_1: int | None
    constraints_at_opt: int | None
    bfs_count: int
    decisions: list[DecisionRecord] = field(default_factory=list)
    timing: dict[str, Any] = field(default_factory=dict)

    def check(self) -> None:
        """Raise :class:`InternalError` unless the report is self-consistent."""
        problems = []
        if self.status not in STATUSES:
            problems.append(f"unknown status {self.status!r}")
        if not 1 <= self.L <= self.U <= max(self.vertex_count, 1):
            problems.append(f"bad heuristic bounds L={self.L} U={self.U}")
        if not self.L <= self.lower_bound <= self.upper_bound <= self.U:
            problems.append(f"final bounds [{self.lower_bound}, {self.upper_bound}] escape [L, U]")
        if len(self.sequence) != self.upper_bound:
            problems.append("sequence length differs from the upper bound")
        if self.status == "OPTIMAL":
            if self.optimum is None or not self.L <= self.optimum <= self.U:
                problems.append(f"optimum {self.optimum} outside [L, U]")
            elif not self.lower_bound == self.upper_bound == self.optimum:
                problems.append("optimal report with open bounds")
        elif self.optimum is not None:
            problems.append("unsolved report carries an optimum")
        for rec in self.decisions:
            if rec.outcome not in OUTCOMES:
                problems.append(f"unknown outcome {rec.outcome!r}")
            if rec.covering_constraints_loaded > self.vertex_count:
                problems.append(f"more covering rows than vertices at B={rec.B}")
        if problems:
            raise InternalError("inconsistent solve report: " + "; ".join(problems))

    @property
    def conjecture_holds(self) -> bool | None:
        if self.optimum is None:
            return None
        return self.optimum <= self.conjectured_bound

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "instance": self.instance,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "status": self.status,
            "L": self.L,
            "U": self.U,
            "optimum": self.optimum,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "sequence": list(self.sequence),
            "heuristic_size": self.heuristic_size,
            "decision_queries": self.decision_queries,
            "cov_constraints": {
                "b_minus_1": self.constraints_at_opt_minus_1,
                "b": self.constraints_at_opt,
            },
            "theorem1_bound": self.theorem1_bound,
            "conjectured_bound": self.conjectured_bound,
            "conjecture_holds": self.conjecture_holds,
            "bfs_count": self.bfs_count,
            "decisions": [r.to_dict() for r in self.decisions],
        }
        if timing:
            out["timing"] = {
                "heuristic_ms": round_ms(self.timing.get("heuristic_ms", 0)),
                "decision_ms": [round_ms(t) for t in self.timing.get("decision_ms", [])],
                "total_ms": round_ms(self.timing.get("total_ms", 0)),
            }
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> SolveReport:
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema version {d.get('schema_version')!r}")
        cov = d["cov_constraints"]
        return cls(
            instance=d["instance"],
            vertex_count=d["vertex_count"],
            edge_count=d["edge_count"],
            L=d["L"],
            U=d["U"],
            status=d["status"],
            optimum=d["optimum"],
            lower_bound=d["lower_bound"],
            upper_bound=d["upper_bound"],
            sequence=list(d["sequence"]),
            heuristic_size=d["heuristic_size"],
            theorem1_bound=d["theorem1_bound"],
            conjectured_bound=d["conjectured_bound"],
            decision_queries=d["decision_queries"],
            constraints_at_opt_minus_1=cov["b_minus_1"],
            constraints_at_opt=cov["b"],
            bfs_count=d["bfs_count"],
            decisions=[DecisionRecord(**r) for r in d["decisions"]],
            timing=dict(d.get("timing", {})),
        )


def round_ms(ms: float) -> int:
    return int(Decimal(repr(float(ms))).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def write_report(r: SolveReport, *, timing: bool = True, indent: int | None = 2) -> str:
    """Canonical JSON text for ``r``; refuses inconsistent reports."""
    r.check()
    return json.dumps(r.to_dict(timing=timing), indent=indent, ensure_ascii=False) + "\n"


def read_report(text: str) -> SolveReport:
    return SolveReport.from_dict(json.loads(text))


def report_schema() -> dict[str, Any]:
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())
