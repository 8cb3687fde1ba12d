"""Decide whether a burning sequence of a given length exists.

The decision model has one binary choice per (vertex, position) pair: every
position holds exactly one vertex, no vertex is used twice, and every vertex
``w`` must be covered, i.e. some position ``i`` holds a vertex ``u`` with
``d(u, w) <= B - i``.  Covering rows are not loaded up front.  A relaxation
holding only the rows of a few *witness* vertices is solved, the resulting
sequence is checked against the whole graph, and the row of the farthest
uncovered vertex is added.  Infeasibility of any relaxation proves
infeasibility of the full model, so the loop stops at the first exhausted
search or the first sequence that burns everything.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

import numpy as np

from .errors import InternalError
from .graph import UNREACHABLE, DistanceCache, Graph, connected_components
from .heuristics import check_sequence, compute_deficits, validate_sequence

__all__ = [
    "EMPTY", "Assignment", "BranchAndBound", "ConstraintSet", "CoveringConstraint",
    "DecisionOutcome", "FeasibilityBackend", "SearchResult", "SearchStatus", "Verdict",
    "compute_deficits", "feasibility_search", "initial_constraints", "separate",
    "solve_decision",
]

EMPTY = -1


@dataclass(frozen=True, eq=False)
class CoveringConstraint:
    """Covering row of ``witness`` at horizon ``horizon``.

    Position ``i`` (1-based) covers the witness with any vertex ``u`` such
    that ``d(u, witness) <= horizon - i``; membership is read off the
    witness's distance row.
    """

    witness: int
    horizon: int
    row: np.ndarray

    def radius(self, position: int) -> int:
        return self.horizon - position

    def covers(self, vertex: int, position: int) -> bool:
        d = int(self.row[vertex])
        return d != UNREACHABLE and d <= self.horizon - position

    def support(self, position: int) -> np.ndarray:
        r = self.horizon - position
        if r < 0:
            return np.zeros(0, dtype=np.int64)
        return np.flatnonzero(self.row <= r)

    def satisfied_by(self, seq: Sequence[int]) -> bool:
        return any(self.covers(v, i) for i, v in enumerate(seq, start=1) if v != EMPTY)


class ConstraintSet:
    """Ordered, duplicate-free witnesses whose covering rows are loaded."""

    def __init__(self, cache: DistanceCache, witnesses: Sequence[int] = ()) -> None:
        self.cache = cache
        self.witnesses: list[int] = []
        self._seen: set[int] = set()
        for w in witnesses:
            if w not in self._seen:
                self.add(w)

    def add(self, w: int) -> None:
        w = int(w)
        if w in self._seen:
            raise InternalError(f"witness {w} is already loaded")
        self.cache.get(w)
        self._seen.add(w)
        self.witnesses.append(w)

    def __contains__(self, w: int) -> bool:
        return int(w) in self._seen

    def __len__(self) -> int:
        return len(self.witnesses)

    def __iter__(self):
        return iter(self.witnesses)

    def constraints(self, B: int) -> list[CoveringConstraint]:
        return [CoveringConstraint(w, B, self.cache.get(w)) for w in self.witnesses]

    def distance_matrix(self) -> np.ndarray:
        n = self.cache.graph.vertex_count
        if not self.witnesses:
            return np.zeros((0, n), dtype=np.int32)
        return np.stack([self.cache.get(w) for w in self.witnesses])


@dataclass
class Assignment:
    """Vertex per position (``EMPTY`` when the search left the slot free)."""

    slots: list[int]

    @property
    def horizon(self) -> int:
        return len(self.slots)

    def is_complete(self) -> bool:
        return EMPTY not in self.slots

    def sequence(self) -> list[int]:
        if not self.is_complete():
            raise InternalError("assignment still has free positions")
        return list(self.slots)


class SearchStatus(enum.Enum):
    COMPLETE = "COMPLETE"
    EXHAUSTED_INFEASIBLE = "EXHAUSTED_INFEASIBLE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class SearchResult:
    status: SearchStatus
    assignment: Assignment | None
    nodes: int


Filler = Callable[[Graph, list[int]], list[int]]


def fill_smallest_unused(g: Graph, slots: list[int]) -> list[int]:
    used = {v for v in slots if v != EMPTY}
    spare = (v for v in range(g.vertex_count) if v not in used)
    return [v if v != EMPTY else next(spare) for v in slots]


class _OutOfBudget(Exception):
    pass


class _CoverSearch:
    """Depth-first search over positions 1..B for the loaded covering rows.

    Vertices are grouped by the set of witnesses they reach at each radius
    (a bitmask); one representative (smallest id) stands for each group and
    groups contained in another group are dropped.  Exchanging a dominated
    choice for a dominating one never loses coverage, and a vertex repeated
    at a later position reaches nothing new, so a node is fully described by
    its position and the mask of still-uncovered witnesses.
    """

    def __init__(self, B: int, dist: np.ndarray, witnesses: Sequence[int],
                 budget: int | None, deadline: float | None):
        self.B = B
        self.k = dist.shape[0]
        self.nbytes = (self.k + 7) // 8
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self.failed: set[tuple[int, int]] = set()
        self.groups: list[list[tuple[int, int]]] = []
        self.incidence: list[np.ndarray] = []
        for r in range(B):
            groups, incidence = self._groups(dist, r)
            self.groups.append(groups)
            self.incidence.append(incidence)
        wdist = dist[:, list(witnesses)]
        self.near = [self._near(wdist, r) for r in range(B)]

    def _groups(self, dist: np.ndarray, r: int) -> tuple[list[tuple[int, int]], np.ndarray]:
        if self.k == 0:
            return [], np.zeros((0, 0), dtype=np.float32)
        packed = np.ascontiguousarray(np.packbits(dist <= r, axis=0, bitorder="little").T)
        uniq, first = np.unique(packed, axis=0, return_index=True)
        found = []
        for row, (bits, rep) in enumerate(zip(uniq, first.tolist())):
            mask = int.from_bytes(bits.tobytes(), "little")
            if mask:
                found.append((mask, rep, row))
        found.sort(key=lambda f: (-f[0].bit_count(), f[1]))
        kept: list[tuple[int, int, int]] = []
        for f in found:
            if not any(f[0] & ~other[0] == 0 for other in kept):
                kept.append(f)
        rows = uniq[[f[2] for f in kept]]
        incidence = np.unpackbits(rows, axis=1, bitorder="little")[:, :self.k].astype(np.float32)
        return [(mask, rep) for mask, rep, _ in kept], incidence

    def _near(self, wdist: np.ndarray, r: int) -> list[int]:
        # witnesses that one ball of radius r could cover together with j
        close = wdist <= 2 * r
        return [sum(1 << i for i in np.flatnonzero(close[j]).tolist()) for j in range(self.k)]

    def _vector(self, U: int) -> np.ndarray:
        raw = np.frombuffer(U.to_bytes(self.nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:self.k].astype(np.float32)

    def _best(self, r: int, weights: np.ndarray) -> float:
        inc = self.incidence[r]
        return float((inc @ weights).max()) if inc.shape[0] else 0.0

    def _packing(self, U: int, near: list[int]) -> int:
        packed = 0
        while U:
            low = U & -U
            packed |= low
            U &= ~near[low.bit_length() - 1]
        return packed

    def _cannot_cover(self, pos: int, U: int) -> bool:
        """Weighted counting bound over the remaining positions.

        With weight 1 per uncovered witness, each position contributes at
        most the weight of its best group.  With weight 1 on a set of
        witnesses pairwise farther apart than ``2 * rho``, every position of
        radius ``<= rho`` contributes at most 1.  Either total falling short
        of the weight to cover proves the node infeasible.
        """
        radii = range(self.B - pos, -1, -1)
        u = self._vector(U)
        if sum(self._best(r, u) for r in radii) < U.bit_count():
            return True
        for rho in range(self.B - pos + 1):
            P = self._packing(U, self.near[rho])
            size = P.bit_count()
            if size <= self.B - pos + 1:
                continue
            p = self._vector(P)
            cap = 0.0
            for r in radii:
                cap += 1.0 if r <= rho else self._best(r, p)
                if cap >= size:
                    break
            else:
                return True
        return False

    def run(self) -> list[int] | None:
        return self._dfs(1, (1 << self.k) - 1, [])

    def _dfs(self, pos: int, U: int, chosen: list[int]) -> list[int] | None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _OutOfBudget
        if self.deadline is not None and self.nodes % 64 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget
        if U == 0:
            return chosen + [EMPTY] * (self.B - pos + 1)
        if pos > self.B or (pos, U) in self.failed:
            return None
        # a witness can always cover itself, so a row only dies when positions
        # run out; the counting bound catches that and much more
        if self._cannot_cover(pos, U):
            self.failed.add((pos, U))
            return None

        r = self.B - pos
        options: dict[int, int] = {}
        for mask, rep in self.groups[r]:
            c = mask & U
            if c and (c not in options or rep < options[c]):
                options[c] = rep
        tried: list[int] = []
        for c, rep in sorted(options.items(), key=lambda cr: (-cr[0].bit_count(), cr[1])):
            if any(c & ~t == 0 for t in tried):
                continue
            found = self._dfs(pos + 1, U & ~c, chosen + [rep])
            if found is not None:
                return found
            tried.append(c)
        self.failed.add((pos, U))
        return None


def feasibility_search(g: Graph, B: int, cs: ConstraintSet, budget: int | None = None,
                       deadline: float | None = None, fill: Filler | None = None) -> SearchResult:
    """Find an assignment of length ``B`` satisfying every row in ``cs``.

    Positions are decided in increasing order and, at each position,
    candidates that cover more still-uncovered witnesses are tried first
    (ties by smallest vertex id).  Free slots left once every witness is
    covered are completed by ``fill`` (smallest unused ids by default).
    """
    if not 1 <= B <= g.vertex_count:
        raise ValueError(f"horizon {B} outside 1..{g.vertex_count}")
    search = _CoverSearch(B, cs.distance_matrix(), cs.witnesses, budget, deadline)
    try:
        found = search.run()
    except _OutOfBudget:
        return SearchResult(SearchStatus.BUDGET_EXCEEDED, None, search.nodes)
    if found is None:
        return SearchResult(SearchStatus.EXHAUSTED_INFEASIBLE, None, search.nodes)
    slots = (fill or fill_smallest_unused)(g, found)
    return SearchResult(SearchStatus.COMPLETE, Assignment(slots), search.nodes)


class FeasibilityBackend(Protocol):
    """Solves the relaxation restricted to the rows in ``cs``."""

    def solve(self, g: Graph, B: int, cs: ConstraintSet, budget: int | None,
              deadline: float | None, fill: Filler | None) -> SearchResult: ...


class BranchAndBound:
    def solve(self, g, B, cs, budget=None, deadline=None, fill=None):
        return feasibility_search(g, B, cs, budget, deadline, fill)


def separate(g: Graph, seq: Sequence[int], cache: DistanceCache) -> CoveringConstraint | None:
    """Covering row of the farthest vertex ``seq`` leaves unburned, or ``None``."""
    deficits = compute_deficits(g, seq, cache)
    w = int(np.argmax(deficits))
    if deficits[w] == 0:
        return None
    return CoveringConstraint(w, len(seq), cache.get(w))


def _separate_many(g: Graph, seq: Sequence[int], cache: DistanceCache, cs: ConstraintSet,
                   count: int) -> list[int]:
    deficits = compute_deficits(g, seq, cache)
    order = np.lexsort((np.arange(deficits.size), -deficits))
    picked = []
    for w in order.tolist():
        if deficits[w] == 0 or len(picked) == count:
            break
        if w not in cs:
            picked.append(w)
    return picked


def initial_constraints(g: Graph, B: int, warm: Sequence[int], cache: DistanceCache) -> ConstraintSet:
    """Seed rows: one per vertex of the heuristic sequence ``warm``."""
    return ConstraintSet(cache, warm)


class Verdict(enum.Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"
    UNKNOWN = "UNKNOWN"


@dataclass
class DecisionOutcome:
    horizon: int
    verdict: Verdict
    sequence: list[int] | None
    initial_constraints: int = 0
    cuts_added: int = 0
    separation_calls: int = 0
    nodes: int = 0
    witnesses: list[int] = field(default_factory=list)

    @property
    def constraints_loaded(self) -> int:
        return len(self.witnesses)

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE


def farthest_fill(cache: DistanceCache, B: int) -> Filler:
    """Complete free slots in order with the vertex left farthest from burning."""

    def fill(g: Graph, slots: list[int]) -> list[int]:
        slots = list(slots)
        free = [i for i, v in enumerate(slots, start=1) if v == EMPTY]
        if not free:
            return slots
        slack = np.full(g.vertex_count, UNREACHABLE, dtype=np.int64)
        used = [v for v in slots if v != EMPTY]

        def burn(v: int, pos: int) -> None:
            row = cache.get(v)
            reach = row != UNREACHABLE
            slack[reach] = np.minimum(slack[reach], row[reach].astype(np.int64) - (B - pos))

        for pos, v in enumerate(slots, start=1):
            if v != EMPTY:
                burn(v, pos)
        for pos in free:
            score = slack.copy()
            score[used] = np.iinfo(np.int64).min
            v = int(np.argmax(score))
            slots[pos - 1] = v
            used.append(v)
            burn(v, pos)
        return slots

    return fill


def solve_decision(g: Graph, B: int, warm: Sequence[int], cache: DistanceCache, *,
                   budget: int | None = None, deadline: float | None = None,
                   cuts_per_round: int = 1, backend: FeasibilityBackend | None = None
                   ) -> DecisionOutcome:
    """Decide whether ``g`` has a burning sequence of length ``B``.

    ``budget`` caps search nodes across all rounds and ``deadline`` is a
    :func:`time.monotonic` instant; running out of either yields
    ``Verdict.UNKNOWN``, never a guess.
    """
    if not 1 <= B <= g.vertex_count:
        raise ValueError(f"horizon {B} outside 1..{g.vertex_count}")
    if cuts_per_round < 1:
        raise ValueError("cuts_per_round must be at least 1")
    backend = backend or BranchAndBound()
    # every component needs a source of its own
    if connected_components(g).count > B:
        return DecisionOutcome(B, Verdict.INFEASIBLE, None)

    cs = initial_constraints(g, B, warm, cache)
    out = DecisionOutcome(B, Verdict.UNKNOWN, None, initial_constraints=len(cs))
    fill = farthest_fill(cache, B)
    while True:
        remaining = None if budget is None else budget - out.nodes
        res = backend.solve(g, B, cs, remaining, deadline, fill)
        out.nodes += res.nodes
        if res.status is SearchStatus.BUDGET_EXCEEDED:
            break
        if res.status is SearchStatus.EXHAUSTED_INFEASIBLE:
            out.verdict = Verdict.INFEASIBLE
            break
        seq = check_sequence(g, res.assignment.sequence())
        for con in cs.constraints(B):
            if not con.satisfied_by(seq):
                raise InternalError(f"backend ignored the row of witness {con.witness}")
        out.separation_calls += 1
        if cuts_per_round == 1:
            cut = separate(g, seq, cache)
            new = [] if cut is None else [cut.witness]
            if new and new[0] in cs:
                raise InternalError(f"separation returned loaded witness {new[0]}")
        else:
            new = _separate_many(g, seq, cache, cs, cuts_per_round)
        if not new:
            if validate_sequence(g, seq, cache) is not None:
                raise InternalError("separation accepted a sequence that does not burn the graph")
            out.verdict = Verdict.FEASIBLE
            out.sequence = seq
            break
        for w in new:
            cs.add(w)
            out.cuts_added += 1
        if deadline is not None and time.monotonic() > deadline:
            break
    out.witnesses = list(cs.witnesses)
    return out
