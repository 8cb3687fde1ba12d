"""Brute-force burning number for small graphs.

Enumerates burning sequences directly and takes distances from Floyd-Warshall,
sharing nothing with the BFS cache or the covering search, so agreement
between the two is real evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInstance, GuardExceeded
from .graph import Graph

DEFAULT_GUARD = 16


def floyd_warshall(g: Graph) -> np.ndarray:
    """All-pairs hop distances as floats, ``inf`` between components."""
    n = g.vertex_count
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v in g.edges():
        d[u, v] = d[v, u] = 1.0
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


@dataclass
class OracleResult:
    burning_number: int
    witness: list[int]
    nodes_explored: int


class _Enumerator:
    def __init__(self, g: Graph) -> None:
        n = g.vertex_count
        self.n = n
        self.full = (1 << n) - 1
        d = floyd_warshall(g)
        # ball[r][v]: vertices within distance r of v, as a bitmask
        self.ball = [[sum(1 << u for u in range(n) if d[v, u] <= r) for v in range(n)]
                     for r in range(n)]
        self.largest = [max(m.bit_count() for m in row) for row in self.ball]
        self.nodes = 0

    def decide(self, B: int) -> list[int] | None:
        self.B = B
        self.dead: set[tuple[int, int]] = set()
        # capacity[j]: most vertices positions j+1..B can burn between them
        self.capacity = [sum(self.largest[B - i] for i in range(j + 1, B + 1))
                         for j in range(B + 1)]
        return self._extend([], 0)

    def _extend(self, prefix: list[int], burned: int) -> list[int] | None:
        self.nodes += 1
        j = len(prefix)
        if burned == self.full:
            return prefix + [v for v in range(self.n) if v not in prefix][: self.B - j]
        if j == self.B:
            return None
        missing = self.n - burned.bit_count()
        if missing > self.capacity[j] or (j, burned) in self.dead:
            return None
        radius = self.B - (j + 1)
        for v in range(self.n):
            if v in prefix:
                continue
            found = self._extend(prefix + [v], burned | self.ball[radius][v])
            if found is not None:
                return found
        self.dead.add((j, burned))
        return None


def _guarded(g: Graph, guard: int) -> None:
    if g.vertex_count > guard:
        raise GuardExceeded(f"oracle refuses {g.vertex_count} vertices (guard {guard})")


def brute_force_decision(g: Graph, B: int, guard: int = DEFAULT_GUARD) -> list[int] | None:
    """A burning sequence of length ``B`` without repeats, or ``None`` if none exists."""
    _guarded(g, guard)
    if not 1 <= B <= g.vertex_count:
        raise ValueError(f"horizon {B} outside 1..{g.vertex_count}")
    return _Enumerator(g).decide(B)


def brute_force_burning_number(g: Graph, guard: int = DEFAULT_GUARD) -> OracleResult:
    _guarded(g, guard)
    if g.vertex_count == 0:
        raise EmptyInstance("cannot burn a graph with no vertices")
    en = _Enumerator(g)
    for B in range(1, g.vertex_count + 1):
        seq = en.decide(B)
        if seq is not None:
            return OracleResult(B, seq, en.nodes)
    raise AssertionError("a sequence through every vertex always burns the graph")
