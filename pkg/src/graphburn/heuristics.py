"""Farthest-first burning heuristic, bounds, and sequence validation."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyInstance, MalformedSequence
from .graph import UNREACHABLE, DistanceCache, Graph, connected_components


@dataclass(frozen=True)
class Bounds:
    L: int
    U: int


@dataclass(frozen=True)
class Uncovered:
    """The farthest vertex left unburned by a sequence and its deficit."""

    vertex: int
    deficit: int


def check_sequence(g: Graph, seq: Sequence[int]) -> list[int]:
    seq = [int(v) for v in seq]
    if not seq:
        raise MalformedSequence("burning sequence is empty")
    for v in seq:
        if not 0 <= v < g.vertex_count:
            raise MalformedSequence(f"vertex {v} outside 0..{g.vertex_count - 1}")
    if len(set(seq)) != len(seq):
        raise MalformedSequence(f"burning sequence repeats a vertex: {seq}")
    return seq


def compute_deficits(g: Graph, seq: Sequence[int], cache: DistanceCache) -> np.ndarray:
    """Distance from each vertex to the region burned after ``len(seq)`` rounds.

    Entry ``u`` is ``max(0, min_i d(u, v_i) - (B - i))`` with positions counted
    from 1.  Sources in other components contribute nothing, and a vertex
    reached by no source gets :data:`UNREACHABLE`.  Zero means covered.
    """
    B = len(seq)
    acc = np.full(g.vertex_count, UNREACHABLE, dtype=np.int64)
    for i, v in enumerate(seq, start=1):
        row = cache.get(int(v))
        reach = row != UNREACHABLE
        term = row[reach].astype(np.int64) - (B - i)
        acc[reach] = np.minimum(acc[reach], term)
    np.maximum(acc, 0, out=acc)
    return acc


def validate_sequence(g: Graph, seq: Sequence[int], cache: DistanceCache) -> Uncovered | None:
    """Return ``None`` if ``seq`` burns ``g``, else its farthest uncovered vertex.

    Ties between equally distant vertices go to the smallest id.
    """
    seq = check_sequence(g, seq)
    deficits = compute_deficits(g, seq, cache)
    w = int(np.argmax(deficits))
    if deficits[w] == 0:
        return None
    return Uncovered(w, int(deficits[w]))


def is_burning_sequence(g: Graph, seq: Sequence[int], cache: DistanceCache) -> bool:
    return validate_sequence(g, seq, cache) is None


def first_source(g: Graph, seed: int = 0) -> int:
    """Maximum-degree vertex; ``seed`` picks among ties (0 keeps the smallest id)."""
    deg = g.degrees()
    tied = np.flatnonzero(deg == deg.max())
    if seed == 0 or tied.size == 1:
        return int(tied[0])
    return int(tied[random.Random(seed).randrange(tied.size)])


def bff_d(g: Graph, cache: DistanceCache, seed: int = 0) -> list[int]:
    """Burning farthest-first with on-demand distances.

    Each round runs one BFS (from the newest source) and appends the vertex
    farthest from all sources chosen so far, until the sequence burns the
    graph.  Unreachable vertices count as infinitely far, so the heuristic
    moves to a new component once the current one offers nothing farther.
    """
    n = g.vertex_count
    if n == 0:
        raise EmptyInstance("cannot burn a graph with no vertices")
    seq = [first_source(g, seed)]
    row = cache.get(seq[0]).astype(np.int64)
    nearest = row.copy()
    # min_i d(u, v_i) + i; the sequence burns everything iff its max is <= |S|
    arrival = row + 1
    while int(arrival.max()) > len(seq):
        v = int(np.argmax(nearest))
        seq.append(v)
        row = cache.get(v).astype(np.int64)
        np.minimum(nearest, row, out=nearest)
        np.minimum(arrival, row + len(seq), out=arrival)
    return seq


def bounds_from_sequence(seq: Sequence[int]) -> Bounds:
    """Lower and upper bounds implied by a farthest-first sequence.

    Farthest-first is a (3 - 2/b)-approximation, so ``|S| <= 3b - 2``.
    """
    k = len(seq)
    if k < 1:
        raise MalformedSequence("bounds need a nonempty sequence")
    return Bounds(L=-(-(k + 2) // 3), U=k)


def theorem1_bound(g: Graph) -> int:
    """Component-size upper bound ``p + sum ceil(sqrt(4 n_i / 3))``."""
    sizes = connected_components(g).component_sizes
    return len(sizes) + sum(_ceil_sqrt_ratio(4 * n, 3) for n in sizes)


def conjectured_bound(g: Graph) -> int:
    """``sum ceil(sqrt(n_i))``; an open conjecture, reported for information only."""
    return sum(math.isqrt(n - 1) + 1 if n else 0 for n in connected_components(g).component_sizes)


def _ceil_sqrt_ratio(num: int, den: int) -> int:
    # smallest r with r*r*den >= num, exact in integers
    r = math.isqrt(num // den)
    while r * r * den < num:
        r += 1
    return r
