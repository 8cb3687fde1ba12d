"""Immutable undirected graphs, breadth-first search and the distance cache.

Graphs are stored in compressed sparse row form with dense vertex ids
``0..n-1``.  Hop distances are ``int32`` arrays where vertices in another
connected component hold the :data:`UNREACHABLE` sentinel.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import MalformedInput

UNREACHABLE = int(np.iinfo(np.int32).max)
"""Distance marker for vertices outside the source's component."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph in CSR form.

    ``indices[indptr[v]:indptr[v + 1]]`` is the sorted neighbor list of ``v``.
    Use :func:`build_graph` rather than constructing this directly.
    """

    vertex_count: int
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def edge_count(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.vertex_count), self.degrees())
        keep = src < self.indices
        return list(zip(src[keep].tolist(), self.indices[keep].tolist()))

    def __len__(self) -> int:
        return self.vertex_count

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"


def build_graph(vertex_count: int, edge_list: Iterable[Sequence[int]] | np.ndarray) -> Graph:
    """Build a :class:`Graph`, dropping self-loops and duplicate edges.

    Raises :class:`MalformedInput` if an endpoint lies outside ``0..vertex_count-1``.
    """
    if vertex_count < 0:
        raise MalformedInput(f"negative vertex count {vertex_count}")
    pairs = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list,
                       dtype=np.int64)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise MalformedInput("edge list must contain vertex pairs")
    if pairs.size and (pairs.min() < 0 or pairs.max() >= vertex_count):
        bad = pairs[(pairs < 0).any(axis=1) | (pairs >= vertex_count).any(axis=1)][0]
        raise MalformedInput(
            f"edge {tuple(bad.tolist())} has an endpoint outside 0..{vertex_count - 1}")

    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    und = np.unique(np.stack([lo, hi], axis=1), axis=0) if lo.size else np.empty((0, 2), np.int64)

    src = np.concatenate([und[:, 0], und[:, 1]])
    dst = np.concatenate([und[:, 1], und[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(vertex_count + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=vertex_count), out=indptr[1:])
    indices = dst.astype(np.int32)
    indptr.flags.writeable = False
    indices.flags.writeable = False
    return Graph(vertex_count, indptr, indices)


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source`` to every vertex.

    Level-synchronous BFS: every level gathers the neighbor lists of the whole
    frontier at once, so the cost stays O(|V| + |E|).
    """
    if not 0 <= source < g.vertex_count:
        raise MalformedInput(f"source {source} outside 0..{g.vertex_count - 1}")
    dist = np.full(g.vertex_count, UNREACHABLE, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    indptr, indices = g.indptr, g.indices
    level = 0
    while frontier.size:
        level += 1
        starts = indptr[frontier]
        lengths = indptr[frontier + 1] - starts
        total = int(lengths.sum())
        if total == 0:
            break
        offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
        nbrs = indices[offsets + np.arange(total)]
        nbrs = nbrs[dist[nbrs] == UNREACHABLE]
        if not nbrs.size:
            break
        frontier = np.unique(nbrs).astype(np.int64)
        dist[frontier] = level
    return dist


class DistanceCache:
    """Append-only store of BFS rows for one graph.

    Rows are computed the first time a source is requested and returned
    read-only afterwards.  ``bfs_count`` counts the searches actually run.
    Reads of stored rows need no locking; inserts are serialized.
    """

    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self._rows: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        self.bfs_count = 0

    def get(self, source: int) -> np.ndarray:
        row = self._rows.get(source)
        if row is not None:
            return row
        with self._lock:
            row = self._rows.get(source)
            if row is None:
                row = bfs_distances(self.graph, source)
                row.flags.writeable = False
                self._rows[source] = row
                self.bfs_count += 1
        return row

    def __contains__(self, source: int) -> bool:
        return source in self._rows

    def __len__(self) -> int:
        return len(self._rows)

    def sources(self) -> list[int]:
        return list(self._rows)


def cached_distances(cache: DistanceCache, g: Graph, source: int) -> np.ndarray:
    if cache.graph is not g:
        raise ValueError("distance cache belongs to a different graph")
    return cache.get(source)


@dataclass(frozen=True)
class ComponentLabeling:
    label: np.ndarray
    component_sizes: list[int]

    @property
    def count(self) -> int:
        return len(self.component_sizes)


def connected_components(g: Graph) -> ComponentLabeling:
    """Label components ``0..p-1`` in order of their smallest vertex id."""
    n = g.vertex_count
    if n == 0:
        return ComponentLabeling(np.zeros(0, dtype=np.int64), [])
    adj = csr_matrix((np.ones(g.indices.size, dtype=np.int8), g.indices, g.indptr), shape=(n, n))
    p, raw = _cc(adj, directed=False)
    # relabel by first occurrence so ids follow the smallest contained vertex
    _, first = np.unique(raw, return_index=True)
    remap = np.empty(p, dtype=np.int64)
    remap[raw[np.sort(first)]] = np.arange(p)
    label = remap[raw]
    sizes = np.bincount(label, minlength=p)
    return ComponentLabeling(label, sizes.tolist())
