"""Reading instance files (plain edge lists and MatrixMarket) into graphs.

Both formats reduce to the same rule: skip blank lines and lines starting with
``%`` or ``#``; every other line names an edge by its first two integer
tokens, and anything after them (weights, timestamps) is ignored.  Vertex
labels can be any non-negative integers and are renumbered densely in order
of first appearance.  MatrixMarket files additionally start with a size line
(``rows cols nnz``) which is consumed rather than read as an edge.

Self-loops and repeated edges are dropped, so ``edge_count`` counts distinct
undirected edges.
"""

from __future__ import annotations

import enum
import io
import os
from typing import IO, Union

from .errors import EmptyInstance, ParseError
from .graph import Graph, build_graph

Source = Union[str, os.PathLike, IO[str], IO[bytes]]


class InstanceFormat(enum.Enum):
    EDGE_LIST = "edgelist"
    MATRIX_MARKET = "mtx"
    AUTO = "auto"


def _read_text(src: Source) -> str:
    if isinstance(src, (str, os.PathLike)):
        with open(src, "rb") as f:
            data = f.read()
    else:
        data = src.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    return data


def detect_format(text: str) -> InstanceFormat:
    for line in io.StringIO(text):
        if line.strip():
            if line.lstrip().startswith("%%MatrixMarket"):
                return InstanceFormat.MATRIX_MARKET
            return InstanceFormat.EDGE_LIST
    return InstanceFormat.EDGE_LIST


def parse_instance(src: Source, fmt: InstanceFormat | str = InstanceFormat.AUTO
                   ) -> tuple[Graph, dict[int, int]]:
    """Parse ``src`` and return the graph and the original-label to dense-id map."""
    text = _read_text(src)
    fmt = InstanceFormat(fmt)
    if fmt is InstanceFormat.AUTO:
        fmt = detect_format(text)
    expect_header = fmt is InstanceFormat.MATRIX_MARKET

    label_map: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line[0] in "%#":
            continue
        tokens = line.split()
        if expect_header:
            if len(tokens) < 2:
                raise ParseError(f"malformed MatrixMarket size line {line!r}", lineno)
            expect_header = False
            continue
        if len(tokens) < 2:
            raise ParseError(f"expected two endpoints, got {line!r}", lineno)
        ends = []
        for tok in tokens[:2]:
            try:
                label = int(tok)
            except ValueError:
                raise ParseError(f"endpoint {tok!r} is not an integer", lineno) from None
            if label < 0:
                raise ParseError(f"endpoint {tok!r} is negative", lineno)
            ends.append(label_map.setdefault(label, len(label_map)))
        edges.append((ends[0], ends[1]))

    if not label_map:
        raise EmptyInstance("instance has no vertices")
    return build_graph(len(label_map), edges), label_map


def labels_by_id(label_map: dict[int, int]) -> list[int]:
    out = [0] * len(label_map)
    for label, v in label_map.items():
        out[v] = label
    return out


def write_edge_list(g: Graph, labels: list[int] | None = None) -> str:
    """Canonical edge list: one ``u v`` line per edge, endpoints as labels."""
    labels = labels or list(range(g.vertex_count))
    return "".join(f"{labels[u]} {labels[v]}\n" for u, v in g.edges())
