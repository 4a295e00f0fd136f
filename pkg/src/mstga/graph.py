"""Undirected simple graphs: ingestion, validation and basic node statistics."""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence, TextIO

import numpy as np

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Raised when an edge-list or ground-truth file cannot be parsed."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on dense node ids ``0..n-1``.

    Edges are stored once as ``(u, v)`` with ``u < v`` in sorted order.
    ``labels[i]`` is the token node ``i`` carried in the source file.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    degrees: tuple[int, ...] = field(repr=False)
    labels: tuple[Hashable, ...] = field(repr=False)
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[Hashable] | None = None,
    ) -> Graph:
        """Build a graph, silently normalising orientation and dropping repeats."""
        if node_count < 1:
            raise ValueError("graph needs at least one node")
        seen: set[tuple[int, int]] = set()
        loops = dups = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) references a node outside 0..{node_count - 1}")
            if u == v:
                loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in seen:
                dups += 1
                continue
            seen.add(key)
        ordered = tuple(sorted(seen))
        nbrs: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in ordered:
            nbrs[u].append(v)
            nbrs[v].append(u)
        adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        if labels is None:
            labels = range(node_count)
        elif len(labels) != node_count:
            raise ValueError("labels must have one entry per node")
        return cls(
            node_count=node_count,
            edges=ordered,
            adjacency=adjacency,
            degrees=tuple(len(a) for a in adjacency),
            labels=tuple(labels),
            dropped_self_loops=loops,
            dropped_duplicates=dups,
        )

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` integer array."""
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    def index_of(self, label: Hashable) -> int:
        return self._label_index()[label]

    def _label_index(self) -> dict[Hashable, int]:
        cached = self.__dict__.get("_label_map")
        if cached is None:
            cached = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_map", cached)
        return cached

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest member."""
        comp = [-1] * self.node_count
        out: list[list[int]] = []
        for s in range(self.node_count):
            if comp[s] >= 0:
                continue
            cid = len(out)
            comp[s] = cid
            stack, members = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if comp[y] < 0:
                        comp[y] = cid
                        stack.append(y)
                        members.append(y)
            out.append(sorted(members))
        return out


@dataclass(frozen=True)
class WeightedGraph:
    """A graph plus one non-negative finite weight per edge (edge-list order)."""

    base: Graph
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != self.base.m:
            raise ValueError(f"expected {self.base.m} weights, got {len(self.weights)}")
        w = np.asarray(self.weights, dtype=float)
        if w.size and (not np.all(np.isfinite(w)) or np.any(w < 0)):
            raise ValueError("edge weights must be finite and non-negative")

    def weighted_edges(self) -> Iterable[tuple[int, int, float]]:
        for (u, v), w in zip(self.base.edges, self.weights):
            yield u, v, w


def _order_tokens(tokens: list[str]) -> list[str]:
    # integer-looking labels keep numeric order so "0..n-1" files map onto themselves
    try:
        keys = [int(tok) for tok in tokens]
    except ValueError:
        return tokens
    if len(set(keys)) != len(keys):
        return tokens
    return [tok for _, tok in sorted(zip(keys, tokens))]


def _label_value(tok: str) -> Hashable:
    try:
        return int(tok) if str(int(tok)) == tok else tok
    except ValueError:
        return tok


def load_edge_list(stream: TextIO | Iterable[str]) -> Graph:
    """Parse a whitespace-separated edge list; ``#`` lines and blanks are skipped.

    Labels are remapped to dense ids. Self-loops and repeated edges are
    dropped and counted on the returned graph.
    """
    pairs: list[tuple[str, str]] = []
    order: dict[str, None] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(f"line {lineno}: expected two node tokens, got {len(toks)}")
        pairs.append((toks[0], toks[1]))
        order.setdefault(toks[0])
        order.setdefault(toks[1])
    if not pairs:
        raise GraphFormatError("edge list contains no edges")

    tokens = _order_tokens(list(order))
    index = {tok: i for i, tok in enumerate(tokens)}
    labels = [_label_value(tok) for tok in tokens]
    g = Graph.from_edges(len(tokens), ((index[a], index[b]) for a, b in pairs), labels)
    if g.dropped_self_loops or g.dropped_duplicates:
        logger.warning(
            "dropped %d self-loop(s) and %d duplicate edge(s)",
            g.dropped_self_loops,
            g.dropped_duplicates,
        )
    return g


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return load_edge_list(fh)


def write_edge_list(g: Graph, stream: TextIO) -> None:
    for u, v in g.edges:
        stream.write(f"{g.labels[u]} {g.labels[v]}\n")


def triangles_at(g: Graph, v: int) -> int:
    nb = g.adjacency[v]
    nbset = set(nb)
    t = 0
    for a in nb:
        for b in g.adjacency[a]:
            if b > a and b in nbset:
                t += 1
    return t


def clustering_coefficient(g: Graph, v: int) -> float:
    """Fraction of neighbour pairs of ``v`` that are themselves adjacent."""
    d = g.degrees[v]
    if d < 2:
        return 0.0
    return 2.0 * triangles_at(g, v) / (d * (d - 1))


def average_clustering(g: Graph) -> float:
    return sum(clustering_coefficient(g, v) for v in range(g.n)) / g.n


def h_index(g: Graph, v: int) -> int:
    """Largest ``h`` such that ``v`` has at least ``h`` neighbours of degree >= ``h``."""
    degs = sorted((g.degrees[u] for u in g.adjacency[v]), reverse=True)
    h = 0
    for i, d in enumerate(degs, start=1):
        if d >= i:
            h = i
        else:
            break
    return h
