"""Maximum spanning forest of a similarity-weighted graph.

The forest edges, in the order Prim discovers them, define the gene layout of
every chromosome.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from .graph import Graph, WeightedGraph


@dataclass(frozen=True)
class SkeletonTree:
    node_count: int
    tree_edges: tuple[tuple[int, int], ...]
    edge_weights: tuple[float, ...]
    # per node: ((neighbour, gene), ...) in gene order
    tree_adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)
    component_count: int = 1

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Sequence[tuple[int, int]],
        weights: Sequence[float] | None = None,
    ) -> SkeletonTree:
        """Wrap an explicit forest; gene ``i`` is ``edges[i]``."""
        if weights is None:
            weights = [1.0] * len(edges)
        if len(weights) != len(edges):
            raise ValueError("one weight per tree edge required")
        parent = list(range(node_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        adj: list[list[tuple[int, int]]] = [[] for _ in range(node_count)]
        for gene, (u, v) in enumerate(edges):
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv
            adj[u].append((v, gene))
            adj[v].append((u, gene))
        return cls(
            node_count=node_count,
            tree_edges=tuple((int(u), int(v)) for u, v in edges),
            edge_weights=tuple(float(w) for w in weights),
            tree_adjacency=tuple(tuple(a) for a in adj),
            component_count=node_count - len(edges),
        )

    @property
    def gene_count(self) -> int:
        return len(self.tree_edges)

    @property
    def total_weight(self) -> float:
        return float(sum(self.edge_weights))

    def edge_of_gene(self, i: int) -> tuple[int, int]:
        if not 0 <= i < len(self.tree_edges):
            raise IndexError(f"gene index {i} out of range 0..{len(self.tree_edges) - 1}")
        return self.tree_edges[i]

    def gene_of_edge(self, u: int, v: int) -> int:
        lookup = self.__dict__.get("_gene_lookup")
        if lookup is None:
            lookup = {}
            for i, (a, b) in enumerate(self.tree_edges):
                lookup[(a, b)] = i
                lookup[(b, a)] = i
            object.__setattr__(self, "_gene_lookup", lookup)
        try:
            return lookup[(u, v)]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not a tree edge") from None

    def tree_components(self) -> list[int]:
        """Component id of each node in the forest (ids ordered by smallest node)."""
        comp = [-1] * self.node_count
        nxt = 0
        for s in range(self.node_count):
            if comp[s] >= 0:
                continue
            comp[s] = nxt
            stack = [s]
            while stack:
                x = stack.pop()
                for y, _ in self.tree_adjacency[x]:
                    if comp[y] < 0:
                        comp[y] = nxt
                        stack.append(y)
            nxt += 1
        return comp


def build_mst(wg: WeightedGraph) -> SkeletonTree:
    """Prim's algorithm for a maximum-weight spanning forest.

    Each component is grown from its lowest-numbered node. Among frontier
    edges of equal weight the lexicographically smaller ``(min, max)``
    endpoint pair wins, so the gene order is fully deterministic.
    """
    g: Graph = wg.base
    n = g.n
    wmap: list[dict[int, float]] = [{} for _ in range(n)]
    for (u, v), w in zip(g.edges, wg.weights):
        wmap[u][v] = w
        wmap[v][u] = w

    in_tree = [False] * n
    edges: list[tuple[int, int]] = []
    weights: list[float] = []
    for root in range(n):
        if in_tree[root]:
            continue
        in_tree[root] = True
        heap: list[tuple[float, int, int, int, int]] = []
        for y, w in wmap[root].items():
            heapq.heappush(heap, (-w, min(root, y), max(root, y), root, y))
        while heap:
            negw, _, _, x, y = heapq.heappop(heap)
            if in_tree[y]:
                continue
            in_tree[y] = True
            edges.append((x, y))
            weights.append(-negw)
            for z, w in wmap[y].items():
                if not in_tree[z]:
                    heapq.heappush(heap, (-w, min(y, z), max(y, z), y, z))
    return SkeletonTree.from_edges(n, edges, weights)


def write_tree(t: SkeletonTree, stream: TextIO, labels: Sequence | None = None) -> None:
    for i, ((u, v), w) in enumerate(zip(t.tree_edges, t.edge_weights)):
        a, b = (labels[u], labels[v]) if labels is not None else (u, v)
        stream.write(f"{i} {a} {b} {w!r}\n")
