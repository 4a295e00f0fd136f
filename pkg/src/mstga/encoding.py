"""Binary chromosomes over skeleton-tree edges.

Gene ``i`` is 1 when tree edge ``i`` is cut (a community border) and 0 when
it is kept. The communities of a chromosome are the components of the
skeleton forest after removing the cut edges, so every community is
connected by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph
from .metrics import community_q
from .skeleton import SkeletonTree


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Node-to-community assignment with per-community tallies.

    Community ids are dense and ordered by their smallest member.
    """

    assignment: np.ndarray
    sizes: tuple[int, ...]
    intra_edges: tuple[int, ...]
    degree_sums: tuple[int, ...]

    @property
    def community_count(self) -> int:
        return len(self.sizes)

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.sizes]
        for v, c in enumerate(self.assignment.tolist()):
            out[c].append(v)
        return out

    def same_as(self, other: Partition) -> bool:
        return np.array_equal(self.assignment, other.assignment)


@dataclass
class Chromosome:
    """Gene vector plus its decoded communities and modularity cache.

    ``membership``, ``intra_edges``, ``degree_sums`` and ``community_q`` are
    aligned with the canonical community ids of the decoded partition.
    """

    genes: np.ndarray
    membership: list[int] = field(repr=False)
    intra_edges: list[int] = field(repr=False)
    degree_sums: list[int] = field(repr=False)
    community_q: list[float] = field(repr=False)
    fitness: float = 0.0

    @property
    def community_count(self) -> int:
        return len(self.community_q)

    def bits(self) -> str:
        return "".join("1" if b else "0" for b in self.genes.tolist())

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.community_q]
        for v, c in enumerate(self.membership):
            out[c].append(v)
        return out

    def partition(self) -> Partition:
        sizes = [0] * len(self.community_q)
        for c in self.membership:
            sizes[c] += 1
        return Partition(
            np.asarray(self.membership, dtype=np.int64),
            tuple(sizes),
            tuple(self.intra_edges),
            tuple(self.degree_sums),
        )


def tree_labels(genes: Sequence[int], t: SkeletonTree) -> list[int]:
    """Component label of each node once cut edges are removed (canonical ids)."""
    if len(genes) != t.gene_count:
        raise EncodingError(f"chromosome has {len(genes)} genes, tree has {t.gene_count} edges")
    cut = genes.tolist() if isinstance(genes, np.ndarray) else list(genes)
    adj = t.tree_adjacency
    lab = [-1] * t.node_count
    nxt = 0
    for s in range(t.node_count):
        if lab[s] >= 0:
            continue
        lab[s] = nxt
        stack = [s]
        while stack:
            x = stack.pop()
            for y, gene in adj[x]:
                if lab[y] < 0 and not cut[gene]:
                    lab[y] = nxt
                    stack.append(y)
        nxt += 1
    return lab


def canonicalize(labels: Sequence[int]) -> list[int]:
    """Relabel so community ids follow the order of their smallest member."""
    remap: dict[int, int] = {}
    return [remap.setdefault(c, len(remap)) for c in labels]


def tallies(labels: Sequence[int], g: Graph, k: int | None = None) -> tuple[list[int], list[int]]:
    if k is None:
        k = max(labels) + 1 if len(labels) else 0
    l_c = [0] * k
    d_c = [0] * k
    for v, c in enumerate(labels):
        d_c[c] += g.degrees[v]
    for u, v in g.edges:
        if labels[u] == labels[v]:
            l_c[labels[u]] += 1
    return l_c, d_c


def decode(genes: Sequence[int] | Chromosome, t: SkeletonTree, g: Graph) -> Partition:
    if isinstance(genes, Chromosome):
        genes = genes.genes
    labels = tree_labels(genes, t)
    l_c, d_c = tallies(labels, g)
    sizes = [0] * len(l_c)
    for c in labels:
        sizes[c] += 1
    return Partition(np.asarray(labels, dtype=np.int64), tuple(sizes), tuple(l_c), tuple(d_c))


def evaluate(genes: Sequence[int], t: SkeletonTree, g: Graph) -> Chromosome:
    """Decode ``genes`` and fill the whole modularity cache from scratch."""
    genes = np.asarray(genes, dtype=np.uint8)
    labels = tree_labels(genes, t)
    l_c, d_c = tallies(labels, g)
    qs = [community_q(l, d, g.m) for l, d in zip(l_c, d_c)]
    return Chromosome(genes, labels, l_c, d_c, qs, float(sum(qs)))


def cut_genes(labels: Sequence[int], t: SkeletonTree) -> np.ndarray:
    """Gene vector whose cut edges are exactly the tree edges joining different labels."""
    return np.fromiter(
        (labels[u] != labels[v] for u, v in t.tree_edges), dtype=np.uint8, count=t.gene_count
    )


def encode(p: Partition, t: SkeletonTree) -> Chromosome:
    """Inverse of :func:`decode`; fails if a community is split in the tree.

    The modularity cache is filled from the partition's own tallies.
    """
    labels = np.asarray(p.assignment).tolist()
    if len(labels) != t.node_count:
        raise EncodingError("partition and tree cover different node counts")
    genes = cut_genes(labels, t)
    back = tree_labels(genes, t)
    if canonicalize(labels) != back:
        raise EncodingError("partition has a community that is disconnected in the skeleton tree")
    order: dict[int, int] = {}
    for c in labels:
        order.setdefault(c, len(order))
    k = len(order)
    l_c, d_c = [0] * k, [0] * k
    for old, new in order.items():
        l_c[new] = int(p.intra_edges[old])
        d_c[new] = int(p.degree_sums[old])
    m = sum(d_c) // 2
    qs = [community_q(l, d, m) for l, d in zip(l_c, d_c)] if m else [0.0] * k
    return Chromosome(genes, back, l_c, d_c, qs, float(sum(qs)))
