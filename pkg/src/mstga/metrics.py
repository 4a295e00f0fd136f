"""Partition quality (modularity) and agreement with a reference (NMI)."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence, TextIO

import numpy as np

from .graph import Graph, GraphFormatError, _label_value

if TYPE_CHECKING:
    from .encoding import Partition


def community_q(l_c: int, d_c: int, m: int) -> float:
    """Modularity contribution of one community.

    ``l_c`` intra-community edges, ``d_c`` summed degree, ``m`` edges in the graph.
    """
    if m <= 0:
        raise ValueError("modularity is undefined for a graph without edges")
    return l_c / m - (d_c / (2.0 * m)) ** 2


def community_tallies(labels: Sequence[int] | np.ndarray, g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Intra-community edge counts and degree sums, indexed by community id."""
    lab = np.asarray(labels, dtype=np.int64)
    k = int(lab.max()) + 1 if lab.size else 0
    deg = np.asarray(g.degrees, dtype=np.int64)
    d_c = np.bincount(lab, weights=deg, minlength=k).astype(np.int64)
    e = g.edge_array()
    if e.size:
        same = lab[e[:, 0]] == lab[e[:, 1]]
        l_c = np.bincount(lab[e[same, 0]], minlength=k).astype(np.int64)
    else:
        l_c = np.zeros(k, dtype=np.int64)
    return l_c, d_c


def modularity(p: Partition | Sequence[int] | np.ndarray, g: Graph) -> float:
    """Newman-Girvan modularity as a sum of per-community contributions."""
    labels = getattr(p, "assignment", p)
    l_c, d_c = community_tallies(labels, g)
    return float(sum(community_q(int(l), int(d), g.m) for l, d in zip(l_c, d_c)))


def entropy(labels: Sequence[int] | np.ndarray) -> float:
    n = len(labels)
    h = 0.0
    for c in Counter(np.asarray(labels).tolist()).values():
        p = c / n
        h -= p * math.log(p)
    return h


def joint_entropy(a: Sequence[int] | np.ndarray, b: Sequence[int] | np.ndarray) -> float:
    n = len(a)
    h = 0.0
    for c in Counter(zip(np.asarray(a).tolist(), np.asarray(b).tolist())).values():
        p = c / n
        h -= p * math.log(p)
    return h


def nmi(a, b) -> float:
    """Normalised mutual information ``2 I / (H(a) + H(b))`` (natural log).

    Accepts partitions, ground truths or plain label sequences over the same nodes.
    When both labelings are a single cluster the score is 1.
    """
    la = _as_labels(a)
    lb = _as_labels(b)
    if len(la) != len(lb):
        raise ValueError(f"label vectors cover different node sets ({len(la)} vs {len(lb)})")
    if len(la) == 0:
        raise ValueError("cannot compare empty labelings")
    ha, hb = entropy(la), entropy(lb)
    if ha + hb == 0.0:
        return 1.0
    mi = ha + hb - joint_entropy(la, lb)
    return min(1.0, max(0.0, 2.0 * mi / (ha + hb)))


def _as_labels(x) -> np.ndarray:
    if isinstance(x, GroundTruth):
        if not x.complete:
            raise ValueError(f"ground truth misses {int(np.sum(x.assignment < 0))} node(s)")
        return x.assignment
    return np.asarray(getattr(x, "assignment", x))


@dataclass(frozen=True)
class GroundTruth:
    """Reference communities; ``assignment[v] == -1`` marks an unlisted node."""

    assignment: np.ndarray
    community_labels: tuple

    @property
    def complete(self) -> bool:
        return bool(np.all(self.assignment >= 0))

    @property
    def community_count(self) -> int:
        return len(self.community_labels)


def ground_truth_from_labels(g: Graph, communities: Iterable) -> GroundTruth:
    """Ground truth from one community label per node (in node-id order)."""
    return _densify(list(communities), g.n)


def _densify(per_node: list, n: int) -> GroundTruth:
    ids: dict = {}
    out = np.full(n, -1, dtype=np.int64)
    for v, c in enumerate(per_node):
        if c is None:
            continue
        out[v] = ids.setdefault(c, len(ids))
    return GroundTruth(out, tuple(ids))


def load_ground_truth(stream: TextIO | Iterable[str], g: Graph) -> GroundTruth:
    """Read ``node_label community_id`` lines against the labels of ``g``."""
    index = {lab: i for i, lab in enumerate(g.labels)}
    per_node: list = [None] * g.n
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'node community', got {len(toks)} tokens")
        node = _label_value(toks[0])
        if node not in index:
            raise GraphFormatError(f"line {lineno}: node {toks[0]!r} is not in the graph")
        v = index[node]
        if per_node[v] is not None:
            raise GraphFormatError(f"line {lineno}: node {toks[0]!r} listed twice")
        per_node[v] = toks[1]
    return _densify(per_node, g.n)


def read_ground_truth(path, g: Graph) -> GroundTruth:
    with open(path) as fh:
        return load_ground_truth(fh, g)


def write_partition(labels: Sequence[int] | np.ndarray, g: Graph, stream: TextIO) -> None:
    for v, c in enumerate(np.asarray(labels).tolist()):
        stream.write(f"{g.labels[v]} {c}\n")


def size_histogram(labels: Sequence[int] | np.ndarray) -> dict[int, int]:
    """How many communities have each size."""
    sizes = Counter(Counter(np.asarray(labels).tolist()).values())
    return dict(sorted(sizes.items()))
