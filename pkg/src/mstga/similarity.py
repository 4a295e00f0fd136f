"""Edge weighting by node-similarity indices.

Every measure is evaluated only on existing edges; neighbourhoods are open
(a node is not its own neighbour), so two adjacent nodes always appear in
each other's neighbour set but never in their own.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, WeightedGraph, average_clustering, h_index

logger = logging.getLogger(__name__)


class Measure(str, enum.Enum):
    CN = "cn"
    JACCARD = "jaccard"
    COSINE = "cosine"
    HPI = "hpi"
    AA = "aa"
    RA = "ra"
    CNDP = "cndp"
    SRW = "srw"
    HIN = "hin"


@dataclass(frozen=True)
class SimilarityKind:
    measure: Measure = Measure.JACCARD
    beta: float = 1.76
    walk_horizon: int = 5

    def __post_init__(self) -> None:
        object.__setattr__(self, "measure", Measure(self.measure))
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.walk_horizon < 2:
            raise ValueError("walk horizon must be at least 2")


class WalkMatrix:
    """Row-stochastic one-step transition matrix with cached powers.

    Rows of isolated nodes are all zero and listed in ``zero_rows``.
    """

    def __init__(self, g: Graph):
        n = g.n
        p = np.zeros((n, n))
        for u, v in g.edges:
            p[u, v] = 1.0
            p[v, u] = 1.0
        deg = np.asarray(g.degrees, dtype=float)
        self.zero_rows = np.flatnonzero(deg == 0)
        nz = deg > 0
        p[nz] /= deg[nz, None]
        self.step = p
        self._powers = {1: p}

    def power(self, length: int) -> np.ndarray:
        if length < 1:
            raise ValueError("walk length must be >= 1")
        if length not in self._powers:
            self._powers[length] = self.power(length - 1) @ self.step
        return self._powers[length]


def _common(g: Graph, u: int, v: int) -> set[int]:
    return set(g.adjacency[u]).intersection(g.adjacency[v])


def common_neighbors(g: Graph, u: int, v: int) -> float:
    return float(len(_common(g, u, v)))


def jaccard(g: Graph, u: int, v: int) -> float:
    a, b = set(g.adjacency[u]), set(g.adjacency[v])
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def cosine(g: Graph, u: int, v: int) -> float:
    du, dv = g.degrees[u], g.degrees[v]
    if du == 0 or dv == 0:
        return 0.0
    return len(_common(g, u, v)) / math.sqrt(du * dv)


def hub_promoted(g: Graph, u: int, v: int) -> float:
    low = min(g.degrees[u], g.degrees[v])
    return len(_common(g, u, v)) / low if low else 0.0


def adamic_adar(g: Graph, u: int, v: int) -> float:
    total = 0.0
    for k in _common(g, u, v):
        dk = g.degrees[k]
        if dk > 1:  # log(1) = 0 would divide by zero
            total += 1.0 / abs(math.log(dk))
    return total


def resource_allocation(g: Graph, u: int, v: int) -> float:
    return sum(1.0 / g.degrees[k] for k in _common(g, u, v))


def cndp_similarity(g: Graph, u: int, v: int, beta: float = 1.76, mean_clustering: float | None = None) -> float:
    """Common-neighbour degree penalisation.

    Each common neighbour ``k`` contributes ``|N(k) & N(u) & N(v)| * deg(k) ** (-beta * C)``
    where ``C`` is the average clustering coefficient of the whole graph.
    """
    if mean_clustering is None:
        mean_clustering = average_clustering(g)
    common = _common(g, u, v)
    exponent = -beta * mean_clustering
    total = 0.0
    for k in common:
        ck = len(common.intersection(g.adjacency[k]))
        if ck:
            total += ck * g.degrees[k] ** exponent
    return total


def _walk_sum(g: Graph, u: int, v: int, horizon: int, walks: WalkMatrix, coef_u: float, coef_v: float) -> float:
    two_m = 2.0 * g.m
    total = 0.0
    for length in range(2, horizon + 1):
        p = walks.power(length)
        total += coef_u / two_m * p[u, v] + coef_v / two_m * p[v, u]
    return float(total)


def srw_similarity(g: Graph, u: int, v: int, horizon: int = 5, walks: WalkMatrix | None = None) -> float:
    """Superposed random-walk index summed over walk lengths ``2..horizon``."""
    if walks is None:
        walks = WalkMatrix(g)
    return _walk_sum(g, u, v, horizon, walks, g.degrees[u], g.degrees[v])


def neighbor_influence(g: Graph, hidx: list[int] | None = None) -> np.ndarray:
    """``sqrt(mean neighbour degree * mean neighbour h-index)`` per node (0 for isolates)."""
    if hidx is None:
        hidx = [h_index(g, x) for x in range(g.n)]
    out = np.zeros(g.n)
    for x in range(g.n):
        nb = g.adjacency[x]
        if not nb:
            continue
        mean_deg = sum(g.degrees[y] for y in nb) / len(nb)
        mean_h = sum(hidx[y] for y in nb) / len(nb)
        out[x] = math.sqrt(mean_deg * mean_h)
    return out


def hin_similarity(
    g: Graph,
    u: int,
    v: int,
    horizon: int = 5,
    walks: WalkMatrix | None = None,
    influence: np.ndarray | None = None,
) -> float:
    """Random-walk index with degrees replaced by the neighbour-influence multiplier."""
    if walks is None:
        walks = WalkMatrix(g)
    if influence is None:
        influence = neighbor_influence(g)
    return _walk_sum(g, u, v, horizon, walks, float(influence[u]), float(influence[v]))


_LOCAL = {
    Measure.CN: common_neighbors,
    Measure.JACCARD: jaccard,
    Measure.COSINE: cosine,
    Measure.HPI: hub_promoted,
    Measure.AA: adamic_adar,
    Measure.RA: resource_allocation,
}


def weigh_edges(g: Graph, kind: SimilarityKind | Measure | str = Measure.JACCARD) -> WeightedGraph:
    """Weight every edge of ``g`` by the similarity of its end nodes."""
    if not isinstance(kind, SimilarityKind):
        kind = SimilarityKind(Measure(kind))
    measure = kind.measure
    if measure in _LOCAL:
        fn = _LOCAL[measure]
        weights = [fn(g, u, v) for u, v in g.edges]
    elif measure is Measure.CNDP:
        cbar = average_clustering(g)
        weights = [cndp_similarity(g, u, v, kind.beta, cbar) for u, v in g.edges]
        if g.m and not any(weights):
            logger.warning("CNDP weighting is degenerate: every edge weight is zero")
    else:
        walks = WalkMatrix(g)
        if measure is Measure.SRW:
            weights = [srw_similarity(g, u, v, kind.walk_horizon, walks) for u, v in g.edges]
        else:
            infl = neighbor_influence(g)
            weights = [hin_similarity(g, u, v, kind.walk_horizon, walks, infl) for u, v in g.edges]
    return WeightedGraph(g, tuple(float(w) for w in weights))


def write_weighted(wg: WeightedGraph, stream) -> None:
    labels = wg.base.labels
    for u, v, w in wg.weighted_edges():
        stream.write(f"{labels[u]} {labels[v]} {w!r}\n")
