"""Adaptive genetic algorithm over skeleton-tree chromosomes."""

from __future__ import annotations

import enum
import logging
import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .encoding import Chromosome, cut_genes, evaluate, tree_labels
from .graph import Graph
from .metrics import community_q, modularity
from .skeleton import SkeletonTree

logger = logging.getLogger(__name__)

SELECTION_EPS = 1e-6


class MutationKind(str, enum.Enum):
    UNIFORM = "uniform"
    WEIGHT = "weight"
    SINE = "sine"

    @classmethod
    def parse(cls, value: str | MutationKind) -> MutationKind:
        aliases = {"weight_based": "weight", "sine_based": "sine"}
        return cls(aliases.get(str(value), value) if not isinstance(value, cls) else value)


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    max_generations: int = 300
    stall_generations: int = 50
    delta: float = 0.1
    mutation_kind: MutationKind = MutationKind.SINE
    mutation_rate: float = 0.2
    flips_per_mutation: int = 1
    rng_seed: int = 0
    target_q: float | None = None
    debug: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "mutation_kind", MutationKind.parse(self.mutation_kind))
        if self.population_size < 4 or self.population_size % 2:
            raise ValueError("population size must be even and at least 4")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation rate must lie in [0, 1]")
        if self.flips_per_mutation < 1:
            raise ValueError("at least one flip per mutation")
        if self.max_generations < 0 or self.stall_generations < 1:
            raise ValueError("invalid stopping rule")


@dataclass(frozen=True)
class AdaptiveState:
    alpha: float = 0.5
    generation: int = 0
    best_history: tuple[float, ...] = ()


def sine_alpha(generation: int, delta: float) -> float:
    return abs(math.sin(math.pi / 6 + generation * delta * math.pi))


def update_alpha(state: AdaptiveState, improved: bool, delta: float) -> AdaptiveState:
    """Keep alpha after an improving generation, otherwise move it along the sine schedule."""
    if improved:
        return state
    return replace(state, alpha=sine_alpha(state.generation, delta))


# --------------------------------------------------------------------------
# initial population


def initial_genes(t: SkeletonTree, rng: np.random.Generator | None = None, order: Sequence[int] | None = None) -> np.ndarray:
    """Grow communities of about ``ceil(sqrt(n))`` nodes over the tree.

    Seed edges are taken in ``order`` (a random permutation of the genes by
    default). A community grows breadth-first from its seed, the smaller end
    node first, and neighbours are visited in gene order; broken edges are
    never crossed. Once it holds the threshold number of nodes every tree edge
    leaving it is broken. If the frontier runs dry first, one random broken
    edge on its border is reconnected.
    """
    n = t.node_count
    limit = math.ceil(math.sqrt(n))
    adj = t.tree_adjacency
    genes = [0] * t.gene_count
    owner = [-1] * n
    if order is None:
        order = rng.permutation(t.gene_count).tolist()
    next_id = 0
    for gene in order:
        a, b = t.tree_edges[gene]
        if owner[a] >= 0 and owner[b] >= 0:
            continue
        if owner[a] < 0 and owner[b] < 0:
            seeds = [min(a, b), max(a, b)]
            genes[gene] = 0
        else:
            seeds = [a if owner[a] < 0 else b]
        cid = next_id
        next_id += 1
        members = list(seeds)
        for s in seeds:
            owner[s] = cid
        queue = deque(seeds)
        full = len(members) >= limit
        while queue and not full:
            x = queue.popleft()
            for y, gi in adj[x]:
                if genes[gi]:
                    continue
                if owner[y] >= 0:
                    if owner[y] != cid:
                        genes[gi] = 1
                    continue
                owner[y] = cid
                members.append(y)
                queue.append(y)
                if len(members) >= limit:
                    full = True
                    break
        border = [(gi, y) for x in members for y, gi in adj[x] if owner[y] != cid]
        if full:
            for gi, _ in border:
                genes[gi] = 1
            continue
        if not border:
            continue
        for gi, _ in border:
            genes[gi] = 1
        gi, y = border[int(rng.integers(len(border)))] if rng is not None else border[0]
        genes[gi] = 0
        target = owner[y]
        for x in members:
            owner[x] = target
    return np.asarray(genes, dtype=np.uint8)


def generate_initial_individual(t: SkeletonTree, g: Graph, rng: np.random.Generator) -> Chromosome:
    return evaluate(initial_genes(t, rng), t, g)


def random_individual(t: SkeletonTree, g: Graph, rng: np.random.Generator) -> Chromosome:
    """Each gene independently cut with probability 1/2 (baseline initialiser)."""
    return evaluate(rng.integers(0, 2, size=t.gene_count, dtype=np.uint8), t, g)


def generate_initial_population(
    t: SkeletonTree,
    g: Graph,
    config: GaConfig,
    rng: np.random.Generator,
    method: str = "proposed",
) -> list[Chromosome]:
    make = {"proposed": generate_initial_individual, "random": random_individual}[method]
    return [make(t, g, rng) for _ in range(config.population_size)]


# --------------------------------------------------------------------------
# selection


def selection_probabilities(fitnesses: Sequence[float], eps: float = SELECTION_EPS) -> np.ndarray:
    """Fitness-proportional probabilities after shifting the minimum to ``eps``."""
    f = np.asarray(fitnesses, dtype=float)
    shifted = f - f.min() + eps
    return shifted / shifted.sum()


def roulette_pick(probabilities: Sequence[float], r: float) -> int:
    """Index ``k`` whose cumulative interval ``[p_(k-1), p_k)`` holds ``r``."""
    cum = np.cumsum(probabilities)
    k = int(np.searchsorted(cum, r, side="right"))
    return min(k, len(cum) - 1)


def roulette_select(fitnesses: Sequence[float], rng: np.random.Generator) -> int:
    if len(fitnesses) == 0:
        raise ValueError("cannot select from an empty population")
    return roulette_pick(selection_probabilities(fitnesses), rng.random())


# --------------------------------------------------------------------------
# crossover


def crossover(a: Chromosome, b: Chromosome, t: SkeletonTree, g: Graph) -> Chromosome:
    """Community-transfer crossover.

    Communities of both parents are taken in order of decreasing ``q``; each
    hands its still-unassigned nodes to the child. A community transferred
    whole keeps its cached tallies, fragments are re-tallied.
    """
    n = t.node_count
    pool = [(-q, cid, 0) for cid, q in enumerate(a.community_q)]
    pool += [(-q, cid, 1) for cid, q in enumerate(b.community_q)]
    pool.sort()
    parents = (a, b)
    members = (a.members(), b.members())
    group = [-1] * n
    intact: dict[int, tuple[int, int, float]] = {}
    assigned = 0
    ng = 0
    for _, cid, pid in pool:
        mem = members[pid][cid]
        fresh = [v for v in mem if group[v] < 0]
        if not fresh:
            continue
        for v in fresh:
            group[v] = ng
        if len(fresh) == len(mem):
            par = parents[pid]
            intact[ng] = (par.intra_edges[cid], par.degree_sums[cid], par.community_q[cid])
        ng += 1
        assigned += len(fresh)
        if assigned == n:
            break

    genes = cut_genes(group, t)
    labels = tree_labels(genes, t)
    k = max(labels) + 1
    l_c = [0] * k
    d_c = [0] * k
    q_c: list[float | None] = [None] * k
    seen = [False] * k
    for v, c in enumerate(labels):
        if not seen[c]:
            seen[c] = True
            hit = intact.get(group[v])
            if hit is not None:
                l_c[c], d_c[c], q_c[c] = hit
    adj, deg = g.adjacency, g.degrees
    for v, c in enumerate(labels):
        if q_c[c] is not None:
            continue
        d_c[c] += deg[v]
        for y in adj[v]:
            if labels[y] == c:
                l_c[c] += 1
    m = g.m
    for c in range(k):
        if q_c[c] is None:
            l_c[c] //= 2
            q_c[c] = community_q(l_c[c], d_c[c], m)
    return Chromosome(genes, labels, l_c, d_c, q_c, float(sum(q_c)))


# --------------------------------------------------------------------------
# mutation


@dataclass(frozen=True)
class MutationDistribution:
    weights: np.ndarray
    probabilities: np.ndarray = field(repr=False)

    @classmethod
    def from_weights(cls, weights: np.ndarray) -> MutationDistribution:
        w = np.asarray(weights, dtype=float)
        total = w.sum()
        p = w / total if total > 0 else np.full(w.size, 1.0 / w.size)
        return cls(w, p)


def depth_increment(depth: int, alpha: float) -> float:
    x = 2.0 ** (-1.0 / depth)
    return alpha * x + (1.0 - alpha) * (1.0 - x)


def sine_weights(genes: np.ndarray, t: SkeletonTree, alpha: float) -> np.ndarray:
    """Border edges start at 1; every edge reached breadth-first from a border
    edge (without crossing another one) gains ``depth_increment(d, alpha)``."""
    cut = genes.tolist()
    w = np.asarray(genes, dtype=float)
    adj = t.tree_adjacency
    inc_cache: dict[int, float] = {}
    for e in np.flatnonzero(genes).tolist():
        u, v = t.tree_edges[e]
        queue = deque(((u, 0), (v, 0)))
        done = {e}
        while queue:
            x, dx = queue.popleft()
            for y, gi in adj[x]:
                if gi in done or cut[gi]:
                    continue
                done.add(gi)
                d = dx + 1
                inc = inc_cache.get(d)
                if inc is None:
                    inc = inc_cache[d] = depth_increment(d, alpha)
                w[gi] += inc
                queue.append((y, d))
    return w


def build_mutation_distribution(
    c: Chromosome | np.ndarray,
    t: SkeletonTree,
    kind: MutationKind | str,
    alpha: float = 0.5,
) -> MutationDistribution:
    genes = c.genes if isinstance(c, Chromosome) else np.asarray(c, dtype=np.uint8)
    if genes.size == 0:
        raise ValueError("chromosome has no genes to mutate")
    kind = MutationKind.parse(kind)
    if kind is MutationKind.UNIFORM:
        return MutationDistribution.from_weights(np.ones(genes.size))
    if kind is MutationKind.WEIGHT:
        return MutationDistribution.from_weights(np.asarray(t.edge_weights, dtype=float))
    if not genes.any():
        return MutationDistribution.from_weights(np.ones(genes.size))
    return MutationDistribution.from_weights(sine_weights(genes, t, alpha))


def flip_gene(c: Chromosome, gene: int, t: SkeletonTree, g: Graph) -> Chromosome:
    """Negate one gene, updating only the one or two communities it touches."""
    genes = c.genes.copy()
    mem = list(c.membership)
    l_c, d_c, q_c = list(c.intra_edges), list(c.degree_sums), list(c.community_q)
    u, v = t.tree_edges[gene]
    adj, deg, m = g.adjacency, g.degrees, g.m
    if genes[gene] == 0:
        genes[gene] = 1
        cut = genes.tolist()
        old = mem[u]
        new = len(q_c)
        mem[u] = new
        side = [u]
        stack = [u]
        while stack:
            x = stack.pop()
            for y, gi in t.tree_adjacency[x]:
                if not cut[gi] and mem[y] == old:
                    mem[y] = new
                    side.append(y)
                    stack.append(y)
        intra = between = d_new = 0
        for x in side:
            d_new += deg[x]
            for y in adj[x]:
                if mem[y] == new:
                    intra += 1
                elif mem[y] == old:
                    between += 1
        l_new = intra // 2
        l_c[old] -= l_new + between
        d_c[old] -= d_new
        q_c[old] = community_q(l_c[old], d_c[old], m)
        l_c.append(l_new)
        d_c.append(d_new)
        q_c.append(community_q(l_new, d_new, m))
    else:
        genes[gene] = 0
        keep, gone = mem[u], mem[v]
        moved = [x for x, c_x in enumerate(mem) if c_x == gone]
        between = sum(1 for x in moved for y in adj[x] if mem[y] == keep)
        for x in moved:
            mem[x] = keep
        l_c[keep] += l_c[gone] + between
        d_c[keep] += d_c[gone]
        q_c[keep] = community_q(l_c[keep], d_c[keep], m)
        q_c[gone] = None
    # restore canonical ids (ordered by smallest member)
    remap: dict[int, int] = {}
    labels = [remap.setdefault(x, len(remap)) for x in mem]
    k = len(remap)
    nl, nd, nq = [0] * k, [0] * k, [0.0] * k
    for old_id, new_id in remap.items():
        nl[new_id], nd[new_id], nq[new_id] = l_c[old_id], d_c[old_id], q_c[old_id]
    return Chromosome(genes, labels, nl, nd, nq, float(sum(nq)))


def mutate(
    c: Chromosome,
    dist: MutationDistribution,
    flips: int,
    rng: np.random.Generator,
    t: SkeletonTree,
    g: Graph,
) -> Chromosome:
    """Flip ``flips`` distinct genes drawn from ``dist``."""
    size = c.genes.size
    if flips > size:
        raise ValueError(f"cannot flip {flips} of {size} genes")
    if dist.probabilities.size != size:
        raise ValueError("distribution is not aligned with the chromosome")
    p = dist.probabilities
    support = int(np.count_nonzero(p))
    if flips <= support:
        picked = rng.choice(size, size=flips, replace=False, p=p).tolist()
    else:
        picked = np.flatnonzero(p).tolist()
        rest = np.flatnonzero(p == 0)
        picked += rng.choice(rest, size=flips - support, replace=False).tolist()
    for gene in picked:
        c = flip_gene(c, int(gene), t, g)
    return c


# --------------------------------------------------------------------------
# main loop


@dataclass
class GenerationRecord:
    generation: int
    best_q: float
    mean_q: float
    alpha: float
    communities: int


@dataclass
class EvolutionResult:
    best: Chromosome
    log: list[GenerationRecord]
    stop_reason: str

    @property
    def generations(self) -> int:
        return self.log[-1].generation if self.log else 0

    @property
    def best_q(self) -> float:
        return self.best.fitness


def _check_cache(pop: list[Chromosome], t: SkeletonTree, g: Graph, rng: np.random.Generator) -> None:
    for c in rng.choice(len(pop), size=min(5, len(pop)), replace=False).tolist():
        ind = pop[c]
        q = modularity(tree_labels(ind.genes, t), g)
        if abs(q - ind.fitness) > 1e-9:
            raise AssertionError(f"cached fitness {ind.fitness} drifted from {q}")


def evolve(
    g: Graph,
    t: SkeletonTree,
    config: GaConfig = GaConfig(),
    init: str = "proposed",
    rng: np.random.Generator | None = None,
) -> EvolutionResult:
    """Run the GA until the generation cap, a stall, or the target modularity."""
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    size = config.population_size
    pop = generate_initial_population(t, g, config, rng, method=init)
    pop.sort(key=lambda c: -c.fitness)
    state = AdaptiveState()
    best = pop[0]
    log = [GenerationRecord(0, best.fitness, float(np.mean([c.fitness for c in pop])), state.alpha, best.community_count)]
    stall = 0
    reason = "max_generations"
    if config.target_q is not None and best.fitness > config.target_q:
        return EvolutionResult(best, log, "target_q")
    n_mut = int(round(config.mutation_rate * (size // 2)))
    for q in range(1, config.max_generations + 1):
        probs = selection_probabilities([c.fitness for c in pop])
        cum = np.cumsum(probs)
        picks = np.minimum(np.searchsorted(cum, rng.random(size), side="right"), size - 1).tolist()
        children = [crossover(pop[picks[2 * i]], pop[picks[2 * i + 1]], t, g) for i in range(size // 2)]
        if n_mut and t.gene_count:
            for j in rng.choice(len(children), size=n_mut, replace=False).tolist():
                dist = build_mutation_distribution(children[j], t, config.mutation_kind, state.alpha)
                children[j] = mutate(children[j], dist, config.flips_per_mutation, rng, t, g)
        merged = pop + children
        merged.sort(key=lambda c: -c.fitness)
        pop = merged[:size]
        if config.debug:
            _check_cache(pop, t, g, rng)

        improved = pop[0].fitness > best.fitness + 1e-12
        if improved:
            best = pop[0]
            stall = 0
        else:
            stall += 1
        state = update_alpha(replace(state, generation=q), improved, config.delta)
        state = replace(state, best_history=state.best_history + (best.fitness,))
        log.append(
            GenerationRecord(q, best.fitness, float(np.mean([c.fitness for c in pop])), state.alpha, best.community_count)
        )
        if config.target_q is not None and best.fitness > config.target_q:
            reason = "target_q"
            break
        if stall >= config.stall_generations:
            reason = "stall"
            break
    return EvolutionResult(best, log, reason)
