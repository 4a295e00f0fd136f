"""Slow, independent reference implementations used as test oracles.

Everything here works on a dense 0/1 adjacency matrix and shares no code
with the package.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np


def adjacency_matrix(n, edges):
    a = np.zeros((n, n), dtype=int)
    for u, v in edges:
        if u != v:
            a[u, v] = a[v, u] = 1
    return a


def random_edges(rng, n, p):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def brute_triangles(a, v):
    n = len(a)
    return sum(1 for x, y in itertools.combinations(range(n), 2) if a[v, x] and a[v, y] and a[x, y])


def brute_clustering(a, v):
    d = a[v].sum()
    if d < 2:
        return 0.0
    return brute_triangles(a, v) / math.comb(int(d), 2)


def brute_h_index(a, v):
    deg = a.sum(axis=1)
    nb = np.flatnonzero(a[v])
    return max([h for h in range(len(nb) + 1) if sum(deg[nb] >= h) >= h])


# ---- similarity, straight from the textbook formulas --------------------


def naive_similarity(a, u, v, measure, beta=1.76, horizon=5):
    n = len(a)
    deg = a.sum(axis=1)
    nu = {x for x in range(n) if a[u, x]}
    nv = {x for x in range(n) if a[v, x]}
    cn = nu & nv
    if measure == "cn":
        return float(len(cn))
    if measure == "jaccard":
        return len(cn) / len(nu | nv) if nu | nv else 0.0
    if measure == "cosine":
        return len(cn) / math.sqrt(deg[u] * deg[v]) if deg[u] and deg[v] else 0.0
    if measure == "hpi":
        return len(cn) / min(deg[u], deg[v]) if min(deg[u], deg[v]) else 0.0
    if measure == "aa":
        return sum(1 / math.log(deg[k]) for k in cn if deg[k] > 1)
    if measure == "ra":
        return sum(1 / deg[k] for k in cn)
    if measure == "cndp":
        cbar = sum(brute_clustering(a, x) for x in range(n)) / n
        total = 0.0
        for k in cn:
            nk = {x for x in range(n) if a[k, x]}
            total += len(nk & cn) * deg[k] ** (-beta * cbar)
        return total
    if measure in ("srw", "hin"):
        p = np.zeros((n, n))
        for x in range(n):
            if deg[x]:
                p[x] = a[x] / deg[x]
        m = a.sum() / 2
        if measure == "srw":
            cu, cv = deg[u], deg[v]
        else:
            h = [brute_h_index(a, x) for x in range(n)]

            def infl(x):
                nb = np.flatnonzero(a[x])
                if not len(nb):
                    return 0.0
                return math.sqrt(np.mean(deg[nb]) * np.mean([h[y] for y in nb]))

            cu, cv = infl(u), infl(v)
        total = 0.0
        for length in range(2, horizon + 1):
            pl = np.linalg.matrix_power(p, length)
            total += cu / (2 * m) * pl[u, v] + cv / (2 * m) * pl[v, u]
        return float(total)
    raise ValueError(measure)


# ---- spanning trees -------------------------------------------------------


def max_spanning_forest_weight(n, edges, weights):
    """Exhaustive search over edge subsets of size n - c that are acyclic."""
    # component count
    parent = list(range(n))

    def find(x, par):
        while par[x] != x:
            x = par[x]
        return x

    for u, v in edges:
        ru, rv = find(u, parent), find(v, parent)
        if ru != rv:
            parent[ru] = rv
    c = len({find(x, parent) for x in range(n)})
    best = -math.inf
    for subset in itertools.combinations(range(len(edges)), n - c):
        par = list(range(n))
        ok = True
        for i in subset:
            ru, rv = find(edges[i][0], par), find(edges[i][1], par)
            if ru == rv:
                ok = False
                break
            par[ru] = rv
        if ok:
            best = max(best, sum(weights[i] for i in subset))
    return best if best > -math.inf else 0.0


def random_tree(rng, n):
    """Random labelled tree: attach node i to a random earlier node, then shuffle labels."""
    perm = rng.permutation(n)
    edges = [(int(perm[i]), int(perm[rng.integers(i)])) for i in range(1, n)]
    order = rng.permutation(len(edges))
    return [edges[i] for i in order]


# ---- partition quality ----------------------------------------------------


def double_sum_modularity(a, labels):
    """(1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j)."""
    k = a.sum(axis=1)
    two_m = a.sum()
    q = 0.0
    n = len(a)
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                q += a[i, j] - k[i] * k[j] / two_m
    return q / two_m


def contingency_nmi(x, y):
    n = len(x)
    rows = sorted(set(x))
    cols = sorted(set(y))
    table = np.zeros((len(rows), len(cols)))
    for a_, b_ in zip(x, y):
        table[rows.index(a_), cols.index(b_)] += 1
    pa = table.sum(axis=1) / n
    pb = table.sum(axis=0) / n
    ha = -sum(p * math.log(p) for p in pa if p > 0)
    hb = -sum(p * math.log(p) for p in pb if p > 0)
    mi = 0.0
    for i in range(len(rows)):
        for j in range(len(cols)):
            pij = table[i, j] / n
            if pij > 0:
                mi += pij * math.log(pij / (pa[i] * pb[j]))
    if ha + hb == 0:
        return 1.0
    return 2 * mi / (ha + hb)


def components_without(n, tree_edges, cut):
    """Node sets of the forest after dropping edges whose index is in ``cut``."""
    adj = {v: set() for v in range(n)}
    for i, (u, v) in enumerate(tree_edges):
        if i not in cut:
            adj[u].add(v)
            adj[v].add(u)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in adj[x] - comp:
                comp.add(y)
                stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return set(comps)


def same_partition(labels_a, labels_b):
    return Counter(zip(labels_a, labels_b)).keys().__len__() == len(set(labels_a)) == len(set(labels_b))
