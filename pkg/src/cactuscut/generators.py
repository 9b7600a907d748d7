"""Deterministic graph families used for testing and benchmarking."""
from __future__ import annotations

import numpy as np

from .graph import MultiGraph


def _clique_edges(k: int, offset: int = 0) -> tuple[np.ndarray, np.ndarray]:
    a, b = np.triu_indices(k, 1)
    return a + offset, b + offset


def clique(k: int) -> MultiGraph:
    if k < 1:
        raise ValueError("clique needs k >= 1")
    a, b = _clique_edges(k)
    return MultiGraph(k, a, b)


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    a = np.arange(n)
    return MultiGraph(n, a, (a + 1) % n)


def tightness_graph(n: int, delta: int, lam: int) -> MultiGraph:
    """``r = n/(delta+1)`` cliques ``K_{delta+1}`` joined by ``lam/2`` disjoint ``r``-cycles.

    Vertex ``v_{i,j}`` (clique ``i``, position ``j``, both 0-based) is
    ``i*(delta+1) + j``; ring ``j < lam/2`` links ``v_{i,j}`` to ``v_{i+1,j}``.
    The result has minimum degree ``delta``, edge connectivity ``lam`` and
    exactly ``r(r-1)/2`` min-cuts, none of them trivial.
    """
    if delta < 2:
        raise ValueError("delta must be at least 2")
    if lam <= 0 or lam % 2:
        raise ValueError("lam must be an even positive integer")
    if 2 * lam > delta:
        raise ValueError("lam must be at most delta/2")
    if n < 3 * (delta + 1):
        raise ValueError("n must be at least 3*(delta+1)")
    if n % (delta + 1):
        raise ValueError("n must be a multiple of delta+1")
    k = delta + 1
    r = n // k
    a0, b0 = _clique_edges(k)
    base = (np.arange(r) * k)[:, None]
    us = [(a0[None, :] + base).ravel()]
    vs = [(b0[None, :] + base).ravel()]
    i = np.arange(r)
    for j in range(lam // 2):
        us.append(i * k + j)
        vs.append(((i + 1) % r) * k + j)
    return MultiGraph(n, np.concatenate(us), np.concatenate(vs))


def disjoint_cliques(n: int, delta: int) -> MultiGraph:
    """``n/(delta+1)`` disjoint copies of ``K_{delta+1}`` (disconnected on purpose)."""
    k = delta + 1
    if delta < 1 or n % k:
        raise ValueError("n must be a positive multiple of delta+1")
    a0, b0 = _clique_edges(k)
    base = (np.arange(n // k) * k)[:, None]
    return MultiGraph(n, (a0[None, :] + base).ravel(), (b0[None, :] + base).ravel())


def random_connected(n: int, p: float, seed: int) -> MultiGraph:
    """Seeded G(n, p), with components chained together if needed."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("need n >= 1 and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    a, b = np.triu_indices(n, 1)
    keep = rng.random(len(a)) < p
    return _connected(n, set(zip(a[keep].tolist(), b[keep].tolist())))


def random_clustered(n_clusters: int, size: int, p_in: float, links: int, seed: int) -> MultiGraph:
    """Dense random clusters joined in a ring by a few random links.

    Such graphs tend to have many non-trivial min-cuts and cactus cycles.
    """
    if n_clusters < 1 or size < 1:
        raise ValueError("need at least one non-empty cluster")
    rng = np.random.default_rng(seed)
    n = n_clusters * size
    edges = set()
    a, b = np.triu_indices(size, 1)
    for c in range(n_clusters):
        keep = rng.random(len(a)) < p_in
        edges.update(zip((a[keep] + c * size).tolist(), (b[keep] + c * size).tolist()))
    for c in range(n_clusters):
        d = (c + 1) % n_clusters
        for _ in range(links):
            x = int(rng.integers(size)) + c * size
            y = int(rng.integers(size)) + d * size
            if x != y:
                edges.add((min(x, y), max(x, y)))
    return _connected(n, edges)


def _connected(n: int, edges: set) -> MultiGraph:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in edges:
        parent[find(x)] = find(y)
    reps = sorted({find(x): x for x in range(n - 1, -1, -1)}.values())
    edges = set(edges)
    edges.update(zip(reps, reps[1:]))
    return MultiGraph.from_edges(n, sorted(edges))
