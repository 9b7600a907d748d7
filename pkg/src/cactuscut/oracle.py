"""Ground-truth min-cut enumeration.

Two deliberately plain routes: a bitmask scan over every bipartition (small
graphs), and a max-flow route built on networkx that collects all minimum
``0``-``t`` cuts for every ``t`` (medium graphs).  Neither shares code with the
cactus pipeline.
"""
from __future__ import annotations

import networkx as nx
import numpy as np
from networkx.algorithms.flow import edmonds_karp

from .graph import Cut, MultiGraph

DEFAULT_LIMIT = 20
MAXFLOW_LIMIT = 64


class OracleLimitError(ValueError):
    """The graph is too large for the requested oracle."""


def _check(G: MultiGraph, limit: int) -> None:
    if G.n > limit:
        raise OracleLimitError(f"n={G.n} exceeds oracle limit {limit}")
    if G.n < 2:
        raise ValueError("need at least two vertices")
    G.require_connected()


_CHUNK = 1 << 18


def _cut_size_chunks(G: MultiGraph):
    """Yield ``(masks, sizes)`` over every canonical side, in increasing mask order."""
    a = G.u.astype(np.int64)
    b = G.v.astype(np.int64)
    total = 1 << (G.n - 1)
    for lo in range(1, total, _CHUNK):
        masks = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64) << 1
        sizes = np.zeros(len(masks), dtype=np.int64)
        for x, y in zip(a.tolist(), b.tolist()):
            sizes += ((masks >> x) ^ (masks >> y)) & 1
        yield masks, sizes


def enumerate_min_cuts_bruteforce(G: MultiGraph, limit: int = DEFAULT_LIMIT) -> list[Cut]:
    """Every min-cut of ``G`` once, by scanning all ``2^(n-1) - 1`` bipartitions."""
    _check(G, limit)
    lam = None
    hits: list[int] = []
    for masks, sizes in _cut_size_chunks(G):
        low = int(sizes.min())
        if lam is None or low < lam:
            lam, hits = low, []
        if low == lam:
            hits.extend(masks[sizes == lam].tolist())
    cuts = [Cut(frozenset(i for i in range(1, G.n) if mask >> i & 1), lam, G.n) for mask in hits]
    cuts.sort(key=Cut.sort_key)
    return cuts


def count_min_cuts(G: MultiGraph, limit: int = DEFAULT_LIMIT) -> tuple[int, int, int]:
    """``(total, trivial, non_trivial)`` min-cut counts."""
    cuts = enumerate_min_cuts_bruteforce(G, limit)
    trivial = sum(c.is_trivial for c in cuts)
    return len(cuts), trivial, len(cuts) - trivial


def _closed_supersets(dag: nx.DiGraph, base: set, banned: set):
    """All node sets ``X >= base`` closed under out-edges and avoiding ``banned``."""
    topo = list(nx.topological_sort(dag))
    free = [c for c in reversed(topo) if c not in base and c not in banned]
    # successors first, so a node is decided after everything it points to
    out = []

    def walk(i, chosen):
        if i == len(free):
            out.append(set(chosen))
            return
        c = free[i]
        walk(i + 1, chosen)
        if all(s in chosen for s in dag.successors(c)):
            chosen.add(c)
            walk(i + 1, chosen)
            chosen.discard(c)

    walk(0, set(base))
    return out


def enumerate_min_cuts_maxflow(G: MultiGraph, limit: int = MAXFLOW_LIMIT) -> list[Cut]:
    """Every min-cut of ``G`` via residual graphs of ``0``-``t`` maximum flows."""
    _check(G, limit)
    D = nx.DiGraph()
    D.add_nodes_from(range(G.n))
    for a, b in G.edges():
        for x, y in ((a, b), (b, a)):
            if D.has_edge(x, y):
                D[x][y]["capacity"] += 1
            else:
                D.add_edge(x, y, capacity=1)
    residuals = {}
    for t in range(1, G.n):
        residuals[t] = edmonds_karp(D, 0, t)
    lam = min(R.graph["flow_value"] for R in residuals.values())
    found = set()
    for t, R in residuals.items():
        if R.graph["flow_value"] != lam:
            continue
        live = nx.DiGraph()
        live.add_nodes_from(range(G.n))
        live.add_edges_from((x, y) for x, y, d in R.edges(data=True) if d["capacity"] - d["flow"] > 0)
        cond = nx.condensation(live)
        comp = cond.graph["mapping"]
        base = set(nx.descendants(cond, comp[0])) | {comp[0]}
        banned = set(nx.ancestors(cond, comp[t])) | {comp[t]}
        for closed in _closed_supersets(cond, base, banned):
            side = frozenset(v for v in range(G.n) if comp[v] not in closed)
            found.add(side)
    return sorted((Cut(side, lam, G.n) for side in found), key=Cut.sort_key)
