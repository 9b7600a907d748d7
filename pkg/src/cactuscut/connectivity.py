"""Maximum-adjacency orderings, edge connectivity and sparse certificates.

Everything here rests on one scan: visit vertices in maximum-adjacency (MA)
order and record, for each edge, the attachment value ``q(e)`` its later
endpoint had right after the edge was counted.  Two facts about that scan are
used throughout:

* the endpoints of an edge with ``q(e) >= k`` are ``k``-edge-connected, and
* the edges with ``q(e) <= k`` form a subgraph that keeps every cut of size
  at most ``k`` intact.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graph import DisconnectedGraphError, MultiGraph

WeightedAdjacency = list  # list[dict[int, int]]: neighbor -> edge multiplicity


@dataclass
class _Scan:
    order: list
    attach: list
    prefix_cut: int  # smallest cut among proper prefixes of the order
    q: object  # per-edge attachment values (list or dict)


def _scan_multigraph(G: MultiGraph, start: int, restart: bool = False) -> _Scan:
    indptr, nbr, eidx = G.csr()
    indptr = indptr.tolist()
    nbr = nbr.tolist()
    eidx = eidx.tolist()
    deg = G.degrees().tolist()
    n = G.n
    r = [0] * n
    seen = [False] * n
    q = [0] * G.m
    order: list[int] = []
    attach: list[int] = []
    heap = [(0, start)]
    cut = 0
    best = None
    pending = 0
    while True:
        while heap:
            negr, x = heapq.heappop(heap)
            if seen[x] or -negr != r[x]:
                continue
            seen[x] = True
            order.append(x)
            attach.append(r[x])
            cut += deg[x] - 2 * r[x]
            if len(order) < n and (best is None or cut < best):
                best = cut
            for k in range(indptr[x], indptr[x + 1]):
                w = nbr[k]
                if not seen[w]:
                    rw = r[w] + 1
                    r[w] = rw
                    q[eidx[k]] = rw
                    heapq.heappush(heap, (-rw, w))
        if len(order) == n:
            break
        if not restart:
            raise DisconnectedGraphError("graph is disconnected")
        while seen[pending]:
            pending += 1
        heap.append((0, pending))
    return _Scan(order, attach, best if best is not None else 0, q)


def _scan_weighted(adj: WeightedAdjacency, start: int, threshold: int | None) -> _Scan:
    """MA scan of a weighted graph; ``q`` lists vertex pairs with ``q >= threshold``."""
    n = len(adj)
    r = [0] * n
    seen = [False] * n
    deg = [sum(a.values()) for a in adj]
    order: list[int] = []
    attach: list[int] = []
    heavy: list[tuple[int, int]] = []
    heap = [(0, start)]
    cut = 0
    best = None
    while heap:
        negr, x = heapq.heappop(heap)
        if seen[x] or -negr != r[x]:
            continue
        seen[x] = True
        order.append(x)
        attach.append(r[x])
        cut += deg[x] - 2 * r[x]
        if len(order) < n and (best is None or cut < best):
            best = cut
        for w, c in adj[x].items():
            if not seen[w]:
                rw = r[w] + c
                r[w] = rw
                if threshold is not None and rw >= threshold:
                    heavy.append((x, w))
                heapq.heappush(heap, (-rw, w))
    if len(order) < n:
        raise DisconnectedGraphError("graph is disconnected")
    return _Scan(order, attach, best if best is not None else 0, heavy)


def ma_ordering(G: MultiGraph, start: int = 0) -> tuple[list[int], list[int]]:
    """Maximum-adjacency ordering of a connected multigraph.

    Returns the ordering (beginning at ``start``) and the attachment number of
    each vertex at the moment it was picked, i.e. the number of edges into the
    already ordered prefix.  Ties go to the smallest vertex id.  The last
    attachment number equals the local edge connectivity of the last two
    vertices.
    """
    if not 0 <= start < G.n:
        raise IndexError("start vertex out of range")
    scan = _scan_multigraph(G, start)
    return scan.order, scan.attach


def sparse_certificate(G: MultiGraph, k: int) -> MultiGraph:
    """Union of the first ``k`` scan forests of ``G``.

    The result has at most ``k*(n-1)`` edges, keeps every cut of size at most
    ``k`` at its exact size, and keeps at least ``k`` edges of larger cuts.
    Edge ids are those of ``G``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if G.m == 0:
        return G
    scan = _scan_multigraph(G, 0, restart=True)
    keep = np.asarray(scan.q) <= k
    return MultiGraph(G.n, G.u[keep], G.v[keep], ids=G.ids[keep], labels=G.labels)


# -- contraction helpers --------------------------------------------------

def _relabel(labels: np.ndarray) -> np.ndarray:
    """Renumber labels so that classes are ordered by their smallest member."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inverse]


def _weighted_from_multigraph(G: MultiGraph, vertex_map: np.ndarray, k: int) -> WeightedAdjacency:
    a = vertex_map[G.u]
    b = vertex_map[G.v]
    keep = a != b
    a, b = a[keep], b[keep]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keys, counts = np.unique(lo * k + hi, return_counts=True)
    adj: WeightedAdjacency = [dict() for _ in range(k)]
    for key, c in zip(keys.tolist(), counts.tolist()):
        x, y = divmod(key, k)
        adj[x][y] = c
        adj[y][x] = c
    return adj


def _merge_weighted(adj: WeightedAdjacency, pairs) -> tuple[WeightedAdjacency, list[int]]:
    n = len(adj)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    roots = [find(x) for x in range(n)]
    newid: dict[int, int] = {}
    label = []
    for x in range(n):
        label.append(newid.setdefault(roots[x], len(newid)))
    out: WeightedAdjacency = [dict() for _ in range(len(newid))]
    for x in range(n):
        lx = label[x]
        row = out[lx]
        for y, c in adj[x].items():
            ly = label[y]
            if ly != lx:
                row[ly] = row.get(ly, 0) + c
    return out, label


def _min_cut_value(adj: WeightedAdjacency) -> int:
    """Global min-cut value by repeated MA scans with safe contractions."""
    best = None
    while len(adj) > 1:
        scan = _scan_weighted(adj, 0, best)
        if best is None or scan.prefix_cut < best:
            best = scan.prefix_cut
        # pairs with q >= best are at least best-connected; the last pair is
        # separated only by cuts of size >= its attachment
        pairs = list(scan.q)
        pairs.append((scan.order[-2], scan.order[-1]))
        adj, _ = _merge_weighted(adj, pairs)
    return best


@dataclass
class MinCutKernel:
    """A contraction of ``G`` that keeps every min-cut of ``G``.

    ``vertex_map[x]`` is the kernel vertex of graph vertex ``x``; vertex 0
    always maps to kernel vertex 0.  ``adjacency`` is the weighted adjacency
    of the kernel multigraph.
    """

    lam: int
    vertex_map: np.ndarray
    adjacency: WeightedAdjacency

    @property
    def n(self) -> int:
        return len(self.adjacency)


def min_cut_kernel(G: MultiGraph) -> MinCutKernel:
    """Contract vertex pairs that no min-cut separates, as far as MA scans can tell.

    Pairs whose scan value exceeds a known upper bound on the edge
    connectivity are merged; this repeats on the smaller graph until nothing
    merges.  Every min-cut of ``G`` survives as a cut of the kernel.
    """
    if G.n < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    G.require_connected()
    upper = G.min_degree()
    scan = _scan_multigraph(G, 0)
    upper = min(upper, scan.prefix_cut)
    q = np.asarray(scan.q, dtype=np.int64)
    heavy = q > upper
    adj_m = coo_matrix(
        (np.ones(int(heavy.sum()), dtype=np.int8), (G.u[heavy], G.v[heavy])), shape=(G.n, G.n)
    )
    _, labels = connected_components(adj_m, directed=False)
    vertex_map = _relabel(labels)
    k = int(vertex_map.max()) + 1
    adj = _weighted_from_multigraph(G, vertex_map, k)
    while len(adj) > 1:
        scan = _scan_weighted(adj, 0, upper + 1)
        upper = min(upper, scan.prefix_cut)
        pairs = [(x, w) for x, w in scan.q]
        if not pairs:
            lam = _min_cut_value(adj)
            if lam < upper:
                upper = lam
                continue
            break
        adj, label = _merge_weighted(adj, pairs)
        vertex_map = np.asarray(label, dtype=np.int64)[vertex_map]
    if len(adj) < 2:
        raise RuntimeError("kernel collapsed to a single vertex")
    return MinCutKernel(upper, vertex_map, adj)


def edge_connectivity(G: MultiGraph) -> int:
    """Edge connectivity of a connected multigraph with at least two vertices."""
    return min_cut_kernel(G).lam
