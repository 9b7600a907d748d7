"""Listing every min-cut as its crossing edges.

Pipeline: sparse certificate, cactus, compaction, sparsifier ``H``, then a
family of DAGs whose closed sets are in bijection with the min-cuts of the
compact cactus ``K1``:

* one two-vertex DAG per 2-cycle of ``K1``;
* after contracting every 2-cycle (giving ``K2``), one DAG per prefix of a
  breadth-first order ``u1..uN`` of ``K2``: contract ``u1..ui`` into ``s``, use
  ``t = u(i+1)``.  Since ``t`` was discovered from the prefix, every cut
  between them lies on one cycle ``C``, and the DAG is the two directed paths
  of ``C`` from ``t`` to the contracted arc.  A cut appears at the first
  prefix that it separates from the next vertex, so exactly once.

The edges of ``H`` are then laid over each DAG (pointing from the ``t`` side
to the ``s`` side) and every closed set is reported with the edges entering
it.  Trivial min-cuts missing from the output are appended at the end.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ._lattice import iter_closed_sets
from .cactus import Cactus, CactusTree, cactus_of
from .compact import compact_cactus
from .connectivity import sparse_certificate
from .graph import MultiGraph
from .sparsify import sparsifier_nodes, sparsify


class EmbeddingError(RuntimeError):
    """An edge of ``H`` joins two DAG vertices that are not comparable."""


@dataclass
class CutDag:
    """DAG ``A`` with vertices ``0..n-1`` numbered in topological order.

    Arcs point from the ``t`` side towards the ``s`` side, so ``t = 0`` has no
    in-arcs and ``s = n-1`` no out-arcs.  ``rho`` maps every ``K1`` node to a
    DAG vertex.  After embedding, ``tail``/``head``/``eid`` hold one arc per
    edge of ``H`` between distinct DAG vertices, tagged with its edge id.
    """

    n: int
    arcs: list
    rho: np.ndarray
    tail: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    head: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    eid: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    @property
    def s(self) -> int:
        return self.n - 1

    @property
    def t(self) -> int:
        return 0

    def reach(self) -> list[int]:
        """Bitmask of the vertices reachable from each vertex (itself included)."""
        out = [1 << x for x in range(self.n)]
        succ = [[] for _ in range(self.n)]
        for x, y in self.arcs:
            succ[x].append(y)
        for x in range(self.n - 1, -1, -1):
            for y in succ[x]:
                out[x] |= out[y]
        return out

    def adjacency(self, embedded: bool) -> tuple[list[list[int]], list[list[int]]]:
        """Distinct successor and predecessor lists of ``A`` or of the embedded ``A'``."""
        pairs = zip(self.tail.tolist(), self.head.tolist()) if embedded else self.arcs
        succ = [set() for _ in range(self.n)]
        pred = [set() for _ in range(self.n)]
        for x, y in pairs:
            succ[x].add(y)
            pred[y].add(x)
        return [sorted(a) for a in succ], [sorted(a) for a in pred]


def closed_sets(dag: CutDag, embedded: bool = False) -> list[frozenset]:
    """All closed sets (containing ``s``, avoiding ``t``) of ``A`` or ``A'``."""
    succ, pred = dag.adjacency(embedded)
    return [
        frozenset(i for i, b in enumerate(inside) if b)
        for inside in iter_closed_sets(succ, pred, [dag.s], [dag.t])
    ]


# -- DAG family ---------------------------------------------------------------

def build_d1(k1: Cactus, tree: CactusTree | None = None) -> list[CutDag]:
    """One DAG ``t -> s`` per 2-cycle; ``s`` is the side away from the root."""
    tree = tree or CactusTree(k1)
    dags = []
    for ci, cyc in enumerate(k1.cycles):
        if len(cyc) != 2:
            continue
        low = cyc[1] if cyc[0] == tree.top(ci) else cyc[0]
        rho = np.zeros(k1.n_nodes, dtype=np.int64)
        rho[list(tree.side(ci, low))] = 1
        dags.append(CutDag(2, [(0, 1)], rho))
    return dags


def contract_2cycles(k1: Cactus) -> tuple[Cactus, np.ndarray]:
    """Contract every 2-cycle; returns ``K2`` and the node map ``K1 -> K2``."""
    parent = list(range(k1.n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cyc in k1.cycles:
        if len(cyc) == 2:
            a, b = find(cyc[0]), find(cyc[1])
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in range(k1.n_nodes)})
    renum = {x: i for i, x in enumerate(roots)}
    node_map = np.array([renum[find(x)] for x in range(k1.n_nodes)], dtype=np.int64)
    cycles = tuple(tuple(int(node_map[x]) for x in c) for c in k1.cycles if len(c) > 2)
    return Cactus(len(roots), cycles, node_map[k1.phi]), node_map


def _bfs(k2: Cactus) -> tuple[list[int], list[int]]:
    """Breadth-first order of ``K2`` from the root and the cycle each node was reached by."""
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(k2.n_nodes)]
    for ci, cyc in enumerate(k2.cycles):
        k = len(cyc)
        for p in range(k):
            a, b = cyc[p], cyc[(p + 1) % k]
            nbrs[a].append((b, ci))
            nbrs[b].append((a, ci))
    root = k2.root
    order = [root]
    via = [-1] * k2.n_nodes
    seen = [False] * k2.n_nodes
    seen[root] = True
    for x in order:
        for y, ci in sorted(nbrs[x]):
            if not seen[y]:
                seen[y] = True
                via[y] = ci
                order.append(y)
    if len(order) != k2.n_nodes:
        raise ValueError("cactus is disconnected")
    return order, via


def build_d2(k2: Cactus, node_map: np.ndarray | None = None) -> list[CutDag]:
    """The prefix-contraction DAGs of a cactus without 2-cycles.

    ``rho`` of each DAG is over ``K1`` nodes when ``node_map`` (``K1 -> K2``) is
    given, over ``K2`` nodes otherwise.
    """
    if k2.n_nodes < 2:
        return []
    if any(len(c) == 2 for c in k2.cycles):
        raise ValueError("contract the 2-cycles first")
    if node_map is None:
        node_map = np.arange(k2.n_nodes, dtype=np.int64)
    tree = CactusTree(k2)
    order, via = _bfs(k2)
    labels: dict[int, np.ndarray] = {}  # cycle -> position of each K2 node's side
    dags = []
    for i in range(1, len(order)):
        t = order[i]
        ci = via[t]
        cyc = k2.cycles[ci]
        k = len(cyc)
        if ci not in labels:
            lab = np.empty(k2.n_nodes, dtype=np.int64)
            for p, x in enumerate(cyc):
                lab[list(tree.side(ci, x))] = p
            labels[ci] = lab
        lab = labels[ci]
        pt = cyc.index(t)
        in_s = np.zeros(k, dtype=bool)
        in_s[lab[order[:i]]] = True
        if in_s[pt]:
            raise RuntimeError("prefix meets the side of the sink")
        index = np.full(k, -1, dtype=np.int64)
        index[pt] = 0
        nv = 1
        arcs = []
        for step in (1, -1):
            prev = 0
            p = (pt + step) % k
            while not in_s[p]:
                if index[p] != -1:
                    raise RuntimeError("prefix is not an arc of the cycle")
                index[p] = nv
                arcs.append((prev, nv))
                prev = nv
                nv += 1
                p = (p + step) % k
            arcs.append((prev, -1))
        s = nv
        index[in_s] = s
        if np.any(index < 0):
            raise RuntimeError("prefix is not an arc of the cycle")
        arcs = [(x, s if y == -1 else y) for x, y in arcs]
        dags.append(CutDag(s + 1, arcs, index[lab[node_map]]))
    return dags


def embed_edges(dag: CutDag, H: MultiGraph, h_node: np.ndarray, reach: list[int] | None = None) -> CutDag:
    """Lay the edges of ``H`` over ``dag``; ``h_node`` maps ``H`` vertices to ``K1`` nodes.

    The original arcs are dropped; each ``H`` edge between distinct DAG
    vertices becomes an arc from the topologically earlier endpoint to the
    later one.
    """
    reach = reach if reach is not None else dag.reach()
    a = dag.rho[h_node[H.u]]
    b = dag.rho[h_node[H.v]]
    keep = a != b
    a, b, ids = a[keep], b[keep], H.ids[keep]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    for x, y in set(zip(lo.tolist(), hi.tolist())):
        if not reach[x] >> y & 1:
            raise EmbeddingError(f"edge joins incomparable DAG vertices {x} and {y}")
    return CutDag(dag.n, dag.arcs, dag.rho, lo, hi, ids)


def enumerate_closed_sets(dag: CutDag, lam: int | None = None) -> Iterator[tuple[int, ...]]:
    """Edge ids entering each closed set of the embedded DAG, sorted per cut."""
    n = dag.n
    ins: list[list[int]] = [[] for _ in range(n)]
    outs: list[list[int]] = [[] for _ in range(n)]
    for x, y, e in zip(dag.tail.tolist(), dag.head.tolist(), dag.eid.tolist()):
        outs[x].append(e)
        ins[y].append(e)
    succ, pred = dag.adjacency(True)
    crossing: set[int] = set()

    def on_add(v):
        crossing.difference_update(outs[v])
        crossing.update(ins[v])

    def on_remove(v):
        crossing.difference_update(ins[v])
        crossing.update(outs[v])

    for _ in iter_closed_sets(succ, pred, [dag.s], [dag.t], on_add, on_remove):
        cut = tuple(sorted(crossing))
        if lam is not None and len(cut) != lam:
            raise RuntimeError(f"closed set has {len(cut)} crossing edges, expected {lam}")
        yield cut


# -- whole pipeline -------------------------------------------------------------

@dataclass
class Pipeline:
    lam: int
    delta: int
    certificate: MultiGraph
    cactus: Cactus
    compact: Cactus
    H: MultiGraph
    h_map: np.ndarray
    dags: list


def build_pipeline(G: MultiGraph, timings: dict | None = None) -> Pipeline:
    """Everything up to the embedded DAG family."""
    if G.n < 2:
        raise ValueError("need at least two vertices")
    G.require_connected()
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        if timings is not None:
            timings[name] = timings.get(name, 0.0) + now - clock
        clock = now

    delta = G.min_degree()
    # k = delta + 1 keeps cuts larger than lam from tying with it when lam = delta
    cert = G if G.m <= (delta + 1) * G.n else sparse_certificate(G, delta + 1)
    lap("certificate")
    kc, lam = cactus_of(cert)
    lap("cactus")
    k1 = compact_cactus(kc, G)
    lap("compact")
    H, h_map = sparsify(G, k1)
    lap("sparsify")
    h_node = sparsifier_nodes(k1)
    dags = build_d1(k1)
    k2, node_map = contract_2cycles(k1)
    dags += build_d2(k2, node_map)
    dags = [embed_edges(d, H, h_node) for d in dags]
    lap("dags")
    return Pipeline(lam, delta, cert, kc, k1, H, h_map, dags)


def _star(G: MultiGraph, indptr, eidx, x: int) -> tuple[int, ...]:
    return tuple(sorted(G.ids[eidx[indptr[x]: indptr[x + 1]]].tolist()))


def enumerate_all_min_cuts(
    G: MultiGraph, threads: int = 1, timings: dict | None = None
) -> Iterator[tuple[int, ...]]:
    """Stream every min-cut of ``G`` once, as its sorted crossing edge ids.

    Output order is fixed: 2-cycle DAGs, prefix DAGs, then trivial cuts not
    yet listed.  With ``threads > 1`` the DAGs are enumerated concurrently
    but results keep the same order.
    """
    return list_cuts(G, build_pipeline(G, timings), threads, timings)


def list_cuts(
    G: MultiGraph, pipe: Pipeline, threads: int = 1, timings: dict | None = None
) -> Iterator[tuple[int, ...]]:
    """Steps after the DAG family is built: closed sets, then missing trivial cuts."""
    lam = pipe.lam
    clock = time.perf_counter()
    deg = G.degrees()
    indptr, _, eidx = G.csr()
    ends = {}
    if lam == pipe.delta:
        ends = dict(zip(G.ids.tolist(), zip(G.u.tolist(), G.v.tolist())))
    stars: set[tuple[int, ...]] = set()

    def note(cut):
        # remember listed cuts that are stars so the final pass skips them
        if ends:
            for x in ends[cut[0]]:
                if deg[x] == lam and all(x in ends[e] for e in cut):
                    stars.add(cut)
                    break
        return cut

    if threads > 1 and len(pipe.dags) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for cuts in pool.map(lambda d: list(enumerate_closed_sets(d, lam)), pipe.dags):
                for cut in cuts:
                    yield note(cut)
    else:
        for dag in pipe.dags:
            for cut in enumerate_closed_sets(dag, lam):
                yield note(cut)
    for x in np.flatnonzero(deg == lam).tolist():
        star = _star(G, indptr, eidx, x)
        if star not in stars:
            stars.add(star)
            yield star
    if timings is not None:
        timings["enumerate"] = timings.get("enumerate", 0.0) + time.perf_counter() - clock
