"""Compaction of a cactus to its non-trivial min-cuts, and the xylem tree.

Four local rewrites are applied until none fires:

(i)   2-cycle with a 1-junction singleton ``v``: contract ``v`` into its partner.
(ii)  3-cycle ``(v, a, b)`` with ``v`` a 1-junction singleton: replace it by
      the 2-cycles ``(v, a)`` and ``(v, b)``.
(iii) 2-cycle with an empty 2-junction ``v``: contract ``v`` into its partner.
(iv)  3-cycle with two empty 2-junctions ``v``, ``w``: contract ``vw``.

Each rewrite only drops trivial min-cuts, so the result still represents every
non-trivial min-cut and nothing that is not a min-cut.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .cactus import Cactus, represented_cuts
from .graph import Cut, MultiGraph
from .oracle import DEFAULT_LIMIT, enumerate_min_cuts_bruteforce


class _Work:
    """Mutable cactus used while rewriting."""

    def __init__(self, kc: Cactus):
        self.size = kc.node_sizes().tolist()
        self.alias = list(range(kc.n_nodes))  # union-find over merged nodes
        self.cycles: dict[int, list[int]] = {i: list(c) for i, c in enumerate(kc.cycles)}
        self.on: list[set[int]] = [set() for _ in range(kc.n_nodes)]
        for i, c in self.cycles.items():
            for x in c:
                self.on[x].add(i)
        self.next_cycle = len(kc.cycles)
        self.applied = [0, 0, 0, 0]

    def find(self, x: int) -> int:
        while self.alias[x] != x:
            self.alias[x] = self.alias[self.alias[x]]
            x = self.alias[x]
        return x

    def singleton_leaf(self, x: int) -> bool:
        return self.size[x] == 1 and len(self.on[x]) == 1

    def empty_two(self, x: int) -> bool:
        return self.size[x] == 0 and len(self.on[x]) == 2

    def contract(self, keep: int, gone: int, ci: int) -> list[int]:
        """Contract the edge ``keep``-``gone`` of cycle ``ci``; returns touched cycles."""
        cyc = self.cycles[ci]
        if len(cyc) == 2:
            del self.cycles[ci]
            self.on[keep].discard(ci)
        else:
            cyc.remove(gone)
        self.on[gone].discard(ci)
        touched = []
        for cj in self.on[gone]:
            self.cycles[cj] = [keep if x == gone else x for x in self.cycles[cj]]
            self.on[keep].add(cj)
            touched.append(cj)
        self.on[gone] = set()
        self.size[keep] += self.size[gone]
        self.size[gone] = 0
        self.alias[gone] = keep
        touched.extend(self.on[keep])
        return touched

    def split_triangle(self, ci: int, v: int) -> list[int]:
        a, b = (x for x in self.cycles[ci] if x != v)
        del self.cycles[ci]
        for x in (v, a, b):
            self.on[x].discard(ci)
        new = []
        for x in (a, b):
            cj = self.next_cycle
            self.next_cycle += 1
            self.cycles[cj] = [v, x]
            self.on[v].add(cj)
            self.on[x].add(cj)
            new.append(cj)
        return new

    def rewrite(self, ci: int) -> list[int] | None:
        cyc = self.cycles[ci]
        if len(cyc) == 2:
            for v in cyc:
                if self.singleton_leaf(v):
                    self.applied[0] += 1
                    return self.contract(next(x for x in cyc if x != v), v, ci)
            for v in cyc:
                if self.empty_two(v):
                    self.applied[2] += 1
                    return self.contract(next(x for x in cyc if x != v), v, ci)
        elif len(cyc) == 3:
            for v in cyc:
                if self.singleton_leaf(v):
                    self.applied[1] += 1
                    return self.split_triangle(ci, v)
            empties = [x for x in cyc if self.empty_two(x)]
            if len(empties) >= 2:
                self.applied[3] += 1
                return self.contract(empties[0], empties[1], ci)
        return None


def compact_cactus(kc: Cactus, G: MultiGraph | None = None, stats: dict | None = None) -> Cactus:
    """Apply rewrites (i)-(iv) until none applies; returns the compact cactus.

    Nodes of the result are numbered in the order of their smallest original
    node id, which keeps the node of vertex 0 first.  ``stats``, if given,
    receives the number of times each rewrite fired.
    """
    if G is not None and len(kc.phi) != G.n:
        raise ValueError("cactus does not map the vertices of G")
    w = _Work(kc)
    queue = deque(sorted(i for i, c in w.cycles.items() if len(c) <= 3))
    while queue:
        ci = queue.popleft()
        if ci not in w.cycles:
            continue
        touched = w.rewrite(ci)
        if touched is None:
            continue
        for cj in touched:
            if cj in w.cycles and len(w.cycles[cj]) <= 3:
                queue.append(cj)
    if stats is not None:
        stats.update({f"mod_{name}": k for name, k in zip(("i", "ii", "iii", "iv"), w.applied)})
    roots = sorted({w.find(x) for x in range(kc.n_nodes)})
    renum = {x: i for i, x in enumerate(roots)}
    phi = [renum[w.find(x)] for x in kc.phi.tolist()]
    cycles = [tuple(renum[x] for x in w.cycles[ci]) for ci in sorted(w.cycles)]
    return Cactus(len(roots), tuple(cycles), phi)


def pattern_violations(kc: Cactus) -> list[str]:
    """Occurrences of any of the four rewrite patterns (empty after compaction)."""
    size = kc.node_sizes()
    deg = kc.junction_degrees()
    out = []
    for ci, cyc in enumerate(kc.cycles):
        leaf = [x for x in cyc if size[x] == 1 and deg[x] == 1]
        empty2 = [x for x in cyc if size[x] == 0 and deg[x] == 2]
        if len(cyc) == 2 and leaf:
            out.append(f"(i) cycle {ci}")
        if len(cyc) == 3 and leaf:
            out.append(f"(ii) cycle {ci}")
        if len(cyc) == 2 and empty2:
            out.append(f"(iii) cycle {ci}")
        if len(cyc) == 3 and len(empty2) >= 2:
            out.append(f"(iv) cycle {ci}")
    return out


def adjacent_singleton_leaves(kc: Cactus) -> list[tuple[int, int]]:
    """Pairs of cycle neighbours that are both 1-junction singletons."""
    size = kc.node_sizes()
    deg = kc.junction_degrees()
    out = []
    for cyc in kc.cycles:
        k = len(cyc)
        if k < 2:
            continue
        pairs = [(cyc[i], cyc[(i + 1) % k]) for i in range(k if k > 2 else 1)]
        for a, b in pairs:
            if size[a] == 1 and deg[a] == 1 and size[b] == 1 and deg[b] == 1:
                out.append((a, b))
    return out


# -- xylem ----------------------------------------------------------------------

@dataclass
class Xylem:
    """Tree on cactus nodes ``0..n_nodes-1`` and cycle centers ``n_nodes + i``."""

    n_nodes: int
    n_centers: int
    tree: nx.Graph

    def is_center(self, x: int) -> bool:
        return x >= self.n_nodes

    def leaves(self) -> list[int]:
        return sorted(x for x, d in self.tree.degree() if d == 1)


def build_xylem(kc: Cactus) -> Xylem:
    T = nx.Graph()
    T.add_nodes_from(range(kc.n_nodes + len(kc.cycles)))
    for ci, cyc in enumerate(kc.cycles):
        T.add_edges_from((kc.n_nodes + ci, x) for x in cyc)
    return Xylem(kc.n_nodes, len(kc.cycles), T)


def prune_xylem(X: Xylem, kc: Cactus) -> Xylem:
    """Drop every 1-junction singleton from the xylem."""
    size = kc.node_sizes()
    deg = kc.junction_degrees()
    T = X.tree.copy()
    T.remove_nodes_from([x for x in range(kc.n_nodes) if size[x] == 1 and deg[x] == 1])
    return Xylem(X.n_nodes, X.n_centers, T)


def lean_paths(X: Xylem) -> list[int]:
    """Vertex counts of the maximal paths whose vertices all have degree two."""
    inner = [x for x, d in X.tree.degree() if d == 2]
    sub = X.tree.subgraph(inner)
    return sorted(len(c) for c in nx.connected_components(sub))


def audit_bounds(kc: Cactus, n: int, delta: int) -> dict:
    """Node count of a compact cactus against ``30n/delta``, with xylem statistics."""
    if delta < 1:
        raise ValueError("minimum degree must be positive")
    X = prune_xylem(build_xylem(kc), kc)
    degs = [d for _, d in X.tree.degree()]
    paths = lean_paths(X)
    return {
        "vertices_Kprime": kc.n_nodes,
        "bound": 30 * n // delta,
        "pass": kc.n_nodes * delta < 30 * n,
        "xylem_vertices": X.tree.number_of_nodes(),
        "xylem_leaves": sum(d == 1 for d in degs),
        "xylem_branch": sum(d >= 3 for d in degs),
        "lean_paths": len(paths),
        "lean_path_max": max(paths, default=0),
    }


def leaf_errors(kc: Cactus) -> list[str]:
    """Leaves of the pruned xylem must be exactly the 1-junction non-singletons."""
    X = prune_xylem(build_xylem(kc), kc)
    size = kc.node_sizes()
    deg = kc.junction_degrees()
    want = sorted(x for x in range(kc.n_nodes) if deg[x] == 1 and size[x] > 1)
    have = X.leaves()
    if have != want:
        return [f"pruned xylem leaves {have}, expected {want}"]
    return []


# -- minimality ---------------------------------------------------------------

def contract_cactus_edge(kc: Cactus, ci: int, pos: int) -> Cactus:
    """Contract edge ``pos`` (joining positions ``pos``, ``pos+1``) of cycle ``ci``."""
    cyc = kc.cycles[ci]
    a, b = cyc[pos], cyc[(pos + 1) % len(cyc)]
    keep, gone = min(a, b), max(a, b)
    cycles = []
    for cj, c in enumerate(kc.cycles):
        if cj == ci:
            if len(c) > 2:
                cycles.append(tuple(x for x in c if x != gone))
            continue
        cycles.append(tuple(keep if x == gone else x for x in c))
    renum = [x - (x > gone) for x in range(kc.n_nodes)]
    renum[gone] = renum[keep]
    cycles = [tuple(renum[x] for x in c) for c in cycles]
    return Cactus(kc.n_nodes - 1, tuple(cycles), [renum[x] for x in kc.phi.tolist()])


@dataclass
class MinimalityReport:
    minimal: bool
    redundant_edges: list = field(default_factory=list)  # (cycle, position) pairs
    unrepresented: list = field(default_factory=list)


def non_trivial_min_cuts(G: MultiGraph, limit: int = DEFAULT_LIMIT) -> list[Cut]:
    return [c for c in enumerate_min_cuts_bruteforce(G, limit) if not c.is_trivial]


def check_minimal(kc: Cactus, G: MultiGraph, target=None, limit: int = DEFAULT_LIMIT) -> MinimalityReport:
    """Check that contracting any cactus edge loses a cut of ``target``.

    ``target`` defaults to the non-trivial min-cuts of ``G`` from the oracle.
    A cactus that does not represent ``target`` in the first place is reported
    as not minimal.
    """
    if target is None:
        target = non_trivial_min_cuts(G, limit)
    want = {c.side if isinstance(c, Cut) else frozenset(c) for c in target}
    report = MinimalityReport(True)
    have = set(represented_cuts(kc))
    report.unrepresented = sorted(want - have, key=lambda s: (len(s), sorted(s)))
    if report.unrepresented:
        report.minimal = False
    for ci, cyc in enumerate(kc.cycles):
        for pos in range(len(cyc) if len(cyc) > 2 else 1):
            smaller = contract_cactus_edge(kc, ci, pos)
            if want <= set(represented_cuts(smaller)):
                report.redundant_edges.append((ci, pos))
                report.minimal = False
    return report


def sandwich_errors(kc: Cactus, G: MultiGraph, oracle_cuts) -> list[str]:
    """``NC(G) <= cuts(K') <= C(G)`` as canonical sides."""
    all_sides = {c.side for c in oracle_cuts}
    nc = {c.side for c in oracle_cuts if not c.is_trivial}
    rep = set(represented_cuts(kc))
    errs = []
    if not nc <= rep:
        errs.append(f"{len(nc - rep)} non-trivial min-cuts not represented")
    if not rep <= all_sides:
        errs.append(f"{len(rep - all_sides)} represented cuts are not min-cuts")
    return errs


__all__ = [
    "Xylem",
    "MinimalityReport",
    "adjacent_singleton_leaves",
    "audit_bounds",
    "build_xylem",
    "check_minimal",
    "compact_cactus",
    "contract_cactus_edge",
    "leaf_errors",
    "lean_paths",
    "non_trivial_min_cuts",
    "pattern_violations",
    "prune_xylem",
    "sandwich_errors",
]
