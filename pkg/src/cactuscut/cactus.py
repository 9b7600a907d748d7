"""Cactus representations of families of min-cuts.

A cactus representation is a cactus multigraph ``K`` (every edge on exactly
one cycle, 2-cycles being parallel pairs) together with a map ``phi`` from the
vertices of ``G`` to the nodes of ``K``.  The min-cuts of ``K`` are the pairs of
edges on a common cycle; their ``phi``-preimages are min-cuts of ``G``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
import numpy as np

from ._lattice import iter_closed_sets, strongly_connected
from .connectivity import MinCutKernel, edge_connectivity, min_cut_kernel
from .graph import Cut, MultiGraph


class InconsistentCutsError(ValueError):
    """The given cut family cannot be the min-cut family of a graph."""


@dataclass(frozen=True)
class CactusVertexClass:
    is_empty: bool
    is_singleton: bool
    junction_degree: int


def _cycle_edges(cycles) -> list[tuple[int, int]]:
    edges = []
    for cyc in cycles:
        k = len(cyc)
        for i in range(k):
            edges.append((cyc[i], cyc[(i + 1) % k]))
    return edges


@dataclass(frozen=True, eq=False)
class Cactus:
    """Cactus ``K`` with its cycle list and the vertex map ``phi: V(G) -> V(K)``."""

    n_nodes: int
    cycles: tuple
    phi: np.ndarray
    graph: MultiGraph = None

    def __post_init__(self):
        cycles = tuple(tuple(int(x) for x in c) for c in self.cycles)
        object.__setattr__(self, "cycles", cycles)
        phi = np.asarray(self.phi, dtype=np.int64)
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        if self.graph is None:
            edges = _cycle_edges(cycles)
            u = [a for a, _ in edges]
            v = [b for _, b in edges]
            object.__setattr__(self, "graph", MultiGraph(self.n_nodes, u, v))

    def __repr__(self) -> str:
        lengths = sorted(len(c) for c in self.cycles)
        return f"Cactus(nodes={self.n_nodes}, cycles={lengths}, n={len(self.phi)})"

    @property
    def root(self) -> int:
        """The node holding graph vertex 0; canonical cut sides avoid it."""
        return int(self.phi[0])

    def node_sizes(self) -> np.ndarray:
        return np.bincount(self.phi, minlength=self.n_nodes)

    def junction_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=np.int64)
        for c in self.cycles:
            for x in c:
                deg[x] += 1
        return deg

    def classify(self, v: int) -> CactusVertexClass:
        size = int(self.node_sizes()[v])
        return CactusVertexClass(size == 0, size == 1, int(self.junction_degrees()[v]))

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for x, k in enumerate(self.phi.tolist()):
            out[k].append(x)
        return out

    def preimage(self, nodes) -> frozenset:
        mask = np.zeros(self.n_nodes, dtype=bool)
        mask[list(nodes)] = True
        return frozenset(np.flatnonzero(mask[self.phi]).tolist())

    @classmethod
    def from_multigraph(cls, K: MultiGraph, phi) -> "Cactus":
        """Recover the cycle list of a cactus multigraph by block decomposition."""
        mult: dict[tuple[int, int], int] = {}
        for a, b in K.edges():
            key = (min(a, b), max(a, b))
            mult[key] = mult.get(key, 0) + 1
        simple = nx.Graph()
        simple.add_nodes_from(range(K.n))
        simple.add_edges_from(mult)
        if K.n > 1 and not nx.is_connected(simple):
            raise ValueError("not a cactus: disconnected")
        cycles = []
        for block in nx.biconnected_component_edges(simple):
            block = list(block)
            if len(block) == 1:
                a, b = block[0]
                key = (min(a, b), max(a, b))
                if mult[key] != 2:
                    raise ValueError(f"not a cactus: edge {key} has multiplicity {mult[key]}")
                cycles.append(key)
                continue
            sub = nx.Graph(block)
            if any(mult[(min(a, b), max(a, b))] != 1 for a, b in block) or any(
                d != 2 for _, d in sub.degree()
            ):
                raise ValueError("not a cactus: a block is not a cycle")
            cycles.append(tuple(x for x, _ in nx.find_cycle(sub)))
        return cls(K.n, tuple(cycles), phi, graph=K)


# -- structure queries ------------------------------------------------------

class CactusTree:
    """The cactus rooted through its xylem (cactus nodes plus one center per cycle).

    Supports ``K[C, v]`` queries: the node set of the component of ``K - e - f``
    containing ``v``, where ``e``, ``f`` are the two edges of cycle ``C`` at ``v``.
    """

    def __init__(self, kc: Cactus):
        N = kc.n_nodes
        self.n_nodes = N
        self.cycles = kc.cycles
        adj: list[list[int]] = [[] for _ in range(N + len(kc.cycles))]
        for ci, cyc in enumerate(kc.cycles):
            c = N + ci
            for x in cyc:
                adj[x].append(c)
                adj[c].append(x)
        root = kc.root
        parent = [-1] * len(adj)
        tin = [-1] * len(adj)
        tout = [-1] * len(adj)
        euler: list[int] = []
        tin[root] = 0
        euler.append(root)
        stack = [(root, iter(adj[root]))]
        clock = 1
        while stack:
            x, it = stack[-1]
            for y in it:
                if tin[y] == -1:
                    parent[y] = x
                    tin[y] = clock
                    clock += 1
                    euler.append(y)
                    stack.append((y, iter(adj[y])))
                    break
            else:
                tout[x] = clock - 1
                stack.pop()
        if any(t == -1 for t in tin):
            raise ValueError("cactus is disconnected")
        self.parent = parent
        self.tin = tin
        self.tout = tout
        self.euler = euler
        self.all_nodes = frozenset(range(N))

    def top(self, ci: int) -> int:
        """The node of cycle ``ci`` closest to the root."""
        return self.parent[self.n_nodes + ci]

    def subtree_nodes(self, x: int) -> frozenset:
        return frozenset(y for y in self.euler[self.tin[x]: self.tout[x] + 1] if y < self.n_nodes)

    def side(self, ci: int, v: int) -> frozenset:
        if v not in self.cycles[ci]:
            raise ValueError(f"node {v} is not on cycle {ci}")
        if v == self.top(ci):
            return self.all_nodes - self.subtree_nodes(self.n_nodes + ci)
        return self.subtree_nodes(v)


def side_of_cycle(kc: Cactus, ci: int, v: int, tree: CactusTree | None = None) -> frozenset:
    """Node set of ``K[C, v]`` for cycle index ``ci`` and node ``v`` on it."""
    return (tree or CactusTree(kc)).side(ci, v)


@dataclass(frozen=True)
class CactusCut:
    cycle: int
    edges: tuple  # positions i < j of the two removed cycle edges
    nodes: frozenset  # canonical node side (avoids the root node)


def min_cuts_of_cactus(kc: Cactus, tree: CactusTree | None = None) -> list[CactusCut]:
    """Every min-cut of ``K``: one per pair of edges on a common cycle."""
    tree = tree or CactusTree(kc)
    out = []
    for ci, cyc in enumerate(kc.cycles):
        k = len(cyc)
        sides = [tree.side(ci, x) for x in cyc]
        top = tree.top(ci)
        for i, j in combinations(range(k), 2):
            # edge i joins cyc[i], cyc[i+1]; removing i and j cuts off cyc[i+1..j]
            arc = range(i + 1, j + 1)
            nodes = frozenset().union(*(sides[p] for p in arc))
            if any(cyc[p] == top for p in arc):
                nodes = tree.all_nodes - nodes
            out.append(CactusCut(ci, (i, j), nodes))
    return out


def represented_cuts(kc: Cactus, tree: CactusTree | None = None) -> list[frozenset]:
    """Canonical graph-side preimages of all cactus min-cuts (may repeat)."""
    members = kc.members()
    out = []
    for cut in min_cuts_of_cactus(kc, tree):
        side = []
        for x in cut.nodes:
            side.extend(members[x])
        out.append(frozenset(side))
    return out


# -- construction -----------------------------------------------------------

def _split(members):
    """Inclusion-maximal sets of ``members`` with the members inside each.

    Returns ``(maxima, inner, overlapping)``; ``overlapping`` tells whether two
    maxima intersect.
    """
    maxima: list[int] = []
    inner: list[list[int]] = []
    overlapping = False
    for y in sorted(members, key=lambda z: (-z.bit_count(), z)):
        for i, M in enumerate(maxima):
            if y & M and not y & ~M:
                inner[i].append(y)
                break
        else:
            if any(y & M for M in maxima):
                overlapping = True
            maxima.append(y)
            inner.append([])
    return maxima, inner, overlapping


def _low_bit(y: int) -> int:
    return (y & -y).bit_length() - 1


def _bits(y: int):
    while y:
        low = y & -y
        yield low.bit_length() - 1
        y ^= low


def cactus_from_cut_masks(n_points: int, masks) -> tuple[list[int], list[tuple[int, ...]]]:
    """Build a cactus over points ``0..n_points-1`` from the bitmasks of all min-cut sides.

    Every mask must avoid point 0.  Returns the preimage mask of each node and
    the cycle list.  The root node (node 0) holds point 0.

    Nested sides hang below one another; a family of pairwise crossing sides
    is laid out as one long cycle whose blocks are the consecutive differences
    of the sides through one end block.
    """
    full = (1 << n_points) - 1
    family = set()
    for y in masks:
        y = int(y)
        if y <= 0 or y & 1 or y & ~full:
            raise InconsistentCutsError("cut sides must be non-empty, proper and avoid point 0")
        family.add(y)
    nodes: list[int] = [0]
    cycles: list[tuple[int, ...]] = []

    def node_like(inner_members):
        return not _split(inner_members)[2]

    tasks: list[tuple] = [("node", 0, full, sorted(family))]
    while tasks:
        task = tasks.pop()
        if task[0] == "node":
            _, vid, T, mems = task
            maxima, inner, overlapping = _split(mems)
            if overlapping:
                raise InconsistentCutsError("crossing sides meet at a node")
            used = 0
            for M in maxima:
                used |= M
            nodes[vid] = T & ~used
            for M, sub in zip(maxima, inner):
                tasks.append(("cycle", vid, M, sub))
            continue
        _, top, S, mems = task
        maxima, inner, overlapping = _split(mems)
        if overlapping:
            if len(maxima) != 2 or maxima[0] | maxima[1] != S:
                raise InconsistentCutsError("crossing sides do not form a circular partition")
            c1, c2 = maxima
            first = c1 & ~c2
            chain = sorted({y for y in mems if y & first == first} | {S}, key=int.bit_count)
            blocks = [chain[0]] + [b & ~a for a, b in zip(chain, chain[1:])]
            if any(a & ~b for a, b in zip(chain, chain[1:])) or any(b not in family for b in blocks):
                raise InconsistentCutsError("crossing sides do not form a circular partition")
            owner = {}
            for bi, b in enumerate(blocks):
                for p in _bits(b):
                    owner[p] = bi
            block_members: list[list[int]] = [[] for _ in blocks]
            arcs = 0
            for y in mems:
                bi = owner[_low_bit(y)]
                if y != blocks[bi] and not y & ~blocks[bi]:
                    block_members[bi].append(y)
                else:
                    arcs += 1
            k = len(blocks)
            if arcs != k * (k + 1) // 2 - 1:
                raise InconsistentCutsError("circular partition is missing some of its arcs")
            ids = list(range(len(nodes), len(nodes) + k))
            nodes.extend([0] * k)
            cycles.append((top, *ids))
            for vid, b, sub in zip(ids, blocks, block_members):
                tasks.append(("node", vid, b, sub))
            continue
        if (
            len(maxima) == 2
            and maxima[0] | maxima[1] == S
            and node_like(inner[0])
            and node_like(inner[1])
        ):
            ids = [len(nodes), len(nodes) + 1]
            nodes.extend([0, 0])
            cycles.append((top, *ids))
            for vid, b, sub in zip(ids, maxima, inner):
                tasks.append(("node", vid, b, sub))
            continue
        vid = len(nodes)
        nodes.append(0)
        cycles.append((top, vid))
        tasks.append(("node", vid, S, mems))
    return nodes, cycles


def _phi_from_nodes(n_points: int, nodes: list[int]) -> np.ndarray:
    phi = np.full(n_points, -1, dtype=np.int64)
    for vid, mask in enumerate(nodes):
        for p in _bits(mask):
            phi[p] = vid
    return phi


def build_cactus(G: MultiGraph, cuts) -> Cactus:
    """Cactus representation of ``G`` for the given family of all its min-cuts.

    ``cuts`` are :class:`Cut` objects (or vertex sets); every one must have the
    same size.  The result is minimal for the family.
    """
    G.require_connected()
    masks = []
    sizes = set()
    for c in cuts:
        side = c.side if isinstance(c, Cut) else frozenset(c)
        if isinstance(c, Cut):
            sizes.add(c.size)
        if 0 in side:
            side = frozenset(range(G.n)) - side
        masks.append(sum(1 << x for x in side))
    if len(sizes) > 1:
        raise InconsistentCutsError(f"cuts of different sizes {sorted(sizes)}")
    nodes, cycles = cactus_from_cut_masks(G.n, masks)
    return Cactus(len(nodes), tuple(cycles), _phi_from_nodes(G.n, nodes))


def kernel_min_cut_masks(kernel: MinCutKernel) -> list[int]:
    """All min-cut sides of the kernel multigraph as bitmasks avoiding vertex 0.

    Orders kernel vertices breadth-first from 0; for each prefix, the prefix is
    the source and the next vertex the sink.  When the maximum flow equals the
    edge connectivity, the minimum cuts are the closed sets of the residual
    graph; every min-cut is found at exactly one prefix (the one ending just
    before its first vertex).
    """
    adj = kernel.adjacency
    lam = kernel.lam
    N = len(adj)
    order = [0]
    seen = [False] * N
    seen[0] = True
    for x in order:
        for y in sorted(adj[x]):
            if not seen[y]:
                seen[y] = True
                order.append(y)
    full = (1 << N) - 1
    found: list[int] = []
    is_src = [False] * N
    for i in range(1, N):
        is_src[order[i - 1]] = True
        t = order[i]
        res = [dict(a) for a in adj]
        flow = 0
        sources = order[:i]
        while flow <= lam:
            prev = [-1] * N
            for s in sources:
                prev[s] = s
            queue = deque(sources)
            while queue and prev[t] == -1:
                x = queue.popleft()
                for y, c in res[x].items():
                    if c > 0 and prev[y] == -1:
                        prev[y] = x
                        queue.append(y)
            if prev[t] == -1:
                break
            bottleneck = None
            y = t
            while not is_src[y]:
                x = prev[y]
                c = res[x][y]
                bottleneck = c if bottleneck is None else min(bottleneck, c)
                y = x
            y = t
            while not is_src[y]:
                x = prev[y]
                res[x][y] -= bottleneck
                res[y][x] = res[y].get(x, 0) + bottleneck
                y = x
            flow += bottleneck
        if flow != lam:
            continue
        # sources form one block; residual arcs out of a closed set are forbidden
        succ = [[y for y, c in res[x].items() if c > 0] for x in range(N)]
        for a, b in zip(sources, sources[1:]):
            succ[a].append(b)
            succ[b].append(a)
        comp = strongly_connected(N, succ)
        ncomp = max(comp) + 1
        csucc = [set() for _ in range(ncomp)]
        cmask = [0] * ncomp
        for x in range(N):
            cmask[comp[x]] |= 1 << x
            for y in succ[x]:
                if comp[y] != comp[x]:
                    csucc[comp[x]].add(comp[y])
        cpred = [[] for _ in range(ncomp)]
        for a in range(ncomp):
            for b in csucc[a]:
                cpred[b].append(a)
        csucc = [sorted(s) for s in csucc]
        base = {comp[0]}
        frontier = [comp[0]]
        while frontier:
            a = frontier.pop()
            for b in csucc[a]:
                if b not in base:
                    base.add(b)
                    frontier.append(b)
        state = [0]

        def flip(c):
            state[0] ^= cmask[c]

        for _ in iter_closed_sets(csucc, cpred, sorted(base), [comp[t]], flip, flip):
            found.append(full & ~state[0])
    return found


def cactus_of(G: MultiGraph) -> tuple[Cactus, int]:
    """Cactus representation of ``G`` for all its min-cuts, and the edge connectivity.

    Works on the min-cut kernel of ``G`` so that large graphs with few dense
    pieces stay cheap.
    """
    kernel = min_cut_kernel(G)
    masks = kernel_min_cut_masks(kernel)
    nodes, cycles = cactus_from_cut_masks(kernel.n, masks)
    phi_kernel = _phi_from_nodes(kernel.n, nodes)
    return Cactus(len(nodes), tuple(cycles), phi_kernel[kernel.vertex_map]), kernel.lam


# -- validation ---------------------------------------------------------------

@dataclass
class CactusReport:
    ok: bool = True
    errors: list = field(default_factory=list)
    missing: list = field(default_factory=list)  # cuts of S with no cactus min-cut
    extra: list = field(default_factory=list)  # cactus min-cuts that are not min-cuts of G

    def fail(self, msg: str) -> None:
        self.ok = False
        self.errors.append(msg)


def structure_errors(kc: Cactus, n: int | None = None) -> list[str]:
    """Reasons ``kc`` is not a well-formed cactus with a total vertex map."""
    errs = []
    N = kc.n_nodes
    if n is not None and len(kc.phi) != n:
        errs.append(f"phi covers {len(kc.phi)} vertices, graph has {n}")
    if len(kc.phi) and (kc.phi.min() < 0 or kc.phi.max() >= N):
        errs.append("phi maps outside the cactus")
    for ci, cyc in enumerate(kc.cycles):
        if len(cyc) < 2 or len(set(cyc)) != len(cyc):
            errs.append(f"cycle {ci} is degenerate")
        if any(not 0 <= x < N for x in cyc):
            errs.append(f"cycle {ci} names a missing node")
    if errs:
        return errs
    K = kc.graph
    if K.n != N:
        errs.append("cactus graph has the wrong number of nodes")
        return errs
    want = sorted((min(a, b), max(a, b)) for a, b in _cycle_edges(kc.cycles))
    have = sorted((min(a, b), max(a, b)) for a, b in K.edges())
    if want != have:
        errs.append("cycles do not partition the cactus edges")
    if N > 1 and not K.is_connected():
        errs.append("cactus is not connected")
    # blocks are exactly the cycles iff the node/cycle incidence graph is a tree
    incidences = sum(len(c) for c in kc.cycles)
    if N > 1 and incidences != N + len(kc.cycles) - 1:
        errs.append("cycles do not form a tree of blocks")
    return errs


def validate_cactus(
    G: MultiGraph,
    kc: Cactus,
    cuts=(),
    lam: int | None = None,
    oracle=None,
) -> CactusReport:
    """Check that ``(K, phi)`` is a cactus representation of ``G`` for ``cuts``.

    Clause (i): every given cut is the preimage of a cactus min-cut.
    Clause (ii): every cactus min-cut has a min-cut of ``G`` as preimage.  If
    ``oracle`` (a collection of canonical sides) is given, preimages are also
    compared against it.
    """
    report = CactusReport()
    for msg in structure_errors(kc, G.n):
        report.fail(msg)
    if not report.ok:
        return report
    if lam is None:
        lam = edge_connectivity(G)
    try:
        tree = CactusTree(kc)
    except ValueError as exc:
        report.fail(str(exc))
        return report
    sides = represented_cuts(kc, tree)
    oracle_set = None if oracle is None else {
        (c.side if isinstance(c, Cut) else frozenset(c)) for c in oracle
    }
    for side in sides:
        if not side or len(side) == G.n or G.cut_size(side) != lam:
            report.extra.append(side)
        elif oracle_set is not None and side not in oracle_set:
            report.extra.append(side)
    present = set(sides)
    for c in cuts:
        side = c.side if isinstance(c, Cut) else frozenset(c)
        if 0 in side:
            side = frozenset(range(G.n)) - side
        if side not in present:
            report.missing.append(side)
    if report.extra:
        report.fail(f"{len(report.extra)} cactus min-cuts are not min-cuts of G")
    if report.missing:
        report.fail(f"{len(report.missing)} cuts are not represented")
    return report


def cycle_edge_distribution_errors(G: MultiGraph, kc: Cactus, lam: int) -> list[str]:
    """Neighbours on a cycle of length >= 3 share ``lam/2`` graph edges, others none."""
    tree = CactusTree(kc)
    members = kc.members()
    errs = []
    u, v = G.u, G.v
    for ci, cyc in enumerate(kc.cycles):
        k = len(cyc)
        if k < 3:
            continue
        label = np.full(G.n, -1, dtype=np.int64)
        for p, x in enumerate(cyc):
            for node in tree.side(ci, x):
                label[members[node]] = p
        a, b = label[u], label[v]
        counts = {}
        for x, y in zip(a.tolist(), b.tolist()):
            if x != y:
                key = (min(x, y), max(x, y))
                counts[key] = counts.get(key, 0) + 1
        for p, q in combinations(range(k), 2):
            adjacent = q == p + 1 or (p == 0 and q == k - 1)
            want = lam // 2 if adjacent else 0
            if lam % 2 or counts.get((p, q), 0) != want:
                errs.append(f"cycle {ci}: positions {p},{q} share {counts.get((p, q), 0)} edges")
    return errs


# -- text format ----------------------------------------------------------------

def format_cactus(kc: Cactus) -> str:
    lines = [f"cactus {kc.n_nodes} {len(kc.cycles)}"]
    for cyc in kc.cycles:
        lines.append(" ".join(["y", str(len(cyc)), *map(str, cyc)]))
    for x, k in enumerate(kc.phi.tolist()):
        lines.append(f"map {x} {k}")
    return "\n".join(lines) + "\n"


def parse_cactus(text) -> Cactus:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    header = None
    cycles = []
    phi: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or "=" in line:  # blank, or a key=value report line
            continue
        parts = line.split()
        try:
            if parts[0] == "cactus":
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "y":
                k = int(parts[1])
                cyc = tuple(int(x) for x in parts[2:])
                if len(cyc) != k:
                    raise ValueError("cycle length mismatch")
                cycles.append(cyc)
            elif parts[0] == "map":
                phi[int(parts[1])] = int(parts[2])
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if header is None or header[1] != len(cycles):
        raise ValueError("missing or inconsistent cactus header")
    if sorted(phi) != list(range(len(phi))):
        raise ValueError("map lines must cover vertices 0..n-1")
    return Cactus(header[0], tuple(cycles), [phi[x] for x in range(len(phi))])
