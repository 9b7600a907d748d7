"""Undirected multigraphs, contraction, cut queries and the line-oriented text format.

Vertices are the integers ``0..n-1``.  Edges live in two parallel numpy arrays
and every edge carries a stable id, so that after a contraction the surviving
edges can still be traced back to the graph they came from.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class GraphFormatError(ValueError):
    """Raised for malformed graph text."""


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs min-cuts but the graph is disconnected."""


class MultiGraph:
    """Immutable undirected multigraph without self-loops.

    Parameters
    ----------
    n : int
        Number of vertices.
    u, v : array-like of int
        Endpoints of the edges. Parallel edges are repeated entries.
    ids : array-like of int, optional
        Stable edge ids; defaults to ``0..m-1``.
    labels : sequence, optional
        Per-vertex annotations carried through contractions.
    """

    __slots__ = ("n", "u", "v", "ids", "labels", "_degree", "_csr")

    def __init__(self, n: int, u, v, ids=None, labels: Sequence | None = None):
        n = int(n)
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        u = np.asarray(u, dtype=np.int64).reshape(-1)
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        if ids is None:
            ids = np.arange(len(u), dtype=np.int64)
        else:
            ids = np.asarray(ids, dtype=np.int64).reshape(-1)
            if ids.shape != u.shape:
                raise ValueError("edge id array differs in length")
            if len(np.unique(ids)) != len(ids):
                raise ValueError("edge ids must be unique")
        if len(u):
            if u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(u == v):
                raise ValueError("self-loops are not allowed")
        if labels is not None and len(labels) != n:
            raise ValueError("need one label per vertex")
        for arr in (u, v, ids):
            arr.setflags(write=False)
        self.n = n
        self.u = u
        self.v = v
        self.ids = ids
        self.labels = None if labels is None else tuple(labels)
        self._degree = None
        self._csr = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "MultiGraph":
        edges = list(edges)
        if not edges:
            return cls(n, [], [], labels=labels)
        arr = np.asarray(edges, dtype=np.int64)
        return cls(n, arr[:, 0], arr[:, 1], labels=labels)

    @property
    def m(self) -> int:
        return len(self.u)

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.u.tolist(), self.v.tolist()))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.ids, other.ids)
        )

    __hash__ = None

    # -- degrees ---------------------------------------------------------
    def degrees(self) -> np.ndarray:
        if self._degree is None:
            deg = np.bincount(self.u, minlength=self.n) + np.bincount(self.v, minlength=self.n)
            deg.setflags(write=False)
            self._degree = deg
        return self._degree

    def degree(self, x: int) -> int:
        if not 0 <= x < self.n:
            raise IndexError(f"vertex {x} out of range")
        return int(self.degrees()[x])

    def min_degree(self) -> int:
        return int(self.degrees().min())

    # -- adjacency -------------------------------------------------------
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(indptr, neighbor, edge_index)``; edge_index points into ``u``/``v``."""
        if self._csr is None:
            src = np.concatenate([self.u, self.v])
            dst = np.concatenate([self.v, self.u])
            eidx = np.concatenate([np.arange(self.m), np.arange(self.m)])
            order = np.argsort(src, kind="stable")
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
            self._csr = (indptr, dst[order], eidx[order])
        return self._csr

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj = coo_matrix((np.ones(self.m, dtype=np.int8), (self.u, self.v)), shape=(self.n, self.n))
        count, _ = connected_components(adj, directed=False)
        return count == 1

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError("graph is disconnected")

    def is_simple(self) -> bool:
        lo = np.minimum(self.u, self.v)
        hi = np.maximum(self.u, self.v)
        return len(np.unique(lo * self.n + hi)) == self.m

    # -- cuts ------------------------------------------------------------
    def _side_mask(self, X) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        idx = np.fromiter((int(x) for x in X), dtype=np.int64)
        if len(idx) and (idx.min() < 0 or idx.max() >= self.n):
            raise IndexError("vertex out of range")
        mask[idx] = True
        k = int(mask.sum())
        if k == 0 or k == self.n:
            raise ValueError("a cut side must be non-empty and proper")
        return mask

    def cut_size(self, X) -> int:
        mask = self._side_mask(X)
        return int(np.count_nonzero(mask[self.u] != mask[self.v]))

    def crossing_edges(self, X) -> "EdgeCut":
        mask = self._side_mask(X)
        sel = mask[self.u] != mask[self.v]
        return EdgeCut(tuple(sorted(self.ids[sel].tolist())))

    def edge_endpoints(self) -> dict[int, tuple[int, int]]:
        """Map edge id to its (low, high) endpoint pair."""
        lo = np.minimum(self.u, self.v).tolist()
        hi = np.maximum(self.u, self.v).tolist()
        return dict(zip(self.ids.tolist(), zip(lo, hi)))


@dataclass(frozen=True)
class Cut:
    """A bipartition stored by its side not containing vertex 0."""

    side: frozenset
    size: int
    n: int

    def __post_init__(self):
        if 0 in self.side:
            raise ValueError("canonical side must not contain vertex 0")
        if not self.side or len(self.side) >= self.n:
            raise ValueError("cut side must be non-empty and proper")

    @classmethod
    def of(cls, G: MultiGraph, X) -> "Cut":
        side = canonical_side(X, G.n)
        return cls(side, G.cut_size(side), G.n)

    @property
    def is_trivial(self) -> bool:
        return len(self.side) == 1 or len(self.side) == self.n - 1

    def sort_key(self) -> tuple:
        return tuple(sorted(self.side))


@dataclass(frozen=True)
class EdgeCut:
    """Sorted ids of the edges crossing a cut."""

    edges: tuple

    def __len__(self) -> int:
        return len(self.edges)

    def format(self, G: MultiGraph) -> str:
        return format_edge_cut(self.edges, G.edge_endpoints())


def canonical_side(X, n: int) -> frozenset:
    side = frozenset(int(x) for x in X)
    if 0 in side:
        side = frozenset(range(n)) - side
    if not side or len(side) >= n:
        raise ValueError("a cut side must be non-empty and proper")
    return side


def side_of_edge_cut(G: MultiGraph, edge_ids) -> frozenset:
    """Recover the canonical side of a cut from its crossing edges.

    Removes the edges and takes the component of vertex 0; raises if the
    removal does not leave exactly two components.
    """
    drop = np.isin(G.ids, np.fromiter(edge_ids, dtype=np.int64))
    keep = ~drop
    adj = coo_matrix(
        (np.ones(int(keep.sum()), dtype=np.int8), (G.u[keep], G.v[keep])), shape=(G.n, G.n)
    )
    count, comp = connected_components(adj, directed=False)
    if count != 2:
        raise ValueError(f"edge set splits the graph into {count} components")
    return frozenset(np.flatnonzero(comp != comp[0]).tolist())


def contract(G: MultiGraph, blocks: Sequence[Iterable[int]]) -> tuple[MultiGraph, np.ndarray]:
    """Contract every block of a partition of ``V(G)`` into one vertex.

    Self-loops are dropped, parallel edges kept, edge ids preserved.  Block
    ``i`` becomes vertex ``i``.  Returns the new graph and the vertex map.
    """
    vertex_map = np.full(G.n, -1, dtype=np.int64)
    for i, block in enumerate(blocks):
        members = np.fromiter((int(x) for x in block), dtype=np.int64)
        if len(members) == 0:
            raise ValueError("blocks must be non-empty")
        if members.min() < 0 or members.max() >= G.n:
            raise ValueError("block vertex out of range")
        if np.any(vertex_map[members] != -1) or len(np.unique(members)) != len(members):
            raise ValueError("blocks overlap")
        vertex_map[members] = i
    if np.any(vertex_map == -1):
        raise ValueError("blocks do not cover every vertex")
    return contract_by_map(G, vertex_map), vertex_map


def contract_by_map(G: MultiGraph, vertex_map: np.ndarray, labels=None) -> MultiGraph:
    """Contract along a surjective map onto ``0..k-1``."""
    vertex_map = np.asarray(vertex_map, dtype=np.int64)
    k = int(vertex_map.max()) + 1
    mu = vertex_map[G.u]
    mv = vertex_map[G.v]
    keep = mu != mv
    return MultiGraph(k, mu[keep], mv[keep], ids=G.ids[keep], labels=labels)


# -- text format ------------------------------------------------------------

def parse_graph(text, simple: bool = True, connected: bool = False) -> MultiGraph:
    """Parse ``p <n> <m>`` / ``e <u> <v>`` text; ``#`` starts a comment.

    ``text`` may be ``str`` or ``bytes``.  With ``simple`` set, duplicate
    edges are rejected; with ``connected`` set, disconnected graphs are.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    n = None
    declared_m = None
    us: list[int] = []
    vs: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "p":
                if n is not None or len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: bad header")
                n, declared_m = int(parts[1]), int(parts[2])
                if n < 1 or declared_m < 0:
                    raise GraphFormatError(f"line {lineno}: bad header values")
            elif tag == "e":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: malformed edge")
                a, b = int(parts[1]), int(parts[2])
                if a == b:
                    raise GraphFormatError(f"line {lineno}: self-loop at {a}")
                if not (0 <= a < n and 0 <= b < n):
                    raise GraphFormatError(f"line {lineno}: vertex index out of range")
                us.append(a)
                vs.append(b)
            else:
                raise GraphFormatError(f"line {lineno}: unknown record {tag!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if n is None:
        raise GraphFormatError("missing 'p' header")
    if declared_m != len(us):
        raise GraphFormatError(f"header declares {declared_m} edges, found {len(us)}")
    G = MultiGraph(n, us, vs)
    if simple and not G.is_simple():
        raise GraphFormatError("duplicate edge in simple graph")
    if connected:
        G.require_connected()
    return G


def format_graph(G: MultiGraph) -> str:
    lines = [f"p {G.n} {G.m}"]
    lines.extend(f"e {a} {b}" for a, b in G.edges())
    return "\n".join(lines) + "\n"


def format_edge_cut(edge_ids, endpoints: dict[int, tuple[int, int]]) -> str:
    pairs = sorted(endpoints[e] for e in edge_ids)
    return " ".join([f"c {len(pairs)}"] + [f"{a}-{b}" for a, b in pairs])
