"""Contraction-based sparsifier: collapse the preimage of every compact cactus node."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cactus import Cactus
from .connectivity import edge_connectivity
from .graph import Cut, MultiGraph, contract_by_map
from .oracle import DEFAULT_LIMIT, enumerate_min_cuts_bruteforce


def sparsifier_nodes(kc: Cactus) -> np.ndarray:
    """Cactus node of each sparsifier vertex (the non-empty nodes, in order)."""
    return np.flatnonzero(kc.node_sizes() > 0)


def sparsify(G: MultiGraph, kc: Cactus) -> tuple[MultiGraph, np.ndarray]:
    """Contract ``phi^-1(v)`` for every non-empty node ``v`` of the compact cactus.

    Empty cactus nodes have no preimage to contract, so ``H`` has one vertex
    per non-empty node.  Edge ids of ``G`` are kept.  Returns ``H`` and the map
    from vertices of ``G`` to vertices of ``H``.
    """
    if len(kc.phi) != G.n:
        raise ValueError("cactus does not map the vertices of G")
    nodes = sparsifier_nodes(kc)
    index = np.full(kc.n_nodes, -1, dtype=np.int64)
    index[nodes] = np.arange(len(nodes))
    vertex_map = index[kc.phi]
    return contract_by_map(G, vertex_map), vertex_map


@dataclass
class SparsifierReport:
    ok: bool = True
    vertices: int = 0
    edges: int = 0
    edge_bound: int = 0
    errors: list = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.errors.append(msg)


def verify_sparsifier(
    G: MultiGraph,
    H: MultiGraph,
    vertex_map,
    lam: int | None = None,
    cuts=None,
    cactus_nodes: int | None = None,
    limit: int = DEFAULT_LIMIT,
) -> SparsifierReport:
    """Check that every non-trivial min-cut of ``G`` survives in ``H`` at size ``lam``.

    ``cuts`` defaults to the oracle's min-cuts.  The edge bound is
    ``lam * (cactus_nodes - 1)`` (``cactus_nodes`` defaults to ``|V(H)|``).
    """
    vertex_map = np.asarray(vertex_map, dtype=np.int64)
    if cuts is None:
        cuts = enumerate_min_cuts_bruteforce(G, limit)
    if lam is None:
        lam = cuts[0].size if cuts else edge_connectivity(G)
    k = cactus_nodes if cactus_nodes is not None else H.n
    report = SparsifierReport(vertices=H.n, edges=H.m, edge_bound=lam * (k - 1))
    if H.m > report.edge_bound:
        report.fail(f"|E(H)|={H.m} exceeds {report.edge_bound}")
    for c in cuts:
        if isinstance(c, Cut) and c.is_trivial:
            continue
        side = np.zeros(G.n, dtype=bool)
        side[list(c.side if isinstance(c, Cut) else c)] = True
        inside = np.unique(vertex_map[side])
        outside = np.unique(vertex_map[~side])
        if np.intersect1d(inside, outside).size:
            report.fail(f"cut {sorted(c.side)} splits a contracted block")
            continue
        size = H.cut_size(inside.tolist())
        if size != lam:
            report.fail(f"cut {sorted(c.side)} has size {size} in H")
    return report
