"""Cactus representations of min-cuts, their compaction, sparsification and enumeration."""
from .cactus import Cactus, build_cactus, cactus_of, format_cactus, parse_cactus, validate_cactus
from .compact import audit_bounds, build_xylem, check_minimal, compact_cactus, prune_xylem
from .connectivity import edge_connectivity, ma_ordering, sparse_certificate
from .enumerate import CutDag, enumerate_all_min_cuts
from .generators import clique, cycle_graph, disjoint_cliques, random_connected, tightness_graph
from .graph import Cut, EdgeCut, MultiGraph, contract, format_graph, parse_graph
from .oracle import enumerate_min_cuts_bruteforce, enumerate_min_cuts_maxflow
from .sparsify import sparsify, verify_sparsifier

__version__ = "0.1.0"

__all__ = [
    "Cactus",
    "Cut",
    "CutDag",
    "EdgeCut",
    "MultiGraph",
    "audit_bounds",
    "build_cactus",
    "build_xylem",
    "cactus_of",
    "check_minimal",
    "clique",
    "compact_cactus",
    "contract",
    "cycle_graph",
    "disjoint_cliques",
    "edge_connectivity",
    "enumerate_all_min_cuts",
    "enumerate_min_cuts_bruteforce",
    "enumerate_min_cuts_maxflow",
    "format_cactus",
    "format_graph",
    "ma_ordering",
    "parse_cactus",
    "parse_graph",
    "prune_xylem",
    "random_connected",
    "sparse_certificate",
    "sparsify",
    "tightness_graph",
    "validate_cactus",
    "verify_sparsifier",
]
