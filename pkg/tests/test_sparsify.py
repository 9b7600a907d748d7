import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactuscut.cactus import cactus_of
from cactuscut.compact import compact_cactus
from cactuscut.generators import clique, cycle_graph, random_clustered, random_connected, tightness_graph
from cactuscut.oracle import enumerate_min_cuts_bruteforce, enumerate_min_cuts_maxflow
from cactuscut.sparsify import sparsifier_nodes, sparsify, verify_sparsifier


def _compact(G):
    kc, lam = cactus_of(G)
    return compact_cactus(kc, G), lam


def test_tightness_sparsifier():
    G = tightness_graph(27, 8, 4)
    kp, lam = _compact(G)
    H, vmap = sparsify(G, kp)
    assert H.n == 3 and H.m == 6
    assert sorted(np.bincount(vmap).tolist()) == [9, 9, 9]
    report = verify_sparsifier(G, H, vmap, lam, enumerate_min_cuts_maxflow(G), kp.n_nodes)
    assert report.ok and report.edge_bound == 8


def test_k4_sparsifier_is_a_point():
    G = clique(4)
    kp, lam = _compact(G)
    H, vmap = sparsify(G, kp)
    assert H.n == 1 and H.m == 0 and vmap.tolist() == [0, 0, 0, 0]
    assert verify_sparsifier(G, H, vmap, lam).ok


def test_cycle_sparsifier_is_the_cycle():
    G = cycle_graph(4)
    kp, lam = _compact(G)
    H, vmap = sparsify(G, kp)
    assert H.n == 4 and H.m == 4
    assert sorted(H.ids.tolist()) == sorted(G.ids.tolist())
    assert verify_sparsifier(G, H, vmap, lam).ok


def test_bad_map_is_rejected():
    from cactuscut.graph import contract_by_map

    G = cycle_graph(6)
    vmap = np.array([0, 0, 1, 1, 0, 0])  # merges both sides of several min-cuts
    H = contract_by_map(G, vmap)
    report = verify_sparsifier(G, H, vmap, 2)
    assert not report.ok and report.errors


def test_map_length_checked():
    kp, _ = _compact(cycle_graph(4))
    with pytest.raises(ValueError):
        sparsify(cycle_graph(5), kp)


def test_empty_nodes_get_no_vertex():
    G = random_clustered(4, 4, 1.0, 1, seed=0)
    kp, _ = _compact(G)
    nodes = sparsifier_nodes(kp)
    H, _ = sparsify(G, kp)
    assert H.n == len(nodes) == int((kp.node_sizes() > 0).sum())


@settings(max_examples=80, deadline=None)
@given(
    st.one_of(
        st.builds(random_connected, st.integers(4, 11), st.floats(0.2, 0.9), st.integers(0, 10**6)),
        st.builds(random_clustered, st.integers(2, 4), st.integers(3, 4), st.floats(0.7, 1.0), st.integers(1, 3), st.integers(0, 10**6)),
    )
)
def test_sparsifier_random(G):
    cuts = enumerate_min_cuts_bruteforce(G)
    kp, lam = _compact(G)
    H, vmap = sparsify(G, kp)
    report = verify_sparsifier(G, H, vmap, lam, cuts, kp.n_nodes)
    assert report.ok, report.errors
    assert H.m <= lam * (kp.n_nodes - 1)
