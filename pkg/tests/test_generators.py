import pytest

from cactuscut.connectivity import edge_connectivity
from cactuscut.generators import (
    clique,
    cycle_graph,
    disjoint_cliques,
    random_clustered,
    random_connected,
    tightness_graph,
)
from cactuscut.oracle import count_min_cuts, enumerate_min_cuts_maxflow


@pytest.mark.parametrize("n,delta,lam,r", [(27, 8, 4, 3), (36, 8, 4, 4), (52, 12, 4, 4), (63, 20, 4, 3)])
def test_tightness_structure(n, delta, lam, r):
    G = tightness_graph(n, delta, lam)
    assert G.is_simple()
    assert G.min_degree() == delta
    assert edge_connectivity(G) == lam
    assert G.m == r * delta * (delta + 1) // 2 + r * lam // 2
    cuts = enumerate_min_cuts_maxflow(G)
    assert len(cuts) == r * (r - 1) // 2
    assert not any(c.is_trivial for c in cuts)


@pytest.mark.parametrize(
    "args",
    [(27, 8, 3), (27, 8, 0), (27, 8, 6), (18, 8, 4), (30, 8, 4), (27, 1, 2)],
)
def test_tightness_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        tightness_graph(*args)


def test_small_families():
    assert clique(4).m == 6
    assert count_min_cuts(cycle_graph(5)) == (10, 5, 5)
    with pytest.raises(ValueError):
        cycle_graph(2)
    G = disjoint_cliques(12, 3)
    assert not G.is_connected() and G.min_degree() == 3 and G.m == 18


def test_random_connected_is_seeded():
    a = random_connected(10, 0.5, seed=7)
    assert a.is_connected() and a.is_simple()
    assert a == random_connected(10, 0.5, seed=7)
    assert random_connected(10, 0.5, seed=8) != a
    assert random_connected(6, 0.0, seed=1).m == 5


def test_random_clustered():
    G = random_clustered(4, 5, 0.9, 2, seed=3)
    assert G.n == 20 and G.is_connected() and G.is_simple()
    assert G == random_clustered(4, 5, 0.9, 2, seed=3)
