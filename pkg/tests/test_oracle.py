import pytest

from cactuscut.generators import clique, cycle_graph, disjoint_cliques, random_connected, tightness_graph
from cactuscut.graph import DisconnectedGraphError
from cactuscut.oracle import (
    OracleLimitError,
    count_min_cuts,
    enumerate_min_cuts_bruteforce,
    enumerate_min_cuts_maxflow,
)


def test_cycle_cuts():
    cuts = enumerate_min_cuts_bruteforce(cycle_graph(4))
    assert [sorted(c.side) for c in cuts] == [[1], [1, 2], [1, 2, 3], [2], [2, 3], [3]]
    assert {c.size for c in cuts} == {2}


def test_k4_cuts_are_trivial():
    cuts = enumerate_min_cuts_bruteforce(clique(4))
    assert len(cuts) == 4 and all(c.is_trivial for c in cuts)


def test_tightness_fixture():
    cuts = enumerate_min_cuts_maxflow(tightness_graph(27, 8, 4))
    assert sorted(sorted(c.side) for c in cuts) == [
        list(range(9, 18)),
        list(range(9, 27)),
        list(range(18, 27)),
    ]


def test_counts():
    assert count_min_cuts(cycle_graph(4)) == (6, 4, 2)
    assert count_min_cuts(clique(4)) == (4, 4, 0)
    with pytest.raises(DisconnectedGraphError):
        count_min_cuts(disjoint_cliques(12, 3))


def test_limit():
    with pytest.raises(OracleLimitError):
        enumerate_min_cuts_bruteforce(cycle_graph(25))
    assert len(enumerate_min_cuts_bruteforce(cycle_graph(12), limit=12)) == 66
    with pytest.raises(OracleLimitError):
        enumerate_min_cuts_maxflow(cycle_graph(70))


def test_chunked_scan_matches_across_chunk_boundary(monkeypatch):
    import cactuscut.oracle as oracle

    G = random_connected(11, 0.45, seed=4)
    whole = enumerate_min_cuts_bruteforce(G)
    monkeypatch.setattr(oracle, "_CHUNK", 7)
    assert enumerate_min_cuts_bruteforce(G) == whole


def test_two_oracles_agree():
    for seed in range(30):
        G = random_connected(9, 0.3 + 0.02 * seed, seed)
        brute = enumerate_min_cuts_bruteforce(G)
        flow = enumerate_min_cuts_maxflow(G)
        assert brute == flow
        # no duplicates, every cut has exactly lambda crossing edges
        assert len({c.side for c in brute}) == len(brute)
        assert all(len(G.crossing_edges(c.side)) == c.size for c in brute)
