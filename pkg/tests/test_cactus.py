from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactuscut.cactus import (
    Cactus,
    CactusTree,
    InconsistentCutsError,
    build_cactus,
    cactus_of,
    cycle_edge_distribution_errors,
    format_cactus,
    min_cuts_of_cactus,
    parse_cactus,
    represented_cuts,
    side_of_cycle,
    structure_errors,
    validate_cactus,
)
from cactuscut.generators import clique, cycle_graph, random_clustered, random_connected, tightness_graph
from cactuscut.graph import Cut, MultiGraph
from cactuscut.oracle import enumerate_min_cuts_bruteforce, enumerate_min_cuts_maxflow

FOUR_CYCLE = Cactus(4, ((0, 1, 2, 3),), [0, 1, 2, 3])
CHAIN = Cactus(3, ((0, 1), (1, 2)), [0, 1, 2])


def test_side_of_cycle_examples():
    for v in range(4):
        assert side_of_cycle(FOUR_CYCLE, 0, v) == {v}
    assert side_of_cycle(CHAIN, 0, 0) == {0}
    assert side_of_cycle(CHAIN, 0, 1) == {1, 2}
    assert side_of_cycle(CHAIN, 1, 1) == {0, 1}
    with pytest.raises(ValueError):
        side_of_cycle(CHAIN, 0, 2)


def test_min_cuts_of_cactus_counts():
    assert len(min_cuts_of_cactus(FOUR_CYCLE)) == 6
    assert len(min_cuts_of_cactus(Cactus(2, ((0, 1),), [0, 1]))) == 1
    assert len(min_cuts_of_cactus(CHAIN)) == 2
    sides = sorted(sorted(c.nodes) for c in min_cuts_of_cactus(FOUR_CYCLE))
    assert sides == [[1], [1, 2], [1, 2, 3], [2], [2, 3], [3]]


def test_build_cactus_c4():
    G = cycle_graph(4)
    cuts = enumerate_min_cuts_bruteforce(G)
    kc = build_cactus(G, cuts)
    assert kc.n_nodes == 4 and [len(c) for c in kc.cycles] == [4]
    assert sorted(kc.phi.tolist()) == [0, 1, 2, 3]
    assert validate_cactus(G, kc, cuts, oracle=cuts).ok


def test_build_cactus_k4_is_star_of_two_cycles():
    G = clique(4)
    cuts = enumerate_min_cuts_bruteforce(G)
    kc = build_cactus(G, cuts)
    sizes = kc.node_sizes()
    degs = kc.junction_degrees()
    assert kc.n_nodes == 5 and sorted(len(c) for c in kc.cycles) == [2, 2, 2, 2]
    center = int(np.flatnonzero(sizes == 0)[0])
    assert degs[center] == 4
    assert all(sizes[x] == 1 and degs[x] == 1 for x in range(5) if x != center)
    assert len(represented_cuts(kc)) == 4
    assert validate_cactus(G, kc, cuts, oracle=cuts).ok


def test_build_cactus_tightness():
    G = tightness_graph(27, 8, 4)
    cuts = enumerate_min_cuts_maxflow(G)
    kc = build_cactus(G, cuts)
    assert kc.n_nodes == 3 and kc.cycles and len(kc.cycles[0]) == 3 and len(kc.cycles) == 1
    assert sorted(kc.node_sizes().tolist()) == [9, 9, 9]
    assert validate_cactus(G, kc, cuts, oracle=cuts).ok


def test_cactus_of_matches_build_cactus():
    for G in (cycle_graph(5), clique(5), tightness_graph(36, 8, 4)):
        kc, lam = cactus_of(G)
        cuts = enumerate_min_cuts_maxflow(G)
        assert lam == cuts[0].size
        assert sorted(represented_cuts(kc), key=sorted) == sorted((c.side for c in cuts), key=sorted)


def test_build_cactus_rejects_inconsistent_families():
    G = cycle_graph(4)
    with pytest.raises(InconsistentCutsError):
        build_cactus(G, [Cut(frozenset({1}), 2, 4), Cut(frozenset({1, 2}), 3, 4)])
    # {1,2} and {2,3} cross but {2} and {1,2,3} are missing from the circular family
    with pytest.raises(InconsistentCutsError):
        build_cactus(G, [frozenset({1, 2}), frozenset({2, 3})])


def test_validate_detects_broken_cactus():
    G = cycle_graph(4)
    cuts = enumerate_min_cuts_bruteforce(G)
    broken = Cactus(4, ((0, 1, 2, 3),), [0, 1, 2, 3], graph=MultiGraph(4, [0, 1, 2], [1, 2, 3]))
    report = validate_cactus(G, broken, cuts)
    assert not report.ok and report.errors


def test_validate_detects_missing_and_extra():
    G = cycle_graph(4)
    cuts = enumerate_min_cuts_bruteforce(G)
    # a 2-cycle only represents one of the six cuts
    small = Cactus(2, ((0, 1),), [0, 0, 1, 1])
    report = validate_cactus(G, small, cuts)
    assert not report.ok and len(report.missing) == 5 and not report.extra
    # a mislabelled map yields non-minimum cuts
    wrong = Cactus(4, ((0, 1, 2, 3),), [0, 2, 1, 3])
    report = validate_cactus(G, wrong, cuts)
    assert not report.ok and report.extra


def test_validate_empty_target_still_checks_clause_two():
    G = clique(4)
    kc, lam = cactus_of(G)
    assert validate_cactus(G, kc, [], lam).ok
    bad = Cactus(2, ((0, 1),), [0, 0, 1, 1])
    assert not validate_cactus(G, bad, [], lam).ok


def test_structure_errors():
    assert structure_errors(FOUR_CYCLE, 4) == []
    assert structure_errors(FOUR_CYCLE, 5)
    # two cycles sharing two nodes are not blocks of a cactus
    assert structure_errors(Cactus(3, ((0, 1, 2), (0, 1)), [0, 1, 2]))


def test_from_multigraph_recovers_cycles():
    K = MultiGraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2), (3, 4), (4, 3)])
    kc = Cactus.from_multigraph(K, [0, 1, 2, 3, 4])
    assert sorted(len(c) for c in kc.cycles) == [2, 2, 3]
    with pytest.raises(ValueError):
        Cactus.from_multigraph(MultiGraph.from_edges(3, [(0, 1), (1, 2)]), [0, 1, 2])
    with pytest.raises(ValueError):
        Cactus.from_multigraph(MultiGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), [0, 1, 2, 3])


def test_format_roundtrip():
    kc, _ = cactus_of(clique(4))
    back = parse_cactus(format_cactus(kc))
    assert back.cycles == kc.cycles and back.phi.tolist() == kc.phi.tolist()
    assert parse_cactus(format_cactus(kc) + "vertices_Kprime=5 pass=true\n").n_nodes == 5
    with pytest.raises(ValueError):
        parse_cactus("cactus 2 1\ny 3 0 1\nmap 0 0\n")
    with pytest.raises(ValueError):
        parse_cactus("cactus 2 2\ny 2 0 1\nmap 0 0\n")


def test_vertex_classification():
    kc, _ = cactus_of(clique(4))
    center = int(np.flatnonzero(kc.node_sizes() == 0)[0])
    cls = kc.classify(center)
    assert cls.is_empty and not cls.is_singleton and cls.junction_degree == 4


def _graphs():
    return st.one_of(
        st.builds(random_connected, st.integers(3, 11), st.floats(0.15, 0.9), st.integers(0, 10**6)),
        st.builds(random_clustered, st.integers(2, 4), st.integers(2, 4), st.floats(0.6, 1.0), st.integers(1, 3), st.integers(0, 10**6)),
    )


@settings(max_examples=80, deadline=None)
@given(_graphs())
def test_cactus_of_random_graphs(G):
    cuts = enumerate_min_cuts_bruteforce(G)
    kc, lam = cactus_of(G)
    assert validate_cactus(G, kc, cuts, lam, oracle=cuts).ok
    # every cut represented exactly once, and the count is the sum over cycles
    reps = represented_cuts(kc)
    assert len(reps) == len(cuts) == sum(comb(len(c), 2) for c in kc.cycles)
    assert cycle_edge_distribution_errors(G, kc, lam) == []
    tree = CactusTree(kc)
    for ci, cyc in enumerate(kc.cycles):
        for v in cyc:
            assert kc.preimage(tree.side(ci, v))
