from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactuscut._lattice import iter_closed_sets, strongly_connected


def _closed_by_scan(n, arcs, s, t):
    out = set()
    free = [x for x in range(n) if x not in (s, t)]
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            X = {s, *extra}
            if all(y in X for x, y in arcs if x in X):
                out.add(frozenset(X))
    return out


def _lists(n, arcs):
    succ = [sorted({y for x, y in arcs if x == v}) for v in range(n)]
    pred = [sorted({x for x, y in arcs if y == v}) for v in range(n)]
    return succ, pred


def test_chain():
    # t=0 -> a=1 -> s=2
    succ, pred = _lists(3, [(0, 1), (1, 2)])
    got = [frozenset(i for i, b in enumerate(x) if b) for x in iter_closed_sets(succ, pred, [2], [0])]
    assert got == [{2}, {1, 2}]


def test_hooks_see_every_change():
    succ, pred = _lists(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    live = set()
    seen = []
    for inside in iter_closed_sets(succ, pred, [3], [0], live.add, live.discard):
        assert live == {i for i, b in enumerate(inside) if b}
        seen.append(frozenset(live))
    assert sorted(map(sorted, seen)) == [[1, 2, 3], [1, 3], [2, 3], [3]]


def test_start_must_be_closed():
    succ, pred = _lists(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        list(iter_closed_sets(succ, pred, [1], [0]))
    with pytest.raises(ValueError):
        list(iter_closed_sets(succ, pred, [2], [2]))


@st.composite
def dags(draw):
    n = draw(st.integers(2, 9))
    arcs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20))
    arcs = sorted({(min(a, b), max(a, b)) for a, b in arcs if a != b})
    return n, arcs


@settings(max_examples=120, deadline=None)
@given(dags())
def test_closed_sets_match_scan(dag):
    n, arcs = dag
    s, t = n - 1, 0
    succ, pred = _lists(n, arcs)
    # the sink must be closed for the enumeration to start
    if succ[s]:
        return
    got = [frozenset(i for i, b in enumerate(x) if b) for x in iter_closed_sets(succ, pred, [s], [t])]
    assert len(got) == len(set(got))
    assert set(got) == _closed_by_scan(n, arcs, s, t)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 10), st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=30))
def test_scc_matches_networkx(n, arcs):
    arcs = [(a % n, b % n) for a, b in arcs]
    succ = [[y for x, y in arcs if x == v] for v in range(n)]
    comp = strongly_connected(n, succ)
    D = nx.DiGraph()
    D.add_nodes_from(range(n))
    D.add_edges_from(arcs)
    want = {frozenset(c) for c in nx.strongly_connected_components(D)}
    got = {}
    for v, c in enumerate(comp):
        got.setdefault(c, set()).add(v)
    assert {frozenset(c) for c in got.values()} == want
    # ids follow a reverse topological order of the condensation
    for x, y in arcs:
        assert comp[x] >= comp[y]
