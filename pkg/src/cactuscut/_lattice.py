"""Closed sets of finite digraphs and strongly connected components."""
from __future__ import annotations

from typing import Callable, Iterator, Sequence


def iter_closed_sets(
    succ: Sequence[Sequence[int]],
    preds: Sequence[Sequence[int]],
    start: Sequence[int],
    excluded: Sequence[int] = (),
    on_add: Callable[[int], None] | None = None,
    on_remove: Callable[[int], None] | None = None,
) -> Iterator[list[bool]]:
    """Yield every vertex set containing ``start`` that is closed under ``succ``.

    ``succ`` and ``preds`` must hold distinct neighbours and describe an
    acyclic graph.  Vertices in ``excluded`` (and hence everything that can
    reach them) never enter a set.  Consecutive sets differ by one vertex
    along the search tree; ``on_add``/``on_remove`` see every change, and the
    yielded list is the live membership array.  Each closed set is produced
    exactly once.
    """
    n = len(succ)
    inside = [False] * n
    pending = [len(s) for s in succ]
    banned = [False] * n
    for x in excluded:
        banned[x] = True

    def add(v):
        inside[v] = True
        for w in preds[v]:
            pending[w] -= 1
        if on_add is not None:
            on_add(v)

    def remove(v):
        inside[v] = False
        for w in preds[v]:
            pending[w] += 1
        if on_remove is not None:
            on_remove(v)

    start = list(start)
    for v in start:
        if banned[v]:
            raise ValueError("start set meets the excluded set")
        add(v)
    for v in start:
        if pending[v]:
            raise ValueError("start set is not closed")
    cand = [w for w in range(n) if not inside[w] and not banned[w] and pending[w] == 0]
    yield inside
    # frame: [candidates, next position, vertex added on entry, vertices banned here]
    stack = [[cand, 0, None, []]]
    while stack:
        frame = stack[-1]
        cand, pos = frame[0], frame[1]
        if pos < len(cand):
            if pos:
                prev = cand[pos - 1]
                banned[prev] = True
                frame[3].append(prev)
            v = cand[pos]
            frame[1] = pos + 1
            add(v)
            fresh = [w for w in preds[v] if pending[w] == 0 and not inside[w] and not banned[w]]
            yield inside
            stack.append([cand[pos + 1:] + fresh, 0, v, []])
        else:
            for b in frame[3]:
                banned[b] = False
            stack.pop()
            if frame[2] is not None:
                remove(frame[2])


def strongly_connected(n: int, succ: Sequence[Sequence[int]]) -> list[int]:
    """Component id per vertex (iterative Tarjan); sinks get the smallest ids."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            nbrs = succ[v]
            recurse = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comp
