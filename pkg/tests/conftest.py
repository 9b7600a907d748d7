from __future__ import annotations

import networkx as nx
import pytest

from cactuscut.graph import MultiGraph
from cactuscut.generators import random_connected

# criterion number -> (title, passed, detail); filled by test_acceptance
CRITERIA: dict[int, tuple[str, bool, str]] = {}

RANDOM_PS = (0.25, 0.35, 0.5, 0.65, 0.8)


def atlas_graphs(max_n: int = 7) -> list[MultiGraph]:
    """One representative per isomorphism class of connected graphs, 2 <= n <= max_n."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 2 <= n <= max_n and nx.is_connected(g):
            out.append(MultiGraph.from_edges(n, sorted(g.edges())))
    return out


def random_graphs(count: int = 500) -> list[MultiGraph]:
    return [random_connected(8 + s % 3, RANDOM_PS[s % len(RANDOM_PS)], seed=s) for s in range(count)]


@pytest.fixture(scope="session")
def corpus() -> list[MultiGraph]:
    return atlas_graphs() + random_graphs()


@pytest.fixture
def record():
    def _record(number: int, title: str, passed: bool, detail: str = "") -> None:
        CRITERIA[number] = (title, passed, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, passed, detail = CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number} [{status}] {title}: {detail}")
