import numpy as np
import pytest

from emptyspot import Graph
from emptyspot.baskets import Dataset


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def dataset(*baskets, n=None):
    if n is None:
        n = max((max(b) for b in baskets if b), default=0) + 1
    return Dataset(tuple(frozenset(b) for b in baskets), n)


def random_dataset(rng, max_nodes=10, max_baskets=10):
    n = int(rng.integers(2, max_nodes + 1))
    nb = int(rng.integers(1, max_baskets + 1))
    baskets = []
    for _ in range(nb):
        size = int(rng.integers(0, n + 1))
        baskets.append(frozenset(rng.choice(n, size=size, replace=False).tolist()))
    if not any(baskets):
        baskets[0] = frozenset({0})
    return Dataset(tuple(baskets), n)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def star5():
    return star_graph(4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        name, passed, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number} [{'PASS' if passed else 'FAIL'}] {name}: {detail}")
