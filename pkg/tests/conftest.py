import numpy as np
import pytest
from hypothesis import strategies as st

from graphricci.corpus import corpus
from graphricci.graph import Graph


@pytest.fixture(scope="session")
def corpus_graphs():
    return corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus_graphs):
    return [(name, g) for name, g in corpus_graphs if g.n <= 12]


@st.composite
def connected_graphs(draw, max_n=8, weighted=True):
    """Random spanning tree plus extra edges, weights in [0.2, 5]."""
    n = draw(st.integers(2, max_n))
    pairs = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        pairs.add((u, v))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    for a, b in extra:
        if a != b:
            pairs.add((min(a, b), max(a, b)))
    weight = st.floats(0.2, 5.0) if weighted else st.just(1.0)
    edges = [(a, b, draw(weight)) for a, b in sorted(pairs)]
    return Graph.from_edges(edges, [str(i) for i in range(n)])


def vertex_functions(n):
    return st.lists(st.floats(-10, 10), min_size=n, max_size=n).map(np.array)


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
