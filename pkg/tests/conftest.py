from __future__ import annotations

import pytest
from hypothesis import strategies as st

from chordal_dijoins import WeightedDigraph, random_chordal_digraph


def dg(*arcs, nodes=None):
    """Digraph from ``"ab"``-style names or ``(tail, head, weight)`` tuples."""
    items = [(a[0], a[1], 1) if isinstance(a, str) else a for a in arcs]
    return WeightedDigraph.from_arcs(items, nodes=nodes)


@pytest.fixture
def triangle():
    return dg("ab", "bc", "ac")


@pytest.fixture
def star():
    # v is a source; its neighbours x -> y form a clique
    return dg("vx", "vy", "xy")


@st.composite
def digraphs(draw, max_nodes=6, max_weight=3, acyclic=False):
    """Small digraphs, possibly cyclic, with parallel arcs allowed."""
    n = draw(st.integers(1, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j and (not acyclic or i < j)]
    if not pairs:
        return WeightedDigraph.from_arcs([], nodes=[str(i) for i in range(n)])
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=2 * n))
    weights = draw(st.lists(st.integers(0, max_weight), min_size=len(chosen), max_size=len(chosen)))
    arcs = [(str(i), str(j), w) for (i, j), w in zip(chosen, weights)]
    return WeightedDigraph.from_arcs(arcs, nodes=[str(i) for i in range(n)])


@st.composite
def chordal_instances(draw, max_nodes=8, max_weight=3):
    n = draw(st.integers(1, max_nodes))
    density = draw(st.sampled_from([0.0, 0.3, 0.6, 1.0]))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_chordal_digraph(n, density, draw(st.integers(0, max_weight)), seed)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.VERDICTS):
        terminalreporter.write_line(acceptance.VERDICTS[number])
