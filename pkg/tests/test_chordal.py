from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from conftest import chordal_instances

from chordal_dijoins import (
    ChordalityError,
    InvalidInputError,
    find_chordless_cycle,
    find_simplicial_vertex,
    is_chordal,
    is_perfect_elimination_order,
    maximum_cardinality_search,
    random_chordal_digraph,
    underlying_adjacency,
)
from chordal_dijoins.chordal import perfect_elimination_order


def undirected(*edges):
    adj = {}
    for x, y in edges:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    return adj


K3 = undirected("ab", "bc", "ac")
C4 = undirected("ab", "bc", "cd", "da")
PATH = undirected("ab", "bc")
DIAMOND = undirected("ab", "ac", "bc", "bd", "cd")  # K4 minus ad


def test_every_order_of_k3_is_perfect():
    assert all(is_perfect_elimination_order(K3, p) for p in permutations("abc"))
    assert is_perfect_elimination_order(K3, maximum_cardinality_search(K3))


def test_c4_has_no_perfect_order():
    assert not is_perfect_elimination_order(C4, maximum_cardinality_search(C4))
    assert not any(is_perfect_elimination_order(C4, p) for p in permutations("abcd"))


def test_perfect_order_examples():
    assert is_perfect_elimination_order(PATH, ["a", "c", "b"])
    assert is_perfect_elimination_order(DIAMOND, ["a", "d", "b", "c"])


def test_order_must_be_permutation():
    with pytest.raises(InvalidInputError):
        is_perfect_elimination_order(PATH, ["a", "b"])
    with pytest.raises(InvalidInputError):
        is_perfect_elimination_order(PATH, ["a", "a", "b"])


def test_generated_50_node_graph_is_chordal():
    adj = underlying_adjacency(random_chordal_digraph(50, 0.5, 3, seed=7))
    assert is_perfect_elimination_order(adj, maximum_cardinality_search(adj))


def test_simplicial_vertex_examples():
    assert find_simplicial_vertex({"a": set()}) == "a"
    assert find_simplicial_vertex(PATH) in {"a", "c"}
    assert find_simplicial_vertex(DIAMOND) in {"a", "d"}


def test_simplicial_vertex_errors():
    with pytest.raises(InvalidInputError):
        find_simplicial_vertex({})
    # no vertex of C4 has a clique neighbourhood
    with pytest.raises(ChordalityError):
        find_simplicial_vertex(C4)


def test_chordality_error_carries_cycle():
    with pytest.raises(ChordalityError) as info:
        perfect_elimination_order(C4)
    assert brute.is_induced_cycle(C4, info.value.cycle)


def test_longest_reports_long_cycle():
    # a hexagon with one pendant triangle; the only hole has length 6
    adj = undirected("ab", "bc", "cd", "de", "ef", "fa", "ag", "bg")
    cycle = find_chordless_cycle(adj, longest=True)
    assert len(cycle) == 6 and brute.is_induced_cycle(adj, cycle)


@settings(max_examples=60)
@given(chordal_instances(max_nodes=25))
def test_generator_output_is_chordal(g):
    adj = underlying_adjacency(g)
    assert is_chordal(adj)
    assert find_chordless_cycle(adj) is None


@settings(max_examples=60)
@given(chordal_instances(max_nodes=12))
def test_every_induced_subgraph_keeps_a_simplicial_vertex(g):
    adj = underlying_adjacency(g)
    while adj:
        v = find_simplicial_vertex(adj)
        assert all(y in adj[x] for x in adj[v] for y in adj[v] if x != y)
        for x in adj.pop(v):
            adj[x].discard(v)


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1), st.integers(4, 8), st.floats(0.2, 0.8))
def test_recognition_matches_brute_force(seed, n, p):
    adj = {v: set(nb) for v, nb in nx.gnp_random_graph(n, p, seed=seed).adj.items()}
    cycle = find_chordless_cycle(adj)
    assert is_chordal(adj) == (not brute.has_chordless_cycle(adj)) == (cycle is None)
    if cycle is not None:
        assert brute.is_induced_cycle(adj, cycle)
