"""Instance sources: random chordal digraphs and the non-chordal counterexamples."""

from __future__ import annotations

import json
import random
from importlib import resources

from .errors import InvalidInputError
from .graph import WeightedDigraph


def random_chordal_digraph(
    n: int,
    density: float,
    max_weight: int,
    seed: int,
    *,
    unweighted: bool = False,
) -> WeightedDigraph:
    """Random acyclic digraph whose underlying graph is chordal.

    Vertices arrive one at a time and attach to a clique of the current graph,
    so each newcomer is simplicial when it arrives. The clique grows from a
    random existing vertex ``x``: each neighbour of ``x`` adjacent to all
    members so far joins with probability ``density``. Edges are oriented along
    a random permutation, which keeps the digraph acyclic. Weights are uniform
    on ``[0, max_weight]``, or all 1 when ``unweighted``.

    Node ids are the strings ``"0"`` .. ``str(n - 1)``.
    """
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    if max_weight < 0:
        raise InvalidInputError("max_weight must be nonnegative")
    if not 0 <= density <= 1:
        raise InvalidInputError("density must lie in [0, 1]")
    rng = random.Random(seed)
    adj: list[set[int]] = [set()]
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        x = rng.randrange(v)
        clique = [x]
        candidates = sorted(adj[x])
        rng.shuffle(candidates)
        for y in candidates:
            if all(y in adj[c] for c in clique) and rng.random() < density:
                clique.append(y)
        adj.append(set(clique))
        for c in clique:
            adj[c].add(v)
            edges.append((c, v))
    rank = list(range(n))
    rng.shuffle(rank)
    arcs = []
    for a, b in edges:
        if rank[a] > rank[b]:
            a, b = b, a
        w = 1 if unweighted else rng.randint(0, max_weight)
        arcs.append((str(a), str(b), w))
    return WeightedDigraph.from_arcs(arcs, nodes=[str(i) for i in range(n)])


FIXTURES = ("schrijver",)


def fixture_metadata(name: str) -> dict:
    """The JSON document for a fixture, including its ``expected`` block."""
    if name not in FIXTURES:
        raise InvalidInputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    text = resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text()
    return json.loads(text)


def load_fixture(name: str) -> WeightedDigraph:
    from .io import graph_from_dict

    return graph_from_dict(fixture_metadata(name))
