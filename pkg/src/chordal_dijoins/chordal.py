"""Chordal graph recognition via maximum cardinality search.

Undirected graphs are plain adjacency maps ``{node: set(neighbors)}``, the
shape returned by :func:`chordal_dijoins.graph.underlying_adjacency`.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping, Sequence, Set
from itertools import combinations

from .errors import ChordalityError, InvalidInputError
from .graph import Node, node_key

Adjacency = Mapping[Node, Set[Node]]


def maximum_cardinality_search(adj: Adjacency) -> list[Node]:
    """Return a candidate perfect elimination order (first = eliminated first).

    MCS visits vertices by decreasing count of already-visited neighbours;
    the reverse of the visit order is a perfect elimination order exactly when
    the graph is chordal. Ties go to the smallest node id.
    """
    rank = {v: i for i, v in enumerate(sorted(adj, key=node_key))}
    # buckets[c] holds unvisited vertices with c visited neighbours
    buckets: list[set[Node]] = [set(adj)]
    count = {v: 0 for v in adj}
    visited: set[Node] = set()
    visit: list[Node] = []
    top = 0
    for _ in range(len(adj)):
        while top > 0 and not buckets[top]:
            top -= 1
        v = min(buckets[top], key=rank.__getitem__)
        buckets[top].discard(v)
        visited.add(v)
        visit.append(v)
        for w in adj[v]:
            if w in visited:
                continue
            c = count[w]
            buckets[c].discard(w)
            count[w] = c + 1
            if c + 1 == len(buckets):
                buckets.append(set())
            buckets[c + 1].add(w)
            if c + 1 > top:
                top = c + 1
    visit.reverse()
    return visit


def _check_permutation(adj: Adjacency, order: Sequence[Node]) -> None:
    if len(order) != len(adj) or set(order) != set(adj):
        raise InvalidInputError("order is not a permutation of the graph's nodes")


def is_perfect_elimination_order(adj: Adjacency, order: Sequence[Node]) -> bool:
    """Exact check: every vertex's later neighbours must be pairwise adjacent."""
    _check_permutation(adj, order)
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        later = [w for w in adj[v] if pos[w] > i]
        for x, y in combinations(later, 2):
            if y not in adj[x]:
                return False
    return True


def is_chordal(adj: Adjacency) -> bool:
    return is_perfect_elimination_order(adj, maximum_cardinality_search(adj))


def is_simplicial(adj: Adjacency, v: Node) -> bool:
    return all(y in adj[x] for x, y in combinations(adj[v], 2))


def find_simplicial_vertex(adj: Adjacency) -> Node:
    """First vertex of the MCS order whose neighbourhood is a clique."""
    if not adj:
        raise InvalidInputError("graph is empty")
    for v in maximum_cardinality_search(adj):
        if is_simplicial(adj, v):
            return v
    raise ChordalityError("no simplicial vertex: graph is not chordal", find_chordless_cycle(adj))


def _shortest_path(adj: Adjacency, src: Node, dst: Node, blocked: Set[Node]) -> list[Node] | None:
    prev = {src: src}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            path = [x]
            while x != src:
                x = prev[x]
                path.append(x)
            path.reverse()
            return path
        for y in sorted(adj[x], key=node_key):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    return None


def find_chordless_cycle(adj: Adjacency, *, longest: bool = False) -> list[Node] | None:
    """Return a chordless cycle of length >= 4, or None if the graph is chordal.

    For each vertex ``v`` and non-adjacent pair ``x, y`` of its neighbours, a
    shortest ``x``-``y`` path avoiding ``v``'s other neighbours closes an induced
    cycle through ``v``. Every chordless cycle arises this way from any of its
    vertices, so the search is complete. With ``longest=True`` all candidates
    are examined and the longest one found is returned (not necessarily the
    longest induced cycle of the graph).
    """
    best: list[Node] | None = None
    for v in sorted(adj, key=node_key):
        nbrs = sorted(adj[v], key=node_key)
        for x, y in combinations(nbrs, 2):
            if y in adj[x]:
                continue
            blocked = (set(adj[v]) | {v}) - {x, y}
            path = _shortest_path(adj, x, y, blocked)
            if path is None:
                continue
            cycle = [v, *path]
            if not longest:
                return cycle
            if best is None or len(cycle) > len(best):
                best = cycle
    return best


def perfect_elimination_order(adj: Adjacency) -> list[Node]:
    """MCS order, validated. Raises ChordalityError carrying a chordless cycle."""
    order = maximum_cardinality_search(adj)
    if not is_perfect_elimination_order(adj, order):
        cycle = find_chordless_cycle(adj)
        raise ChordalityError(
            f"underlying graph is not chordal; chordless cycle of length {len(cycle)}: "
            + " - ".join(map(str, cycle)),
            cycle,
        )
    return order
