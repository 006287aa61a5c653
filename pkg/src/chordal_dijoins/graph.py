"""Weighted digraphs and the structural reductions the packing algorithm needs.

Arcs carry an opaque, stable id. Every transformation here (reversal, vertex
deletion, reweighting) keeps arc ids, so a dijoin computed on a reduced graph
can be read back on the graph it came from.
"""

from __future__ import annotations

import heapq
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple

from .errors import InvalidInputError

Node = Hashable
ArcId = Hashable


def node_key(x: Any) -> tuple[str, Any]:
    """Sort key that orders ids of mixed types deterministically."""
    return (type(x).__name__, x)


class Arc(NamedTuple):
    tail: Node
    head: Node
    weight: int
    id: ArcId


@dataclass(frozen=True)
class WeightedDigraph:
    """A digraph with nonnegative integer arc weights.

    Parallel and antiparallel arcs are allowed; self-loops are not.
    """

    nodes: tuple[Node, ...]
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise InvalidInputError("duplicate node ids")
        ids = set()
        for a in self.arcs:
            if a.tail not in node_set or a.head not in node_set:
                raise InvalidInputError(f"arc {a.id!r} references an unknown node")
            if a.tail == a.head:
                raise InvalidInputError(f"arc {a.id!r} is a self-loop")
            if isinstance(a.weight, bool) or not isinstance(a.weight, int) or a.weight < 0:
                raise InvalidInputError(f"arc {a.id!r} has invalid weight {a.weight!r}")
            if a.id in ids:
                raise InvalidInputError(f"duplicate arc id {a.id!r}")
            ids.add(a.id)

    @classmethod
    def from_arcs(
        cls,
        arcs: Iterable[tuple[Node, Node, int] | tuple[Node, Node, int, ArcId]],
        nodes: Iterable[Node] | None = None,
    ) -> WeightedDigraph:
        """Build a digraph from ``(tail, head, weight[, id])`` tuples.

        Arc ids default to the arc's position in the input. When ``nodes`` is
        omitted the node set is every arc endpoint, in order of appearance.
        """
        built = []
        for pos, item in enumerate(arcs):
            if len(item) == 3:
                tail, head, weight = item
                arc_id: ArcId = pos
            else:
                tail, head, weight, arc_id = item
            built.append(Arc(tail, head, weight, arc_id))
        if nodes is None:
            seen: dict[Node, None] = {}
            for a in built:
                seen.setdefault(a.tail)
                seen.setdefault(a.head)
            nodes = seen
        return cls(tuple(nodes), tuple(built))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_by_id(self) -> dict[ArcId, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def out_arcs(self) -> dict[Node, list[Arc]]:
        out: dict[Node, list[Arc]] = {v: [] for v in self.nodes}
        for a in self.arcs:
            out[a.tail].append(a)
        return out

    @cached_property
    def in_arcs(self) -> dict[Node, list[Arc]]:
        inc: dict[Node, list[Arc]] = {v: [] for v in self.nodes}
        for a in self.arcs:
            inc[a.head].append(a)
        return inc

    def weight(self, arc_id: ArcId) -> int:
        return self.arc_by_id[arc_id].weight

    def total_weight(self) -> int:
        return sum(a.weight for a in self.arcs)

    def with_weights(self, weights: Mapping[ArcId, int]) -> WeightedDigraph:
        """Copy with the weights of the listed arcs replaced."""
        arcs = tuple(
            a._replace(weight=weights[a.id]) if a.id in weights else a for a in self.arcs
        )
        return WeightedDigraph(self.nodes, arcs)


@dataclass(frozen=True)
class CondensationResult:
    """Quotient of a digraph by its strongly connected components.

    ``arc_map`` sends each condensed arc id to the original arcs it merges,
    as ``(original id, weight)`` pairs in input order.
    """

    condensed: WeightedDigraph
    node_map: dict[Node, Node]
    arc_map: dict[ArcId, tuple[tuple[ArcId, int], ...]] = field(default_factory=dict)

    def members(self) -> dict[Node, list[Node]]:
        """SCC id -> original nodes it contains."""
        groups: dict[Node, list[Node]] = {c: [] for c in self.condensed.nodes}
        for v, c in self.node_map.items():
            groups[c].append(v)
        return groups


def strongly_connected_components(g: WeightedDigraph) -> list[list[Node]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    index: dict[Node, int] = {}
    low: dict[Node, int] = {}
    on_stack: set[Node] = set()
    stack: list[Node] = []
    components: list[list[Node]] = []
    succ = {v: [a.head for a in arcs] for v, arcs in g.out_arcs.items()}

    for root in g.nodes:
        if root in index:
            continue
        index[root] = low[root] = len(index)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = len(index)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    components.append(comp)
    return components


def is_acyclic(g: WeightedDigraph) -> bool:
    return len(strongly_connected_components(g)) == g.n


def topological_order(g: WeightedDigraph) -> list[Node]:
    """Kahn's algorithm with smallest-id tie-breaks. Raises on a directed cycle."""
    indeg = {v: len(g.in_arcs[v]) for v in g.nodes}
    heap = [(node_key(v), v) for v in g.nodes if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, v = heapq.heappop(heap)
        order.append(v)
        for a in g.out_arcs[v]:
            indeg[a.head] -= 1
            if indeg[a.head] == 0:
                heapq.heappush(heap, (node_key(a.head), a.head))
    if len(order) != g.n:
        raise InvalidInputError("digraph has a directed cycle")
    return order


def condense(g: WeightedDigraph) -> CondensationResult:
    """Contract every strongly connected component to a single node.

    Arcs inside a component are dropped. Parallel arcs between two components
    are merged into one arc whose weight is their sum; the merged arc takes the
    id of its first original arc. A component is named by its smallest node.
    """
    node_map: dict[Node, Node] = {}
    for comp in strongly_connected_components(g):
        name = min(comp, key=node_key)
        for v in comp:
            node_map[v] = name
    cnodes = tuple(v for v in g.nodes if node_map[v] == v)

    groups: dict[tuple[Node, Node], list[Arc]] = {}
    for a in g.arcs:
        ct, ch = node_map[a.tail], node_map[a.head]
        if ct != ch:
            groups.setdefault((ct, ch), []).append(a)
    carcs = []
    arc_map = {}
    for (ct, ch), members in groups.items():
        cid = members[0].id
        carcs.append(Arc(ct, ch, sum(a.weight for a in members), cid))
        arc_map[cid] = tuple((a.id, a.weight) for a in members)
    return CondensationResult(WeightedDigraph(cnodes, tuple(carcs)), node_map, arc_map)


def reverse(g: WeightedDigraph) -> WeightedDigraph:
    return WeightedDigraph(g.nodes, tuple(Arc(a.head, a.tail, a.weight, a.id) for a in g.arcs))


def delete_vertex(g: WeightedDigraph, v: Node) -> WeightedDigraph:
    if v not in g.out_arcs:
        raise InvalidInputError(f"unknown vertex {v!r}")
    return WeightedDigraph(
        tuple(x for x in g.nodes if x != v),
        tuple(a for a in g.arcs if a.tail != v and a.head != v),
    )


def underlying_adjacency(g: WeightedDigraph) -> dict[Node, set[Node]]:
    """Simple undirected graph underneath ``g`` as an adjacency map."""
    adj: dict[Node, set[Node]] = {v: set() for v in g.nodes}
    for a in g.arcs:
        adj[a.tail].add(a.head)
        adj[a.head].add(a.tail)
    return adj
