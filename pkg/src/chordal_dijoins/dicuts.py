"""Dicuts, minimum dicut weight, and dijoin certification.

A dicut is the set of arcs leaving a nonempty proper node set ``U`` (its
shore) that no arc enters. In an acyclic digraph the shores are exactly the
nonempty proper predecessor-closed node sets, so dicuts are enumerated as the
ideals of the reachability order. On a digraph with directed cycles this is
done on the condensation and the shores are expanded back.
"""

from __future__ import annotations

import enum
from collections.abc import Collection, Iterable, Iterator
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import InvalidInputError, ResourceLimitError
from .graph import ArcId, Node, WeightedDigraph, condense, topological_order

ENUMERATION_BOUND = 24

_INT32_MAX = 2**31 - 1


@dataclass(frozen=True)
class Dicut:
    shore: frozenset[Node]
    arcs: frozenset[ArcId]
    weight: int


class NotDicut(enum.Enum):
    EMPTY = "shore is empty"
    FULL = "shore is the whole node set"
    ENTERING = "an arc enters the shore"


def dicut_violation(g: WeightedDigraph, shore: Collection[Node]) -> NotDicut | None:
    """Why ``shore`` does not define a dicut, or None if it does."""
    U = frozenset(shore)
    if not U <= set(g.nodes):
        raise InvalidInputError("shore contains unknown nodes")
    if not U:
        return NotDicut.EMPTY
    if len(U) == g.n:
        return NotDicut.FULL
    if any(a.head in U and a.tail not in U for a in g.arcs):
        return NotDicut.ENTERING
    return None


def is_dicut(g: WeightedDigraph, shore: Collection[Node]) -> Dicut | None:
    if dicut_violation(g, shore) is not None:
        return None
    return _make_dicut(g, frozenset(shore))


def _make_dicut(g: WeightedDigraph, U: frozenset[Node]) -> Dicut:
    leaving = [a for a in g.arcs if a.tail in U and a.head not in U]
    return Dicut(U, frozenset(a.id for a in leaving), sum(a.weight for a in leaving))


def _iter_ideals(dag: WeightedDigraph) -> Iterator[tuple[int, int]]:
    """Yield ``(mask, weight)`` for every nonempty proper ideal of ``dag``.

    Bit ``i`` of ``mask`` refers to ``topological_order(dag)[i]``. Nodes are
    decided in topological order, so a node may join only once all of its
    predecessors have; adding it changes the leaving weight by its out-weight
    minus its in-weight.
    """
    order = topological_order(dag)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    pred = [0] * n
    delta = [0] * n
    for a in dag.arcs:
        t, h = pos[a.tail], pos[a.head]
        pred[h] |= 1 << t
        delta[t] += a.weight
        delta[h] -= a.weight
    full = (1 << n) - 1
    stack = [(0, 0, 0)]
    while stack:
        i, mask, weight = stack.pop()
        if i == n:
            if mask and mask != full:
                yield mask, weight
            continue
        stack.append((i + 1, mask, weight))
        if pred[i] & mask == pred[i]:
            stack.append((i + 1, mask | (1 << i), weight + delta[i]))


def _check_bound(n: int, bound: int) -> None:
    if n > bound:
        raise ResourceLimitError(f"{n} nodes exceed the enumeration bound {bound}")


def _expand(members: dict[Node, list[Node]], order: list[Node], mask: int) -> frozenset[Node]:
    return frozenset(v for i, c in enumerate(order) if mask >> i & 1 for v in members[c])


def enumerate_dicuts(g: WeightedDigraph, bound: int = ENUMERATION_BOUND) -> list[Dicut]:
    """All dicuts of ``g``, one per shore.

    ``bound`` caps the number of strongly connected components; the count of
    dicuts can be exponential in it.
    """
    cond = condense(g)
    dag = cond.condensed
    _check_bound(dag.n, bound)
    order = topological_order(dag)
    members = cond.members()
    return [_make_dicut(g, _expand(members, order, mask)) for mask, _ in _iter_ideals(dag)]


def min_dicut(g: WeightedDigraph, bound: int = ENUMERATION_BOUND) -> Dicut | None:
    """A minimum-weight dicut of ``g``, or None when ``g`` has no dicut.

    Digraphs whose condensation has at most ``bound`` nodes are solved by
    enumeration, larger ones by max-flow.
    """
    cond = condense(g)
    dag = cond.condensed
    if dag.n <= 1:
        return None
    if dag.n <= bound:
        order = topological_order(dag)
        mask, _ = min(_iter_ideals(dag), key=lambda mw: mw[1])
        shore = _expand(cond.members(), order, mask)
    else:
        shore = frozenset(
            v for v, c in cond.node_map.items() if c in _min_dicut_shore_by_flow(dag)
        )
    return _make_dicut(g, shore)


def min_dicut_weight(g: WeightedDigraph, bound: int = ENUMERATION_BOUND) -> int | None:
    """Minimum dicut weight (tau), or None when ``g`` has no dicut at all."""
    dag = condense(g).condensed
    if dag.n <= 1:
        return None
    if dag.n <= bound:
        return min(w for _, w in _iter_ideals(dag))
    return min_dicut_weight_by_flow(dag)


def min_dicut_weight_by_enumeration(g: WeightedDigraph, bound: int = ENUMERATION_BOUND) -> int | None:
    dag = condense(g).condensed
    if dag.n <= 1:
        return None
    _check_bound(dag.n, bound)
    return min(w for _, w in _iter_ideals(dag))


def min_dicut_weight_by_flow(g: WeightedDigraph) -> int | None:
    dag = condense(g).condensed
    if dag.n <= 1:
        return None
    return _flow_min(dag)[0]


def _flow_network(dag: WeightedDigraph) -> tuple[list[Node], dict[tuple[int, int], int], int]:
    """Forward arcs cost their weight; reversed copies are uncuttable.

    A finite s-t cut then has a predecessor-closed source side, i.e. a shore.
    """
    nodes = list(dag.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    inf = dag.total_weight() + 1
    cap: dict[tuple[int, int], int] = {}
    for a in dag.arcs:
        t, h = idx[a.tail], idx[a.head]
        cap[t, h] = cap.get((t, h), 0) + a.weight
        cap[h, t] = inf
    return nodes, cap, inf


def _flow_min(dag: WeightedDigraph) -> tuple[int, int, int, object]:
    """Global minimum over cuts separating node 0 from sources and sinks.

    A shore containing node 0 misses some sink (a maximal element of its
    complement), and a shore missing node 0 contains some source. So the
    flows from 0 to every other sink and from every other source to 0 cover
    every shore.
    """
    nodes, cap, inf = _flow_network(dag)
    n = len(nodes)
    if inf <= _INT32_MAX:
        rows, cols = zip(*cap) if cap else ((), ())
        mat = csr_matrix(
            (np.fromiter(cap.values(), dtype=np.int32, count=len(cap)), (rows, cols)),
            shape=(n, n),
        )

        def flow(s: int, t: int):
            res = maximum_flow(mat, s, t, method="dinic")
            return res.flow_value, res.flow
    else:
        import networkx as nx

        net = nx.DiGraph()
        net.add_nodes_from(range(n))
        for (x, y), c in cap.items():
            net.add_edge(x, y, capacity=c)

        def flow(s: int, t: int):
            value, flows = nx.maximum_flow(net, s, t)
            return value, flows

    pairs = [(0, i) for i, v in enumerate(nodes) if i and not dag.out_arcs[v]]
    pairs += [(i, 0) for i, v in enumerate(nodes) if i and not dag.in_arcs[v]]
    best = None
    for s, t in pairs:
        value, fl = flow(s, t)
        if best is None or value < best[0]:
            best = (int(value), s, t, fl)
    return best


def _min_dicut_shore_by_flow(dag: WeightedDigraph) -> set[Node]:
    nodes, cap, _ = _flow_network(dag)
    _, s, _, fl = _flow_min(dag)
    # net flow, antisymmetric: residual(x, y) = cap(x, y) - net(x, y)
    net: dict[tuple[int, int], int] = {}
    if isinstance(fl, dict):
        for x, row in fl.items():
            for y, f in row.items():
                net[x, y] = net.get((x, y), 0) + f
                net[y, x] = net.get((y, x), 0) - f
    else:
        coo = fl.tocoo()
        for x, y, f in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            net[x, y] = f
    adj: dict[int, list[int]] = {i: [] for i in range(len(nodes))}
    for x, y in cap:
        adj[x].append(y)
        adj[y].append(x)
    seen = {s}
    frontier = [s]
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y not in seen and cap.get((x, y), 0) - net.get((x, y), 0) > 0:
                seen.add(y)
                frontier.append(y)
    return {nodes[i] for i in seen}


def _strongly_connected(nodes: Iterable[Node], edges: list[tuple[Node, Node]]) -> bool:
    nodes = list(nodes)
    if len(nodes) <= 1:
        return True
    fwd: dict[Node, list[Node]] = {v: [] for v in nodes}
    bwd: dict[Node, list[Node]] = {v: [] for v in nodes}
    for x, y in edges:
        fwd[x].append(y)
        bwd[y].append(x)
    for adj in (fwd, bwd):
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(nodes):
            return False
    return True


def _check_arc_ids(g: WeightedDigraph, J: Collection[ArcId]) -> frozenset[ArcId]:
    J = frozenset(J)
    unknown = J - g.arc_by_id.keys()
    if unknown:
        raise InvalidInputError(f"unknown arc ids: {sorted(map(repr, unknown))}")
    return J


def is_dijoin(g: WeightedDigraph, J: Collection[ArcId]) -> bool:
    """True iff ``J`` meets every dicut of ``g``.

    Uses the classical equivalence: ``J`` is a dijoin iff adding the reverse
    of each arc of ``J`` makes ``g`` strongly connected.
    """
    J = _check_arc_ids(g, J)
    edges = [(a.tail, a.head) for a in g.arcs]
    edges += [(a.head, a.tail) for a in g.arcs if a.id in J]
    return _strongly_connected(g.nodes, edges)


def is_dijoin_by_enumeration(
    g: WeightedDigraph, J: Collection[ArcId], bound: int = ENUMERATION_BOUND
) -> bool:
    """Definitional check against every enumerated dicut."""
    J = _check_arc_ids(g, J)
    return all(d.arcs & J for d in enumerate_dicuts(g, bound))
