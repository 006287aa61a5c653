"""Exhaustive certification of packing sizes on tiny instances.

``can_pack(g, k)`` decides whether ``k`` dijoins fit under the arc weights by
backtracking over arcs. Each arc is put in exactly ``min(w, k)`` of the ``k``
dijoins: a superset of a dijoin is a dijoin, so using an arc as often as its
weight allows never hurts. The search fails a branch as soon as some dicut
can no longer be hit by every dijoin.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dicuts import ENUMERATION_BOUND, enumerate_dicuts
from .errors import InvalidInputError, ResourceLimitError
from .graph import ArcId, WeightedDigraph

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class PackingQuery:
    instance: WeightedDigraph
    k: int
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidInputError("k must be at least 1")


def can_pack(
    g: WeightedDigraph,
    k: int,
    *,
    budget: int = DEFAULT_BUDGET,
    bound: int = ENUMERATION_BOUND,
) -> list[frozenset[ArcId]] | None:
    """Find ``k`` dijoins with every arc in at most ``w(arc)`` of them.

    Returns the witness dijoins, or None when no such packing exists. Raises
    ResourceLimitError once more than ``budget`` search nodes are expanded.
    """
    PackingQuery(g, k, budget)
    cuts = enumerate_dicuts(g, bound)
    arcs = sorted((a for a in g.arcs if a.weight > 0), key=lambda a: -a.weight)
    pos = {a.id: i for i, a in enumerate(arcs)}
    cut_arcs = [sorted(pos[e] for e in c.arcs if e in pos) for c in cuts]
    if any(not ca for ca in cut_arcs):
        return None  # a dicut made of weight-0 arcs only

    full = (1 << k) - 1
    m = len(arcs)
    # cuts through each arc, and how many still-unassigned arcs each cut has
    through = [[] for _ in range(m)]
    for ci, ca in enumerate(cut_arcs):
        for i in ca:
            through[i].append(ci)
    open_arcs = [len(ca) for ca in cut_arcs]
    covered = [0] * len(cuts)
    cap_left = [sum(min(arcs[i].weight, k) for i in ca) for ca in cut_arcs]
    choice = [0] * m
    expanded = 0

    def options(i: int, used: int) -> list[int]:
        """Index sets of size min(w, k), modulo permuting untouched dijoins."""
        c = min(arcs[i].weight, k)
        touched = [b for b in range(k) if used >> b & 1]
        fresh = [b for b in range(k) if not used >> b & 1]
        out = []
        for r in range(max(0, c - len(fresh)), min(c, len(touched)) + 1):
            tail = sum(1 << b for b in fresh[: c - r])
            for combo in combinations(touched, r):
                out.append(sum(1 << b for b in combo) | tail)
        return out

    def search(i: int, used: int) -> bool:
        nonlocal expanded
        expanded += 1
        if expanded > budget:
            raise ResourceLimitError(f"oracle search exceeded {budget} nodes")
        if i == m:
            return True
        c = min(arcs[i].weight, k)
        for mask in options(i, used):
            ok = True
            saved = []
            for ci in through[i]:
                saved.append((ci, covered[ci]))
                covered[ci] |= mask
                open_arcs[ci] -= 1
                cap_left[ci] -= c
                missing = k - bin(covered[ci]).count("1")
                if missing > cap_left[ci] or (open_arcs[ci] == 0 and covered[ci] != full):
                    ok = False
            if ok:
                choice[i] = mask
                if search(i + 1, used | mask):
                    return True
            for ci, old in saved:
                covered[ci] = old
                open_arcs[ci] += 1
                cap_left[ci] += c
        return False

    if not search(0, 0):
        return None
    return [
        frozenset(arcs[i].id for i in range(m) if choice[i] >> b & 1) for b in range(k)
    ]


def max_packing_size(
    g: WeightedDigraph,
    *,
    budget: int = DEFAULT_BUDGET,
    bound: int = ENUMERATION_BOUND,
) -> int | None:
    """Largest ``k`` such that ``k`` dijoins pack; None if ``g`` has no dicut.

    Searches downward from the minimum dicut weight, which bounds any packing.
    """
    cuts = enumerate_dicuts(g, bound)
    if not cuts:
        return None
    for k in range(min(c.weight for c in cuts), 0, -1):
        if can_pack(g, k, budget=budget, bound=bound) is not None:
            return k
    return 0
