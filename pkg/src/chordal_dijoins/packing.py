"""Packing tau dijoins in a weighted digraph with a chordal underlying graph.

The solver peels simplicial vertices off the condensation one at a time. When
vertex ``v`` goes, the weight on its arcs is pushed onto arcs of the clique
``N(v)`` so that no dicut of the smaller digraph gets lighter than tau. After
the recursion bottoms out at a single node (tau copies of the empty dijoin),
each step is undone in reverse: dijoins that lean on the extra clique weight
are rerouted through ``v``, and if ``v`` is a source every dijoin is given one
of ``v``'s arcs.

Indices into a tournament order are 0-based throughout: ``order[:s]`` are the
in-neighbours of ``v`` and ``order[s:]`` its out-neighbours.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import accumulate

from .chordal import perfect_elimination_order
from .dicuts import (
    ENUMERATION_BOUND,
    enumerate_dicuts,
    is_dicut,
    is_dijoin,
    min_dicut_weight_by_enumeration,
    min_dicut_weight_by_flow,
)
from .errors import InvalidInputError, InvariantViolation
from .graph import (
    Arc,
    ArcId,
    CondensationResult,
    Node,
    WeightedDigraph,
    condense,
    node_key,
    reverse,
    underlying_adjacency,
)

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class Packing:
    """Distinct dijoins with positive multiplicities; ``tau`` is their total."""

    dijoins: tuple[frozenset[ArcId], ...]
    multiplicities: tuple[int, ...]
    tau: int
    no_dicut: bool = False

    @classmethod
    def from_family(cls, family: Mapping[frozenset[ArcId], int], **kw) -> Packing:
        items = [(J, lam) for J, lam in family.items() if lam > 0]
        return cls(
            tuple(J for J, _ in items),
            tuple(lam for _, lam in items),
            sum(lam for _, lam in items),
            **kw,
        )

    @property
    def support(self) -> int:
        return len(self.dijoins)

    def usage(self) -> dict[ArcId, int]:
        """How many dijoins (with multiplicity) use each arc."""
        used: dict[ArcId, int] = {}
        for J, lam in zip(self.dijoins, self.multiplicities):
            for e in J:
                used[e] = used.get(e, 0) + lam
        return used


@dataclass(frozen=True)
class TournamentOrder:
    v: Node
    order: tuple[Node, ...]
    s: int
    u: tuple[int, ...]
    # arc joining v and order[i]
    spokes: tuple[ArcId, ...]


@dataclass(frozen=True)
class EliminationStep:
    tournament: TournamentOrder
    reversed: bool
    t: int | None
    u_prime: tuple[int, ...]
    matching: dict[tuple[int, int], int]
    # (i, j) -> (arc id, w' - w) for clique arcs whose weight went up
    w_delta: dict[tuple[int, int], tuple[ArcId, int]]
    delta_v_is_dicut: bool
    # arc order[0] -> order[j] for j >= 1; only filled when delta_v_is_dicut
    first_row: tuple[ArcId, ...] = ()


@dataclass(frozen=True)
class PackingRun:
    """Everything :func:`solve` computed, for inspection and verification."""

    packing: Packing
    condensation: CondensationResult
    condensed_packing: Packing
    steps: tuple[EliminationStep, ...] = ()
    elimination_order: tuple[Node, ...] = ()

    @property
    def support_bound(self) -> int:
        dag = self.condensation.condensed
        return dag.m - dag.n + 2


# -- single-step primitives ---------------------------------------------------


def compute_u_prime(u: Sequence[int], s: int) -> tuple[int | None, tuple[int, ...]]:
    """Trim ``u`` on the out-side so both sides carry ``sum(u[:s])``.

    Returns ``(t, u_prime)`` with ``t`` the smallest index in ``[s, k)`` such
    that ``sum(u[t+1:]) <= sum(u[:s]) <= sum(u[t:])``. Out-weights beyond ``t``
    are kept, ``u_prime[t]`` takes the remainder and ``u[s:t]`` is zeroed.
    ``t`` is None when there are no out-neighbours.
    """
    k = len(u)
    if not 0 <= s <= k:
        raise InvalidInputError(f"split index {s} out of range for {k} neighbours")
    if any(x < 0 for x in u):
        raise InvalidInputError("negative weight in u")
    target = sum(u[:s])
    if target > sum(u[s:]):
        raise InvalidInputError("in-weight exceeds out-weight; reverse the digraph first")
    if s == k:
        return None, tuple(u)
    suffix = list(accumulate(reversed(u)))[::-1] + [0]  # suffix[i] = sum(u[i:])
    t = next(i for i in range(s, k) if suffix[i + 1] <= target)
    up = list(u)
    for i in range(s, t):
        up[i] = 0
    up[t] = target - suffix[t + 1]
    return t, tuple(up)


def greedy_matching(u_prime: Sequence[int], s: int) -> dict[tuple[int, int], int]:
    """Northwest-corner transport from ``u_prime[:s]`` to ``u_prime[s:]``.

    Returns ``{(i, j): x_ij}`` with positive entries only; row sums are
    ``u_prime[i]`` for ``i < s``, column sums ``u_prime[j]`` for ``j >= s``.
    The support is a forest, so it has at most (nonzero rows + nonzero
    columns - 1) entries.
    """
    left = [[i, u_prime[i]] for i in range(s) if u_prime[i] > 0]
    right = [[j, u_prime[j]] for j in range(s, len(u_prime)) if u_prime[j] > 0]
    if sum(r for _, r in left) != sum(r for _, r in right):
        raise InvalidInputError("u_prime is unbalanced across the split")
    x: dict[tuple[int, int], int] = {}
    a = b = 0
    while a < len(left) and b < len(right):
        amount = min(left[a][1], right[b][1])
        x[left[a][0], right[b][0]] = amount
        left[a][1] -= amount
        right[b][1] -= amount
        if left[a][1] == 0:
            a += 1
        if right[b][1] == 0:
            b += 1
    return x


def weight_increase(
    u: Sequence[int], s: int, u_prime: Sequence[int], matching: Mapping[tuple[int, int], int]
) -> dict[tuple[int, int], int]:
    """Per clique pair ``(i, j)``, how much its arc weight grows (positive only).

    Matched pairs across the split gain ``x_ij``; arcs out of the first
    out-neighbour ``order[s]`` absorb the out-weight that the trim removed.
    """
    delta = {ij: x for ij, x in matching.items() if x > 0}
    for j in range(s + 1, len(u)):
        if u[j] > u_prime[j]:
            delta[s, j] = u[j] - u_prime[j]
    return dict(sorted(delta.items()))


# -- working digraph ----------------------------------------------------------


class _Working:
    """Mutable acyclic digraph with a simple underlying graph.

    Whole-digraph reversal is a flag flip: arc ``e`` runs ``ends[e]`` when not
    flipped and backwards when flipped.
    """

    def __init__(self, dag: WeightedDigraph):
        self.ends = {a.id: (a.tail, a.head) for a in dag.arcs}
        self.weight = {a.id: a.weight for a in dag.arcs}
        self.adj: dict[Node, dict[Node, ArcId]] = {v: {} for v in dag.nodes}
        for a in dag.arcs:
            self.adj[a.tail][a.head] = a.id
            self.adj[a.head][a.tail] = a.id
        self.flipped = False

    def points(self, x: Node, y: Node) -> bool:
        """Is the arc joining x and y oriented x -> y?"""
        return (self.ends[self.adj[x][y]][0] == x) != self.flipped

    def snapshot(self) -> WeightedDigraph:
        arcs = []
        for e, (x, y) in self.ends.items():
            if x in self.adj and y in self.adj[x]:
                if self.flipped:
                    x, y = y, x
                arcs.append(Arc(x, y, self.weight[e], e))
        return WeightedDigraph(tuple(self.adj), tuple(arcs))

    def remove(self, v: Node) -> None:
        for w in self.adj.pop(v):
            del self.adj[w][v]


def _tournament(work: _Working, v: Node) -> TournamentOrder:
    nbrs = sorted(work.adj[v], key=node_key)
    k = len(nbrs)
    indeg = {}
    for x in nbrs:
        d = 0
        for y in nbrs:
            if y == x:
                continue
            if y not in work.adj[x]:
                raise InvalidInputError(f"neighbourhood of {v!r} is not a clique")
            if work.points(y, x):
                d += 1
        indeg[x] = d
    if sorted(indeg.values()) != list(range(k)):
        raise InvalidInputError(f"clique around {v!r} contains a directed cycle")
    order = tuple(sorted(nbrs, key=indeg.__getitem__))
    into = [work.points(x, v) for x in order]
    s = sum(into)
    if into != [True] * s + [False] * (k - s):
        raise InvalidInputError(f"in-neighbours of {v!r} are not a prefix of the clique order")
    spokes = tuple(work.adj[v][x] for x in order)
    return TournamentOrder(v, order, s, tuple(work.weight[e] for e in spokes), spokes)


def tournament_order(g: WeightedDigraph, v: Node) -> TournamentOrder:
    """Topological order of the clique ``N(v)`` with the in/out split at ``v``.

    ``g`` must be acyclic with a simple underlying graph (a condensation).
    """
    if v not in g.out_arcs:
        raise InvalidInputError(f"unknown vertex {v!r}")
    if any(len(arcs) > 1 for arcs in _pairs(g).values()):
        raise InvalidInputError("tournament_order needs a simple underlying graph")
    return _tournament(_Working(g), v)


def _pairs(g: WeightedDigraph) -> dict[frozenset, list[Arc]]:
    pairs: dict[frozenset, list[Arc]] = {}
    for a in g.arcs:
        pairs.setdefault(frozenset((a.tail, a.head)), []).append(a)
    return pairs


def _eliminate(work: _Working, v: Node) -> EliminationStep:
    tour = _tournament(work, v)
    flipped_here = False
    if sum(tour.u[: tour.s]) > sum(tour.u[tour.s :]):
        work.flipped = not work.flipped
        flipped_here = True
        tour = _tournament(work, v)
    s, u, k = tour.s, tour.u, len(tour.order)
    if s == k:
        # v is a sink whose arcs all weigh 0: a zero-weight dicut
        raise InvariantViolation(f"vertex {v!r} closes a zero-weight dicut while tau > 0")
    t, u_prime = compute_u_prime(u, s)
    x = greedy_matching(u_prime, s)
    inc = weight_increase(u, s, u_prime, x)
    order = tour.order
    w_delta = {}
    for (i, j), d in inc.items():
        e = work.adj[order[i]][order[j]]
        w_delta[i, j] = (e, d)
        work.weight[e] += d
    first_row = tuple(work.adj[order[0]][order[j]] for j in range(1, k)) if s == 0 else ()
    work.remove(v)
    return EliminationStep(tour, flipped_here, t, u_prime, x, w_delta, s == 0, first_row)


def eliminate_vertex(g: WeightedDigraph, v: Node) -> tuple[WeightedDigraph, EliminationStep]:
    """One elimination step on an acyclic ``g`` with simple underlying graph.

    Returns ``g - v`` with raised clique weights (reversed if the step flipped
    the digraph) and the step record used by :func:`mapping_back`.
    """
    if v not in g.out_arcs:
        raise InvalidInputError(f"unknown vertex {v!r}")
    if any(len(arcs) > 1 for arcs in _pairs(g).values()):
        raise InvalidInputError("eliminate_vertex needs a simple underlying graph")
    work = _Working(g)
    step = _eliminate(work, v)
    return work.snapshot(), step


def transfer_weights(g_minus_v: WeightedDigraph, step: EliminationStep) -> WeightedDigraph:
    """Raise clique arc weights of ``g_minus_v`` by the step's increases."""
    new = {}
    for e, d in step.w_delta.values():
        new[e] = g_minus_v.weight(e) + d
    return g_minus_v.with_weights(new)


# -- mapping back -------------------------------------------------------------


def _move(family: dict[frozenset, int], J: frozenset, J2: frozenset, amount: int) -> None:
    family[J] -= amount
    if family[J] == 0:
        del family[J]
    family[J2] = family.get(J2, 0) + amount


def _pick(family: Mapping[frozenset, int], pred) -> frozenset | None:
    """Largest-multiplicity dijoin satisfying ``pred``; first one on ties."""
    best = None
    for J, lam in family.items():
        if pred(J) and (best is None or lam > family[best]):
            best = J
    return best


def _normalize_first_row(family: dict[frozenset, int], first_row: Sequence[ArcId]) -> None:
    """Keep only the last arc of ``first_row`` that each dijoin uses.

    Any dicut through ``order[0] -> order[i]`` also crosses
    ``order[0] -> order[j]`` for ``j > i``, so the dropped arcs are redundant.
    """
    pos = {e: j for j, e in enumerate(first_row)}
    for J in list(family):
        hit = [e for e in J if e in pos]
        if len(hit) > 1:
            keep = max(hit, key=pos.__getitem__)
            _move(family, J, J - (set(hit) - {keep}), family[J])


def mapping_back(packing: Packing, step: EliminationStep) -> Packing:
    """Turn a packing of the digraph without ``v`` into one of the digraph with it.

    Arc weights of the larger digraph are implied by the step: clique arcs
    weigh ``w' - w_delta`` and ``v``'s arcs weigh ``u``.
    """
    tour = step.tournament
    s, spokes = tour.s, tour.spokes
    family: dict[frozenset, int] = dict(zip(packing.dijoins, packing.multiplicities))
    if step.delta_v_is_dicut:
        _normalize_first_row(family, step.first_row)

    for (i, j), (e, excess) in step.w_delta.items():
        extra = {spokes[i], spokes[j]} if i < s else {spokes[j]}
        while excess > 0:
            J = _pick(family, lambda J: e in J)
            if J is None:
                break
            amount = min(family[J], excess)
            _move(family, J, (J - {e}) | extra, amount)
            excess -= amount

    if step.delta_v_is_dicut:
        star = set(spokes)
        misses = star.isdisjoint
        for j in range(1, len(spokes)):
            e = spokes[j]
            used = sum(lam for J, lam in family.items() if e in J)
            while used < tour.u[j]:
                J = _pick(family, misses)
                if J is None:
                    break
                amount = min(family[J], tour.u[j] - used)
                _move(family, J, J | {e}, amount)
                used += amount
        for J in [J for J in family if misses(J)]:
            _move(family, J, J | {spokes[0]}, family[J])
        used = sum(lam for J, lam in family.items() if spokes[0] in J)
        if used > tour.u[0]:
            raise InvariantViolation(
                f"arc {spokes[0]!r} at source {tour.v!r} needed {used} uses but weighs "
                f"{tour.u[0]}; u={tour.u}, family={family}"
            )
    return Packing.from_family(family)


# -- lifting and checking -----------------------------------------------------


def lift_packing(
    packing: Packing, cond: CondensationResult, original: WeightedDigraph
) -> Packing:
    """Replace merged condensed arcs by original parallel copies.

    Each use of a merged arc is served by the first copy (in input order) that
    still has capacity; a dijoin is split when its multiplicity straddles two
    copies. A dicut contains all parallel copies, so any copy will do.
    """
    rank = {a.id: i for i, a in enumerate(cond.condensed.arcs)}
    remaining = {orig: w for copies in cond.arc_map.values() for orig, w in copies}
    out: dict[frozenset, int] = {}
    for J, lam in zip(packing.dijoins, packing.multiplicities):
        pieces = [(frozenset(), lam)]
        for c in sorted(J, key=rank.__getitem__):
            copies = [orig for orig, _ in cond.arc_map[c]]
            split = []
            for P, mu in pieces:
                for orig in copies:
                    if mu == 0:
                        break
                    take = min(mu, remaining[orig])
                    if take:
                        remaining[orig] -= take
                        split.append((P | {orig}, take))
                        mu -= take
                if mu:
                    raise InvariantViolation(f"condensed arc {c!r} is over capacity")
            pieces = split
        for P, mu in pieces:
            out[P] = out.get(P, 0) + mu
    return Packing.from_family(out, no_dicut=packing.no_dicut)


def packing_violations(g: WeightedDigraph, packing: Packing) -> dict[str, str | None]:
    """Check the polynomial packing invariants. Maps name -> problem (None = ok)."""
    problems: dict[str, str | None] = {}
    bad = [lam for lam in packing.multiplicities if lam <= 0]
    problems["positive multiplicities"] = f"nonpositive multiplicities {bad}" if bad else None
    total = sum(packing.multiplicities)
    problems["multiplicities sum to tau"] = (
        None if total == packing.tau else f"sum of multiplicities {total} != tau {packing.tau}"
    )
    dup = len(set(packing.dijoins)) != len(packing.dijoins)
    problems["dijoins distinct"] = "repeated dijoin" if dup else None
    unknown = {e for J in packing.dijoins for e in J} - g.arc_by_id.keys()
    if unknown:
        problems["arc ids resolve"] = f"unknown arc ids {sorted(map(repr, unknown))}"
        return problems
    problems["arc ids resolve"] = None
    over = {e: n for e, n in packing.usage().items() if n > g.weight(e)}
    problems["capacity"] = (
        None if not over else
        "; ".join(f"arc {e!r} used {n} > weight {g.weight(e)}" for e, n in over.items())
    )
    not_dijoins = [i for i, J in enumerate(packing.dijoins) if not is_dijoin(g, J)]
    problems["every member is a dijoin"] = (
        None if not not_dijoins else f"members {not_dijoins} miss some dicut"
    )
    return problems


# -- per-step verification ----------------------------------------------------


def check_weight_transfer(
    d_next: WeightedDigraph, tau: int, bound: int = ENUMERATION_BOUND
) -> bool:
    """After a step, every dicut of the smaller digraph still weighs >= tau."""
    low = min_dicut_weight_by_enumeration(d_next, bound)
    return low is None or low >= tau


def check_dicut_preservation(
    d: WeightedDigraph, d_next: WeightedDigraph, v: Node, bound: int = ENUMERATION_BOUND
) -> bool:
    """Every dicut of ``d - v`` extends, as U or U+v, to a dicut of ``d``
    with the same arcs once ``v``'s arcs are discarded."""
    kept = {a.id for a in d_next.arcs}
    for cut in enumerate_dicuts(d_next, bound):
        if not any(
            big is not None and big.arcs & kept == cut.arcs
            for big in (is_dicut(d, cut.shore), is_dicut(d, cut.shore | {v}))
        ):
            return False
    return True


# -- driver -------------------------------------------------------------------


def solve(
    g: WeightedDigraph, *, verify_steps: bool = False, bound: int = ENUMERATION_BOUND
) -> PackingRun:
    """Pack tau dijoins in ``g``; see :func:`pack_dijoins`."""
    cond = condense(g)
    dag = cond.condensed
    peo = perfect_elimination_order(underlying_adjacency(dag))
    tau = min_dicut_weight_by_flow(dag)
    if tau is None or tau == 0:
        empty = Packing((), (), 0, no_dicut=tau is None)
        return PackingRun(empty, cond, empty, (), tuple(peo))

    work = _Working(dag)
    steps = []
    for v in peo[:-1]:
        before = work.snapshot() if verify_steps else None
        step = _eliminate(work, v)
        steps.append(step)
        if verify_steps:
            if step.reversed:
                before = reverse(before)
            after = work.snapshot()
            if not check_weight_transfer(after, tau, bound):
                raise InvariantViolation(f"eliminating {v!r} left a dicut lighter than {tau}")
            if not check_dicut_preservation(before, after, v, bound):
                raise InvariantViolation(f"eliminating {v!r} created a new dicut")
        log.debug("eliminated %r: s=%d t=%s u=%s", v, step.tournament.s, step.t, step.tournament.u)

    packing = Packing((frozenset(),), (tau,), tau)
    for step in reversed(steps):
        packing = mapping_back(packing, step)

    lifted = lift_packing(packing, cond, g)
    problems = {k: p for k, p in packing_violations(g, lifted).items() if p}
    if lifted.tau != tau:
        problems["multiplicities sum to tau"] = f"packed {lifted.tau}, expected {tau}"
    if problems:
        raise InvariantViolation("final packing check failed: " + "; ".join(problems.values()))
    return PackingRun(lifted, cond, packing, tuple(steps), tuple(peo))


def pack_dijoins(
    g: WeightedDigraph, *, verify_steps: bool = False, bound: int = ENUMERATION_BOUND
) -> Packing:
    """Return a packing of tau dijoins, tau being the minimum dicut weight of ``g``.

    The condensation of ``g`` must have a chordal underlying graph, otherwise
    ``ChordalityError`` is raised with a chordless cycle attached. When ``g``
    has no dicut the packing is empty and flagged ``no_dicut``.

    ``verify_steps`` re-checks, after every elimination, that no dicut got
    lighter than tau and no new dicut appeared. Both checks enumerate dicuts
    and are exponential; the final validity check always runs.
    """
    return solve(g, verify_steps=verify_steps, bound=bound).packing
