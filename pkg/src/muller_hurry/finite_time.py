"""Finite-duration Muller games as reachability games.

A play stops the first time some vertex set's score reaches its stopping
threshold; the set's owner wins.  With the uniform rule the threshold is a
constant ``k >= 2``; with the McNaughton rule a set ``F`` stops the play at
score ``|F|! + 1``.  Since every sufficiently long word pushes some score
past any threshold, the product of the arena with the score chain (the
complete scoring memory) is a finite directed acyclic game that backward
induction solves exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Hashable, Sequence

from .arena import Arena
from .bitset import size
from .conditions import MullerCondition, membership
from .scoring import ScoreChain, chain_init, chain_update
from .strategies import OffDomain, StrategyEvaluator


class FiniteTimeError(Exception):
    pass


class ThresholdOverflow(FiniteTimeError):
    """A McNaughton threshold would exceed the configured set-size cap."""


class StateBudgetExceeded(FiniteTimeError):
    """The product game grew past the configured state cap."""


class AcyclicityViolation(FiniteTimeError):
    """The running part of a product game contains a cycle.

    That would mean an infinite play whose scores never reach the
    thresholds, which the scoring bound rules out - so it signals a
    scoring bug, not a property of the game.
    """


@dataclass(frozen=True)
class StoppingRule:
    kind: str  # "uniform" | "mcnaughton"
    k: int | None = None
    max_set_size: int = 5

    def __post_init__(self) -> None:
        if self.kind == "uniform":
            if self.k is None or self.k < 2:
                raise FiniteTimeError("uniform threshold needs k >= 2")
        elif self.kind != "mcnaughton":
            raise FiniteTimeError(f"unknown stopping rule {self.kind!r}")

    def threshold(self, f_set: int) -> int:
        return stopping_threshold(self, f_set)

    def describe(self) -> str:
        return f"uniform({self.k})" if self.kind == "uniform" else "mcnaughton"


def uniform_rule(k: int) -> StoppingRule:
    return StoppingRule("uniform", k)


def mcnaughton_rule(max_set_size: int = 5) -> StoppingRule:
    return StoppingRule("mcnaughton", None, max_set_size)


def stopping_threshold(rule: StoppingRule, f_set: int) -> int:
    """Score at which the referee stops the play on ``f_set``."""
    if rule.kind == "uniform":
        assert rule.k is not None
        return rule.k
    n = size(f_set)
    if n > rule.max_set_size:
        raise ThresholdOverflow(
            f"set of size {n} exceeds the McNaughton cap {rule.max_set_size}"
        )
    return factorial(n) + 1


def stopped_set(rule: StoppingRule, chain: ScoreChain) -> int | None:
    """The unique set whose score just reached its threshold, if any.

    Callers feed chains one update at a time starting below all
    thresholds, so a hit is exact; two sets can never hit simultaneously,
    which is asserted.
    """
    hits = [e.vertices for e in chain.entries if e.score >= rule.threshold(e.vertices)]
    if not hits:
        return None
    assert len(hits) == 1, f"two sets hit their thresholds at once: {hits}"
    return hits[0]


# ---------------------------------------------------------------------------
# Product game


@dataclass(frozen=True)
class ProductState:
    vertex: int
    chain: ScoreChain
    stopped: bool = False
    winner: int | None = None
    stop_set: int | None = None


@dataclass
class ProductGame:
    arena: Arena
    cond: MullerCondition
    rule: StoppingRule
    states: list[ProductState] = field(default_factory=list)
    edges: list[tuple[int, ...]] = field(default_factory=list)
    initial: dict[int, int] = field(default_factory=dict)

    def running_indices(self):
        return [i for i, s in enumerate(self.states) if not s.stopped]


def build_product(
    arena: Arena,
    cond: MullerCondition,
    rule: StoppingRule,
    state_cap: int = 5_000_000,
) -> ProductGame:
    """Unravel ``arena`` with the score chain as memory.

    States are (vertex, chain) pairs; a state whose chain hit a threshold
    is terminal and already carries its winner.  The running subgraph is
    verified to be acyclic.
    """
    pg = ProductGame(arena, cond, rule)
    index: dict[tuple[int, ScoreChain], int] = {}

    def intern(vertex: int, chain: ScoreChain) -> int:
        key = (vertex, chain)
        idx = index.get(key)
        if idx is not None:
            return idx
        if len(pg.states) >= state_cap:
            raise StateBudgetExceeded(f"product exceeded {state_cap} states")
        hit = stopped_set(rule, chain)
        if hit is None:
            state = ProductState(vertex, chain)
        else:
            state = ProductState(vertex, chain, True, membership(cond, hit), hit)
        idx = len(pg.states)
        pg.states.append(state)
        pg.edges.append(())
        index[key] = idx
        return idx

    todo: list[int] = []
    for v in range(arena.vertex_count):
        idx = intern(v, chain_init(v))
        pg.initial[v] = idx
        todo.append(idx)
    seen = set(todo)
    while todo:
        i = todo.pop()
        state = pg.states[i]
        if state.stopped:
            continue
        out = []
        for w in sorted(arena.successors[state.vertex]):
            j = intern(w, chain_update(state.chain, w))
            out.append(j)
            if j not in seen:
                seen.add(j)
                todo.append(j)
        pg.edges[i] = tuple(out)
    _check_acyclic(pg)
    return pg


def _check_acyclic(pg: ProductGame) -> None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * len(pg.states)
    for root in range(len(pg.states)):
        if color[root] != WHITE or pg.states[root].stopped:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = GREY
        while stack:
            node, child = stack[-1]
            succs = pg.edges[node]
            if child >= len(succs):
                color[node] = BLACK
                stack.pop()
                continue
            stack[-1] = (node, child + 1)
            nxt = succs[child]
            if pg.states[nxt].stopped:
                continue
            if color[nxt] == GREY:
                raise AcyclicityViolation(
                    f"running states form a cycle through vertex {pg.states[nxt].vertex}"
                )
            if color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, 0))


@dataclass(frozen=True)
class ReachabilitySolution:
    state_winner: tuple[int, ...]
    by_vertex: dict[int, int] = field(hash=False)


def solve_reachability(pg: ProductGame, cond: MullerCondition) -> ReachabilitySolution:
    """Backward induction over the acyclic running subgraph.

    At a Player ``p`` state, ``p`` wins iff some successor is winning for
    ``p``; terminal states award the stopping set's owner.  The result maps
    every initial vertex to its winner (the game is determined).
    """
    n = len(pg.states)
    winner: list[int | None] = [None] * n
    for i, s in enumerate(pg.states):
        if s.stopped:
            winner[i] = s.winner
    order: list[int] = []
    marked = [False] * n
    for root in range(n):
        if marked[root] or pg.states[root].stopped:
            continue
        stack = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if marked[node]:
                continue
            marked[node] = True
            stack.append((node, True))
            for nxt in pg.edges[node]:
                if not marked[nxt] and not pg.states[nxt].stopped:
                    stack.append((nxt, False))
    for node in order:
        p = pg.arena.owner[pg.states[node].vertex]
        kids = [winner[j] for j in pg.edges[node]]
        assert all(w is not None for w in kids)
        winner[node] = p if p in kids else 1 - p
    assert all(w is not None for w in winner)
    by_vertex = {v: winner[i] for v, i in pg.initial.items()}
    return ReachabilitySolution(tuple(winner), by_vertex)  # type: ignore[arg-type]


def finite_time_regions(
    arena: Arena,
    cond: MullerCondition,
    rule: StoppingRule,
    state_cap: int = 5_000_000,
) -> tuple[int, int]:
    """Winning region masks of both players in the finite-duration game."""
    pg = build_product(arena, cond, rule, state_cap)
    sol = solve_reachability(pg, cond)
    w0 = w1 = 0
    for v, winner in sol.by_vertex.items():
        if winner == 0:
            w0 |= 1 << v
        else:
            w1 |= 1 << v
    return w0, w1


class ProductStrategy(StrategyEvaluator):
    """Winning moves read off a solved product game.

    Finite-memory by construction: the memory state after a prefix is the
    product state index, which :meth:`memory_key` exposes for lasso
    detection.
    """

    def __init__(self, pg: ProductGame, sol: ReachabilitySolution, player: int):
        self.pg = pg
        self.sol = sol
        self.player = player
        self.domain = 0
        for v, w in sol.by_vertex.items():
            if w == player:
                self.domain |= 1 << v
        self._trace: dict[tuple[int, ...], int] = {}

    def _state_index(self, prefix: tuple[int, ...]) -> int:
        known = self._trace.get(prefix)
        if known is not None:
            return known
        missing = []
        p = prefix
        while p and p not in self._trace:
            missing.append(p[-1])
            p = p[:-1]
        if p:
            idx = self._trace[p]
        else:
            v = missing.pop()
            idx = self.pg.initial.get(v)
            if idx is None:
                raise OffDomain(f"start {v} not in the product", prefix)
            p = (v,)
            self._trace[p] = idx
        if len(self._trace) > 200_000:
            self._trace.clear()
        while missing:
            w = missing.pop()
            state = self.pg.states[idx]
            if state.stopped:
                raise OffDomain("play continued past the referee's stop", prefix)
            succs = sorted(self.pg.arena.successors[state.vertex])
            if w not in succs:
                raise OffDomain(f"{state.vertex}->{w} is not an edge", prefix)
            idx = self.pg.edges[idx][succs.index(w)]
            p = p + (w,)
            self._trace[p] = idx
        return idx

    def move(self, prefix: Sequence[int]) -> int:
        prefix = tuple(prefix)
        idx = self._state_index(prefix)
        state = self.pg.states[idx]
        if state.stopped:
            raise OffDomain("the referee has already ruled", prefix)
        if self.sol.state_winner[idx] != self.player:
            raise OffDomain("state is not winning for this player", prefix)
        succs = sorted(self.pg.arena.successors[state.vertex])
        for w, j in zip(succs, self.pg.edges[idx]):
            if self.sol.state_winner[j] == self.player:
                return w
        raise AssertionError("winning state without a winning move")

    def memory_key(self, prefix: Sequence[int]) -> Hashable | None:
        # unknown (None) once the play runs past the product's horizon,
        # e.g. in rule-less simulations that continue after a stop state
        try:
            return self._state_index(tuple(prefix))
        except OffDomain:
            return None


def extract_finite_strategy(
    pg: ProductGame, sol: ReachabilitySolution, player: int
) -> ProductStrategy:
    return ProductStrategy(pg, sol, player)


def tree_winner(
    arena: Arena,
    cond: MullerCondition,
    rule: StoppingRule,
    start: int,
    node_budget: int = 5_000_000,
) -> int:
    """Winner from ``start`` by plain recursion over the play tree.

    No memoization and no product construction: an independent (much
    slower) route to the same answer, kept as a cross-check oracle for
    tiny games.
    """
    budget = [node_budget]

    def visit(v: int, chain: ScoreChain) -> int:
        budget[0] -= 1
        if budget[0] < 0:
            raise StateBudgetExceeded("play-tree oracle budget exhausted")
        p = arena.owner[v]
        worst = None
        for w in sorted(arena.successors[v]):
            grown = chain_update(chain, w)
            hit = stopped_set(rule, grown)
            won = membership(cond, hit) if hit is not None else visit(w, grown)
            if won == p:
                return p
            worst = won
        assert worst is not None
        return worst

    return visit(start, chain_init(start))
