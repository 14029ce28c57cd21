"""Referee and simulation engine.

Runs strategy-vs-strategy plays with live score tracking, stops them by a
finite-duration rule, detects lassos of finite-memory plays for infinite
verdicts, and searches adversary choice trees (exhaustively or at random)
to certify the score bounds the strategies promise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .arena import Arena
from .bitset import iter_members
from .conditions import MullerCondition, membership
from .finite_time import StoppingRule, stopped_set, uniform_rule
from .scoring import ScoreChain, chain_init, chain_update
from .strategies import OffDomain, StrategyEvaluator, score_bounding_strategy
from .zielonka import Decomposition


class EngineError(Exception):
    pass


class StrategyOffDomain(EngineError):
    """A consulted strategy had no move; carries the offending prefix."""

    def __init__(self, prefix: tuple[int, ...], cause: OffDomain):
        super().__init__(f"strategy undefined after {prefix}: {cause}")
        self.prefix = prefix
        self.cause = cause


class BudgetExceeded(EngineError):
    pass


class NotEventuallyPeriodic(EngineError):
    """No certified lasso within the step budget."""


class InvalidPlaySetup(EngineError):
    pass


@dataclass(frozen=True)
class Verdict:
    kind: str  # "stopped" | "lasso" | "budget"
    winner: int | None = None
    stop_set: int | None = None
    step: int | None = None
    infinity_set: int | None = None

    @property
    def finished(self) -> bool:
        return self.kind in ("stopped", "lasso")


@dataclass(frozen=True)
class PlayRecord:
    steps: tuple[int, ...]
    chains: tuple[ScoreChain, ...]
    verdict: Verdict


def referee_play(
    arena: Arena,
    cond: MullerCondition,
    rule: StoppingRule | None,
    start: int,
    s0: StrategyEvaluator,
    s1: StrategyEvaluator,
    prefix: Sequence[int] | None = None,
    budget: int | None = None,
) -> PlayRecord:
    """Alternate the evaluators from ``start``, scoring every step.

    With a stopping rule the play ends at the first prefix where some
    set's score reaches its threshold (this is checked inside a seeded
    ``prefix`` too) and the set's owner wins.  Without a rule a ``budget``
    is required; the verdict is then a detected lasso (winner = owner of
    the infinity set) or budget exhaustion.
    """
    if rule is None and budget is None:
        raise InvalidPlaySetup("need a stopping rule or a step budget")
    steps: list[int] = []
    if prefix:
        if prefix[0] != start:
            raise InvalidPlaySetup("prefix does not begin at the start vertex")
        for a, b in zip(prefix, prefix[1:]):
            if not arena.has_edge(a, b):
                raise InvalidPlaySetup(f"prefix step {a}->{b} is not an edge")
        steps.extend(prefix)
    else:
        steps.append(start)
    if not 0 <= steps[0] < arena.vertex_count:
        raise InvalidPlaySetup(f"start {steps[0]} is not a vertex")

    chains: list[ScoreChain] = []
    chain: ScoreChain | None = None
    strategies = (s0, s1)
    seen_keys: dict[tuple, int] = {}

    def absorb(v: int) -> Verdict | None:
        nonlocal chain
        chain = chain_init(v) if chain is None else chain_update(chain, v)
        chains.append(chain)
        if rule is not None:
            hit = stopped_set(rule, chain)
            if hit is not None:
                return Verdict(
                    "stopped", winner=membership(cond, hit), stop_set=hit, step=len(chains)
                )
        return None

    for v in steps:
        verdict = absorb(v)
        if verdict is not None:
            return PlayRecord(tuple(steps[: len(chains)]), tuple(chains), verdict)

    while True:
        here = tuple(steps)
        if rule is None:
            lassoed = _check_lasso(arena, here, s0, s1, seen_keys)
            if lassoed is not None:
                infinity = lassoed
                return PlayRecord(
                    tuple(steps),
                    tuple(chains),
                    Verdict("lasso", winner=membership(cond, infinity), infinity_set=infinity),
                )
        if budget is not None and len(steps) >= budget:
            return PlayRecord(tuple(steps), tuple(chains), Verdict("budget"))
        mover = strategies[arena.owner[steps[-1]]]
        try:
            nxt = mover.move(here)
        except OffDomain as exc:
            raise StrategyOffDomain(here, exc) from exc
        if not arena.has_edge(steps[-1], nxt):
            raise InvalidPlaySetup(f"strategy played a non-edge {steps[-1]}->{nxt}")
        steps.append(nxt)
        verdict = absorb(nxt)
        if verdict is not None:
            return PlayRecord(tuple(steps), tuple(chains), verdict)


def _check_lasso(
    arena: Arena,
    prefix: tuple[int, ...],
    s0: StrategyEvaluator,
    s1: StrategyEvaluator,
    seen: dict[tuple, int],
) -> int | None:
    """Certified infinity set once a joint state repeats.

    The joint state is (vertex, both strategies' memory keys).  A repeat
    certifies a lasso if every player owning a vertex inside the repeated
    segment exposes a concrete memory key: the segment then replays
    forever, so its occurrence set is the infinity set.
    """
    v = prefix[-1]
    k0 = s0.memory_key(prefix)
    k1 = s1.memory_key(prefix)
    sig = (v, k0, k1)
    earlier = seen.get(sig)
    here = len(prefix) - 1
    if earlier is not None:
        segment = prefix[earlier:here]
        owners = {arena.owner[u] for u in segment}
        keys = (k0, k1)
        if all(keys[p] is not None for p in owners):
            infinity = 0
            for u in segment:
                infinity |= 1 << u
            return infinity
    seen[sig] = here
    return None


def lasso_detect(
    arena: Arena,
    cond: MullerCondition,
    start: int,
    s0: StrategyEvaluator,
    s1: StrategyEvaluator,
    budget: int = 10_000,
) -> int:
    """Infinity set of the play the two evaluators produce from ``start``.

    Both evaluators should be finite-memory (positional or extracted from
    a product game); raises :class:`NotEventuallyPeriodic` if no lasso is
    certified within the budget.
    """
    record = referee_play(arena, cond, None, start, s0, s1, budget=budget)
    if record.verdict.kind != "lasso":
        raise NotEventuallyPeriodic(f"no lasso within {budget} steps")
    assert record.verdict.infinity_set is not None
    return record.verdict.infinity_set


# ---------------------------------------------------------------------------
# Score-bound verification


@dataclass(frozen=True)
class ExhaustiveSearch:
    depth: int | None = None  # None: 3 ** |V|
    node_budget: int = 20_000_000


@dataclass(frozen=True)
class RandomSearch:
    trials: int
    depth: int
    seed: int


@dataclass(frozen=True)
class BoundReport:
    max_opponent_score: int
    witness: tuple[int, ...] | None
    explored: int
    mode: str


def verify_bound(
    arena: Arena,
    cond: MullerCondition,
    d: Decomposition,
    player: int,
    mode: ExhaustiveSearch | RandomSearch,
    start: int | None = None,
) -> BoundReport:
    """Largest opponent-family score reachable against the score-bounding
    strategy of ``player``, from ``start`` (default: every region vertex).

    Exhaustive mode branches over every opponent choice, following each
    branch until the uniform-3 referee stops it (or the depth cap);
    random mode samples seeded opponent walks.  The witness is the first
    prefix, in deterministic search order, attaining the maximum.
    """
    region = d.region(player)
    if region == 0:
        raise EngineError("player's region is empty")
    strategy = score_bounding_strategy(d, player)
    if start is not None:
        if not region & (1 << start):
            raise EngineError(f"start {start} is outside the player's region")
        starts = [start]
    else:
        starts = list(iter_members(region))

    owner_of: dict[int, int] = {}

    def opponent_owns(f_set: int) -> bool:
        got = owner_of.get(f_set)
        if got is None:
            got = membership(cond, f_set)
            owner_of[f_set] = got
        return got == 1 - player

    best = 0
    witness: tuple[int, ...] | None = None
    explored = 0

    def scan(steps: list[int], chain: ScoreChain) -> None:
        nonlocal best, witness
        for e in chain.entries:
            if e.score > best and opponent_owns(e.vertices):
                best = e.score
                witness = tuple(steps)

    if isinstance(mode, ExhaustiveSearch):
        depth = mode.depth if mode.depth is not None else 3 ** arena.vertex_count
        budget = mode.node_budget
        stop_rule = uniform_rule(3)

        def dfs(steps: list[int], chain: ScoreChain) -> None:
            nonlocal explored
            explored += 1
            if explored > budget:
                raise BudgetExceeded(f"exhausted {budget} search nodes")
            scan(steps, chain)
            if stopped_set(stop_rule, chain) is not None or len(steps) >= depth:
                return
            v = steps[-1]
            if arena.owner[v] == player:
                try:
                    moves = [strategy.move(tuple(steps))]
                except OffDomain as exc:
                    raise StrategyOffDomain(tuple(steps), exc) from exc
            else:
                moves = sorted(arena.successors[v])
            for w in moves:
                steps.append(w)
                dfs(steps, chain_update(chain, w))
                steps.pop()

        for s in starts:
            dfs([s], chain_init(s))
        return BoundReport(best, witness, explored, f"exhaustive(depth={depth})")

    rng = random.Random(mode.seed)
    for _ in range(mode.trials):
        s = starts[rng.randrange(len(starts))]
        steps = [s]
        chain = chain_init(s)
        explored += 1
        scan(steps, chain)
        while len(steps) < mode.depth:
            v = steps[-1]
            if arena.owner[v] == player:
                try:
                    w = strategy.move(tuple(steps))
                except OffDomain as exc:
                    raise StrategyOffDomain(tuple(steps), exc) from exc
            else:
                w = rng.choice(sorted(arena.successors[v]))
            steps.append(w)
            chain = chain_update(chain, w)
            scan(steps, chain)
    return BoundReport(best, witness, explored, f"random(trials={mode.trials}, depth={mode.depth}, seed={mode.seed})")
