"""Strategy evaluators.

A strategy is a pure function from a finite play prefix (ending in a
vertex of the strategy's player) to the next vertex.  Besides positional
attractor strategies this module builds:

* the classic cyclic-counter winning strategy derived from a
  :class:`~muller_hurry.zielonka.Decomposition`, which forgets history
  whenever it switches between an attractor and a recursive strategy, and
* the score-bounding strategies, which carry the relevant history suffix
  into every recursive call and pick the next Zielonka-tree child by the
  indicator set of the play so far; these keep the opponent's scores at 2
  or below from everywhere in the owner's winning region.

Evaluators are immutable from the caller's point of view: the same prefix
always yields the same move.  The default score-bounding evaluators keep
an internal memo of per-prefix states purely as a speed-up; construct
them with ``cached=False`` for the plain recompute-everything variant
(the two are trace-equivalent).
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .arena import Arena, AttractorResult
from .conditions import player_family
from .scoring import ScoreChain, chain_init, chain_update, indicator_from_chain
from .zielonka import Decomposition, RoundRecord


class StrategyError(Exception):
    pass


class OffDomain(StrategyError):
    """The evaluator was queried outside its domain."""

    def __init__(self, message: str, prefix: tuple[int, ...] | None = None):
        super().__init__(message)
        self.prefix = prefix


class InconsistentPlay(StrategyError):
    """A play claimed to follow a strategy deviates from it."""


class StrategyEvaluator:
    """Base evaluator; subclasses implement :meth:`move`."""

    player: int
    domain: int

    def move(self, prefix: Sequence[int]) -> int:
        raise NotImplementedError

    def memory_key(self, prefix: Sequence[int]) -> Hashable | None:
        """Finite-memory state after ``prefix``, or None if unknown.

        Lasso detection may only trust repetitions of states it can see;
        history-dependent evaluators return None.
        """
        return None


class PositionalStrategy(StrategyEvaluator):
    def __init__(self, player: int, domain: int, table: Mapping[int, int], label: str = ""):
        self.player = player
        self.domain = domain
        self.table = dict(table)
        self.label = label

    def move(self, prefix: Sequence[int]) -> int:
        v = prefix[-1]
        try:
            return self.table[v]
        except KeyError:
            raise OffDomain(f"positional strategy {self.label or ''} undefined at {v}",
                            tuple(prefix)) from None

    def memory_key(self, prefix: Sequence[int]) -> Hashable:
        return ()


class ScriptedStrategy(StrategyEvaluator):
    """Replays a fixed play; useful for refereeing written-out examples."""

    def __init__(self, player: int, script: Sequence[int]):
        self.player = player
        self.script = tuple(script)
        self.domain = 0
        for v in script:
            self.domain |= 1 << v

    def move(self, prefix: Sequence[int]) -> int:
        n = len(prefix)
        if tuple(prefix) != self.script[:n] or n >= len(self.script):
            raise OffDomain("prefix left the script", tuple(prefix))
        return self.script[n]


class RandomStrategy(StrategyEvaluator):
    """Seeded pseudo-random but pure: the move is a hash of the prefix."""

    def __init__(self, player: int, arena: Arena, seed: int = 0):
        self.player = player
        self.arena = arena
        self.seed = seed
        self.domain = arena.vertices

    def move(self, prefix: Sequence[int]) -> int:
        v = prefix[-1]
        succs = self.arena.successors[v]
        data = (self.seed, *prefix)
        h = zlib.crc32(repr(data).encode())
        return sorted(succs)[h % len(succs)]


def first_successor_strategy(arena: Arena, player: int, within: int | None = None) -> PositionalStrategy:
    """Smallest-index successor, optionally restricted to a vertex set."""
    table = {}
    for v in range(arena.vertex_count):
        choices = sorted(arena.successors[v])
        if within is not None:
            restricted = [w for w in choices if within & (1 << w)]
            choices = restricted or choices
        table[v] = choices[0]
    return PositionalStrategy(player, arena.vertices, table, "first")


def attractor_strategy(res: AttractorResult, player: int) -> PositionalStrategy:
    """Positional strategy of an attractor computation.

    Defined exactly on the attracting player's vertices of the attractor
    minus the target; every move decreases the fix-point rank.
    """
    if player != res.player:
        raise StrategyError("attractor was computed for the other player")
    return PositionalStrategy(player, res.attractor & ~res.target, res.strategy, "attractor")


# ---------------------------------------------------------------------------
# Classic cyclic-counter strategy


class NaiveZielonkaStrategy(StrategyEvaluator):
    """Winning strategy read off a decomposition, with forgetful history.

    On the winner's side a cyclic counter walks through the final rounds:
    play the recursive strategy inside the current round's sub-region,
    attract to the outside of the current child label once the opponent
    leaves it, and advance the counter on arrival.  On the loser's side
    each vertex belongs to a unique round piece: an attractor step towards
    the previously removed region, or a recursive strategy.  Sub-strategies
    always restart from the moment their region was entered.
    """

    def __init__(self, d: Decomposition, player: int):
        self.d = d
        self.player = player
        self.domain = d.region(player)
        self.arena = d.arena
        self._subs: dict[int, NaiveZielonkaStrategy] = {}
        if player == d.winner:
            # counter order: newest round first, then backwards, cyclically
            self._counter_rounds = list(reversed(d.final_rounds()))
        else:
            self._pieces: dict[int, tuple[str, RoundRecord]] = {}
            prev_u = 0
            for r in d.rounds:
                for v in _bits(r.a & ~prev_u):
                    self._pieces[v] = ("attract", r)
                for v in _bits(r.sub.region(player)):
                    self._pieces[v] = ("recurse", r)
                prev_u = r.u

    def _sub(self, r: RoundRecord) -> "NaiveZielonkaStrategy":
        s = self._subs.get(r.n)
        if s is None:
            s = NaiveZielonkaStrategy(r.sub, self.player)
            self._subs[r.n] = s
        return s

    def move(self, prefix: Sequence[int]) -> int:
        if not prefix:
            raise OffDomain("empty prefix")
        if self.player == self.d.winner:
            return self._winner_move(tuple(prefix))
        return self._loser_move(tuple(prefix))

    # -- winner side -------------------------------------------------------

    def _winner_move(self, prefix: tuple[int, ...]) -> int:
        d = self.d
        if d.tree.is_leaf:
            return self._free_move(prefix)
        rounds = self._counter_rounds
        k = len(rounds)
        c = 0
        mode: tuple | None = None
        for t, v in enumerate(prefix):
            vb = 1 << v
            if not (self.domain & vb):
                raise OffDomain(f"left the winning region at {v}", prefix)
            hops = 0
            while hops < k and (rounds[c].z & vb):
                c = (c + 1) % k
                hops += 1
            if hops == k:
                mode = ("free",)
                continue
            r = rounds[c]
            if r.sub.region(self.player) & vb:
                if mode is None or mode[0] != "recurse" or mode[1] is not r:
                    mode = ("recurse", r, t)
            else:
                mode = ("attract", r)
        assert mode is not None
        if mode[0] == "free":
            return self._free_move(prefix)
        if mode[0] == "attract":
            r = mode[1]
            try:
                return r.z_attractor.strategy[prefix[-1]]
            except KeyError:
                raise OffDomain("attractor step undefined", prefix) from None
        _, r, entry = mode
        return self._sub(r).move(prefix[entry:])

    def _free_move(self, prefix: tuple[int, ...]) -> int:
        v = prefix[-1]
        for w in sorted(self.arena.successors[v]):
            if self.domain & (1 << w):
                return w
        raise OffDomain(f"no successor of {v} stays in the region", prefix)

    # -- loser side --------------------------------------------------------

    def _loser_move(self, prefix: tuple[int, ...]) -> int:
        v = prefix[-1]
        piece = self._pieces.get(v)
        if piece is None:
            raise OffDomain(f"vertex {v} is outside the region", prefix)
        kind, r = piece
        if kind == "attract":
            try:
                return r.u_attractor.strategy[v]
            except KeyError:
                raise OffDomain("attractor step undefined", prefix) from None
        region = r.sub.region(self.player)
        entry = len(prefix) - 1
        while entry > 0 and region & (1 << prefix[entry - 1]):
            entry -= 1
        return self._sub(r).move(prefix[entry:])


def naive_zielonka_strategy(d: Decomposition, player: int) -> NaiveZielonkaStrategy:
    if d.region(player) == 0:
        raise StrategyError("player's region is empty")
    return NaiveZielonkaStrategy(d, player)


# ---------------------------------------------------------------------------
# Score-bounding strategies


_BOT = None  # counter value "no child selected"


class ScoreBoundingStrategy(StrategyEvaluator):
    """Score-bounding strategy of one player for their winning region.

    The root-label owner's side selects a child of the root by the
    indicator of the play so far (the union of all opponent sets that have
    scored or accumulated), sticks with it while the play stays inside its
    label, and hands the longest in-region history suffix to the recursive
    strategy.  The other side mirrors the classic region dispatch but also
    carries the history suffix.  Either way every opponent set is kept at
    score 2 or less.
    """

    def __init__(self, d: Decomposition, player: int, cached: bool = True):
        self.d = d
        self.player = player
        self.cached = cached
        self.arena = d.arena
        self.domain = d.region(player)
        self._subs: dict[int, ScoreBoundingStrategy] = {}
        self._entries: dict[tuple[int, tuple[int, ...]], int] = {}
        if player == d.winner:
            self._rounds = list(d.final_rounds())  # ascending round index
            self._family = player_family(d.condition, 1 - player)
            self._states: dict[tuple[int, ...], tuple[ScoreChain | None, int | None]] = {}
        else:
            self._pieces: dict[int, tuple[str, RoundRecord]] = {}
            prev_u = 0
            for r in d.rounds:
                for v in _bits(r.a & ~prev_u):
                    self._pieces[v] = ("attract", r)
                for v in _bits(r.sub.region(player)):
                    self._pieces[v] = ("recurse", r)
                prev_u = r.u

    def _sub(self, r: RoundRecord) -> "ScoreBoundingStrategy":
        s = self._subs.get(r.n)
        if s is None:
            s = ScoreBoundingStrategy(r.sub, self.player, self.cached)
            self._subs[r.n] = s
        return s

    def move(self, prefix: Sequence[int]) -> int:
        if not prefix:
            raise OffDomain("empty prefix")
        prefix = tuple(prefix)
        v = prefix[-1]
        if not (self.domain & (1 << v)):
            raise OffDomain(f"vertex {v} is outside the region", prefix)
        if self.player == self.d.winner:
            return self._owner_move(prefix)
        return self._other_move(prefix)

    # -- side of the root-label owner ---------------------------------------

    def counter_value(self, prefix: tuple[int, ...]) -> int | None:
        """Round index of the currently selected child, or None."""
        return self._state(tuple(prefix))[1]

    def _state(self, prefix: tuple[int, ...]) -> tuple[ScoreChain | None, int | None]:
        if not self.cached:
            chain: ScoreChain | None = None
            c: int | None = _BOT
            for v in prefix:
                chain = chain_init(v) if chain is None else chain_update(chain, v)
                c = self._c_step(c, v, chain)
            return chain, c
        known = self._states.get(prefix)
        if known is not None:
            return known
        missing = []
        p = prefix
        while p and p not in self._states:
            missing.append(p[-1])
            p = p[:-1]
        chain, c = self._states[p] if p else (None, _BOT)
        if len(self._states) > 200_000:
            self._states.clear()
        while missing:
            v = missing.pop()
            chain = chain_init(v) if chain is None else chain_update(chain, v)
            c = self._c_step(c, v, chain)
            p = p + (v,)
            self._states[p] = (chain, c)
        return self._states[prefix]

    def _c_step(self, prev: int | None, v: int, chain: ScoreChain) -> int | None:
        if not self._rounds:
            return _BOT
        vb = 1 << v
        if prev is not _BOT and (self._round_by_n(prev).tree.label & vb):
            return prev
        ind = indicator_from_chain(chain, self._family)
        if ind:
            for r in self._rounds:
                if ind & ~r.tree.label == 0:
                    return r.n
            raise AssertionError("indicator set fits no child label")
        for r in self._rounds:
            if r.tree.label & vb:
                return r.n
        return _BOT

    def _round_by_n(self, n: int) -> RoundRecord:
        return self._rounds[n - self._rounds[0].n]

    def _owner_move(self, prefix: tuple[int, ...]) -> int:
        if self.d.tree.is_leaf:
            return self._free_move(prefix)
        v = prefix[-1]
        vb = 1 << v
        _, c = self._state(prefix)
        if c is _BOT:
            return self._free_move(prefix)
        r = self._round_by_n(c)
        assert r.tree.label & vb, "selected child label excludes the current vertex"
        region = r.sub.region(self.player)
        if region & vb:
            return self._sub(r).move(self._carried(prefix, region))
        try:
            return r.z_attractor.strategy[v]
        except KeyError:
            raise OffDomain("attractor step undefined", prefix) from None

    def _carried(self, prefix: tuple[int, ...], region: int) -> tuple[int, ...]:
        """``w'v`` with ``w'`` the longest in-region suffix of ``w``;
        memoised so that step-by-step play extends in constant work."""
        if not self.cached:
            return _carried_suffix(prefix, region)
        key = (region, prefix)
        entry = self._entries.get(key)
        if entry is None:
            if len(prefix) >= 2 and region & (1 << prefix[-2]):
                parent = self._entries.get((region, prefix[:-1]))
                entry = parent if parent is not None else _entry_index(prefix, region)
            else:
                entry = len(prefix) - 1
            if len(self._entries) > 200_000:
                self._entries.clear()
            self._entries[key] = entry
        return prefix[entry:]

    def _free_move(self, prefix: tuple[int, ...]) -> int:
        v = prefix[-1]
        for w in sorted(self.arena.successors[v]):
            if self.domain & (1 << w):
                return w
        raise OffDomain(f"no successor of {v} stays in the region", prefix)

    # -- other side ----------------------------------------------------------

    def _other_move(self, prefix: tuple[int, ...]) -> int:
        v = prefix[-1]
        piece = self._pieces.get(v)
        if piece is None:
            raise OffDomain(f"vertex {v} is outside the region", prefix)
        kind, r = piece
        if kind == "attract":
            try:
                return r.u_attractor.strategy[v]
            except KeyError:
                raise OffDomain("attractor step undefined", prefix) from None
        region = r.sub.region(self.player)
        return self._sub(r).move(self._carried(prefix, region))


def _entry_index(prefix: tuple[int, ...], region: int) -> int:
    entry = len(prefix) - 1
    while entry > 0 and region & (1 << prefix[entry - 1]):
        entry -= 1
    return entry


def _carried_suffix(prefix: tuple[int, ...], region: int) -> tuple[int, ...]:
    """``w'v`` where ``w'`` is the longest suffix of ``w`` inside ``region``."""
    return prefix[_entry_index(prefix, region):]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def score_bounding_strategy(d: Decomposition, player: int, cached: bool = True) -> ScoreBoundingStrategy:
    """The score-bounding strategy of ``player``, whichever side they are on."""
    if d.region(player) == 0:
        raise StrategyError("player's region is empty")
    return ScoreBoundingStrategy(d, player, cached)


def sigma_star(d: Decomposition, cached: bool = True) -> ScoreBoundingStrategy:
    """Score-bounding strategy for the player who loses the root label."""
    return score_bounding_strategy(d, 1 - d.winner, cached)


def tau_star(d: Decomposition, cached: bool = True) -> ScoreBoundingStrategy:
    """Score-bounding strategy for the player who owns the root label."""
    return score_bounding_strategy(d, d.winner, cached)


# ---------------------------------------------------------------------------
# Change points


@dataclass(frozen=True)
class ChangePointTrace:
    positions: tuple[int, ...]
    values: tuple[int | None, ...]


def trace_change_points(d: Decomposition, play: Sequence[int]) -> ChangePointTrace:
    """Positions where the owner strategy's child selection changes.

    Position 0 is always a change point.  The play must be consistent with
    the owner's score-bounding strategy at every owner-controlled step.
    """
    play = tuple(play)
    if not play:
        raise InconsistentPlay("empty play")
    strat = ScoreBoundingStrategy(d, d.winner, cached=True)
    positions = []
    values = []
    prev: int | None = _BOT
    for t in range(len(play)):
        prefix = play[: t + 1]
        if not (d.region(d.winner) & (1 << play[t])):
            raise InconsistentPlay(f"play leaves the owner region at step {t}")
        c = strat.counter_value(prefix)
        if t == 0 or c != prev:
            positions.append(t)
            values.append(c)
        prev = c
        if t + 1 < len(play) and d.arena.owner[play[t]] == d.winner:
            expected = strat.move(prefix)
            if expected != play[t + 1]:
                raise InconsistentPlay(
                    f"step {t + 1} plays {play[t + 1]}, strategy plays {expected}"
                )
    return ChangePointTrace(tuple(positions), tuple(values))
