"""Game arenas, subarena induction, traps and attractor fix points.

An arena is a finite directed graph whose vertices are partitioned
between Player 0 and Player 1; every vertex has at least one outgoing
edge.  Vertex ids are dense in ``[0, vertex_count)`` and all vertex
sets are bit masks (see :mod:`muller_hurry.bitset`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .bitset import MAX_VERTICES, bit, full_mask, is_subset, iter_members


class ArenaError(ValueError):
    pass


class NotASubarena(ArenaError):
    """Raised when a vertex set leaves some member without a successor."""


def opponent(player: int) -> int:
    return 1 - player


@dataclass(frozen=True)
class Arena:
    """Immutable game graph.

    ``owner[v]`` is 0 or 1, ``successors[v]`` is the ordered, duplicate-free
    successor list of ``v``.  Successor order is the order of definition
    (file order for parsed games); all algorithms iterate it as given, which
    keeps every computation deterministic.
    """

    owner: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        n = len(self.owner)
        if n == 0:
            raise ArenaError("arena needs at least one vertex")
        if n > MAX_VERTICES:
            raise ArenaError(f"arena has {n} vertices, limit is {MAX_VERTICES}")
        if len(self.successors) != n:
            raise ArenaError("owner and successor tables disagree on size")
        if self.names is not None and len(self.names) != n:
            raise ArenaError("name table has wrong size")
        for v, succs in enumerate(self.successors):
            if self.owner[v] not in (0, 1):
                raise ArenaError(f"vertex {v} has invalid owner {self.owner[v]}")
            if not succs:
                raise ArenaError(f"vertex {v} has no outgoing edge")
            if len(set(succs)) != len(succs):
                raise ArenaError(f"vertex {v} has duplicate successors")
            for w in succs:
                if not 0 <= w < n:
                    raise ArenaError(f"edge {v}->{w} leaves the vertex range")

    @property
    def vertex_count(self) -> int:
        return len(self.owner)

    @property
    def vertices(self) -> int:
        """Mask of all vertices."""
        return full_mask(len(self.owner))

    def owned_by(self, player: int) -> int:
        m = 0
        for v, o in enumerate(self.owner):
            if o == player:
                m |= 1 << v
        return m

    def successor_mask(self, v: int) -> int:
        m = 0
        for w in self.successors[v]:
            m |= 1 << w
        return m

    def has_edge(self, v: int, w: int) -> bool:
        return w in self.successors[v]

    def name_of(self, v: int) -> str:
        if self.names is not None and self.names[v]:
            return self.names[v]
        return str(v)


def induces_subarena(arena: Arena, x: int) -> bool:
    """True iff every vertex of ``x`` keeps at least one successor in ``x``."""
    for v in iter_members(x):
        if arena.successor_mask(v) & x == 0:
            return False
    return True


def subarena(arena: Arena, x: int) -> tuple[Arena, tuple[int, ...]]:
    """Restrict ``arena`` to the vertex set ``x``.

    Returns the re-indexed arena together with the id map ``old_of`` such
    that new vertex ``i`` corresponds to original vertex ``old_of[i]``.
    Raises :class:`NotASubarena` if some vertex of ``x`` loses all its
    successors.
    """
    if not is_subset(x, arena.vertices):
        raise ArenaError("restriction set leaves the arena")
    old_of = tuple(iter_members(x))
    new_of = {old: new for new, old in enumerate(old_of)}
    owner = []
    succs = []
    for old in old_of:
        inside = tuple(new_of[w] for w in arena.successors[old] if x & bit(w))
        if not inside:
            raise NotASubarena(f"vertex {old} has no successor inside the set")
        owner.append(arena.owner[old])
        succs.append(inside)
    names = None
    if arena.names is not None:
        names = tuple(arena.names[old] for old in old_of)
    return Arena(tuple(owner), tuple(succs), names), old_of


@dataclass(frozen=True)
class AttractorResult:
    """Attractor set with its positional strategy and fix-point ranks.

    ``strategy`` is defined exactly on the attracting player's vertices of
    ``attractor & ~target``; every prescribed move strictly decreases
    ``rank``, so following the strategy reaches the target within
    ``rank[v]`` steps no matter what the opponent does inside ``within``.
    """

    player: int
    target: int
    within: int
    attractor: int
    strategy: Mapping[int, int] = field(hash=False)
    rank: Mapping[int, int] = field(hash=False)


def attractor(arena: Arena, player: int, target: int, within: int) -> AttractorResult:
    """Least set inside ``within`` from which ``player`` can force ``target``.

    Layered fix point: a player vertex joins when some successor is already
    attracted, an opponent vertex when all of its successors inside
    ``within`` are.  ``target`` is intersected with ``within`` first.
    """
    target_in = target & within
    att = target_in
    rank = {v: 0 for v in iter_members(target_in)}
    strategy: dict[int, int] = {}
    pending = within & ~att
    layer = 0
    while True:
        layer += 1
        added = 0
        for v in iter_members(pending):
            succs = arena.successors[v]
            if arena.owner[v] == player:
                move = next((w for w in sorted(succs) if att & bit(w)), None)
                if move is not None:
                    strategy[v] = move
                    added |= bit(v)
            else:
                inside = [w for w in succs if within & bit(w)]
                if inside and all(att & bit(w) for w in inside):
                    added |= bit(v)
        if not added:
            break
        for v in iter_members(added):
            rank[v] = layer
        att |= added
        pending &= ~added
    return AttractorResult(player, target_in, within, att, strategy, rank)


def is_trap(arena: Arena, x: int, player: int) -> bool:
    """True iff ``player`` cannot escape ``x``.

    All edges of the player's vertices in ``x`` must stay inside, and every
    opponent vertex in ``x`` must keep at least one successor inside.
    """
    for v in iter_members(x):
        succ = arena.successor_mask(v)
        if arena.owner[v] == player:
            if succ & ~x:
                return False
        else:
            if succ & x == 0:
                return False
    return True
