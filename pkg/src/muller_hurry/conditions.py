"""Muller winning conditions and their Zielonka trees.

A condition partitions the full power set of a universe ``V'`` between the
two players.  Only Player 0's family is stored explicitly; every unlisted
set (including the empty set, unless listed) belongs to Player 1.  The
Zielonka tree alternates between the players: each node is labelled with a
set owned by one player and its children carry the inclusion-maximal
subsets owned by the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .bitset import is_subset, size, submasks

TREE_UNIVERSE_LIMIT = 16


class ConditionError(ValueError):
    pass


class OutOfUniverse(ConditionError):
    """A queried set contains vertices outside the condition's universe."""


class UniverseTooLarge(ConditionError):
    """Tree construction needs brute-force subset scans; cap the universe."""


@dataclass(frozen=True)
class MullerCondition:
    universe: int
    f0: frozenset[int]

    def __post_init__(self) -> None:
        for f in self.f0:
            if not is_subset(f, self.universe):
                raise OutOfUniverse(f"listed set {f:#x} leaves universe {self.universe:#x}")


def condition(universe: int, f0) -> MullerCondition:
    return MullerCondition(universe, frozenset(f0))


def membership(cond: MullerCondition, f: int) -> int:
    """Owner of the set ``f``: 0 iff listed in ``f0``, else 1."""
    if not is_subset(f, cond.universe):
        raise OutOfUniverse(f"set {f:#x} leaves universe {cond.universe:#x}")
    return 0 if f in cond.f0 else 1


def restrict(cond: MullerCondition, x: int) -> MullerCondition:
    """The condition over universe ``x``: keeps the listed sets inside ``x``."""
    if not is_subset(x, cond.universe):
        raise OutOfUniverse(f"restriction {x:#x} leaves universe {cond.universe:#x}")
    return MullerCondition(x, frozenset(f for f in cond.f0 if is_subset(f, x)))


def player_family(cond: MullerCondition, player: int) -> tuple[int, ...]:
    """All sets owned by ``player``, deterministically ordered.

    Player 1's family is the complement of ``f0`` in the power set, so this
    enumerates all subsets of the universe; callers keep universes small.
    """
    if player == 0:
        return tuple(sorted(cond.f0))
    return tuple(sorted(s for s in submasks(cond.universe) if s not in cond.f0))


@dataclass(frozen=True)
class ZielonkaTree:
    label: int
    owner: int
    children: tuple["ZielonkaTree", ...]

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)


def _maximal_antichain(sets: list[int]) -> list[int]:
    """Inclusion-maximal members, ordered by descending size then ascending mask."""
    ordered = sorted(sets, key=lambda s: (-size(s), s))
    kept: list[int] = []
    for s in ordered:
        if not any(is_subset(s, k) for k in kept):
            kept.append(s)
    return kept


def build_zielonka_tree(cond: MullerCondition) -> ZielonkaTree:
    """Zielonka tree of the condition, children in a fixed deterministic order.

    Children of a node labelled ``L`` owned by player ``i`` are the maximal
    sets of the opponent's family restricted to ``L``, sorted by descending
    cardinality and ascending bit mask.  Construction enumerates subsets, so
    the universe is capped at 16 vertices.
    """
    if size(cond.universe) > TREE_UNIVERSE_LIMIT:
        raise UniverseTooLarge(
            f"universe has {size(cond.universe)} vertices, tree limit is {TREE_UNIVERSE_LIMIT}"
        )
    f0 = cond.f0

    @lru_cache(maxsize=None)
    def node(label: int) -> ZielonkaTree:
        # the empty set never spawns a child: infinity sets are non-empty,
        # so its side of the partition can't affect winners
        owner = 0 if label in f0 else 1
        if owner == 0:
            candidates = [s for s in submasks(label) if s and s not in f0 and s != label]
        else:
            candidates = [s for s in f0 if s and is_subset(s, label) and s != label]
        children = tuple(node(c) for c in _maximal_antichain(candidates))
        return ZielonkaTree(label, owner, children)

    tree = node(cond.universe)
    node.cache_clear()
    return tree


def iter_nodes(tree: ZielonkaTree) -> Iterator[ZielonkaTree]:
    yield tree
    for c in tree.children:
        yield from iter_nodes(c)


def tree_labels(tree: ZielonkaTree) -> list[int]:
    return [n.label for n in iter_nodes(tree)]


def describe_tree(tree: ZielonkaTree, names=None, indent: int = 0) -> str:
    from .bitset import format_set

    lines = ["  " * indent + f"{format_set(tree.label, names)} (player {tree.owner})"]
    for c in tree.children:
        lines.append(describe_tree(c, names, indent + 1))
    return "\n".join(lines)
