"""Zielonka's algorithm for Muller games.

Computes the winning regions of both players and keeps the complete
recursion record - every round's attractors, subtree and sub-solution -
because the strategy constructions need exactly this internal structure,
not just the final regions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arena import Arena, AttractorResult, attractor
from .bitset import is_subset
from .conditions import MullerCondition, ZielonkaTree, restrict


@dataclass(frozen=True)
class RoundRecord:
    """One iteration of the solver loop.

    ``u_attractor`` is the opponent-of-the-root-owner attractor to the
    previous ``U`` (its set is ``A_n``); ``z_attractor`` is the root
    owner's attractor, inside ``x``, to the part of the arena outside the
    chosen child's label.  ``sub`` is the recursive solution on ``y``.
    """

    n: int
    u_attractor: AttractorResult
    x: int
    child_index: int
    tree: ZielonkaTree
    z_attractor: AttractorResult
    y: int
    sub: "Decomposition"
    u: int

    @property
    def a(self) -> int:
        return self.u_attractor.attractor

    @property
    def z(self) -> int:
        """Vertices of this round's subarena outside the child label."""
        return self.x & ~self.tree.label


@dataclass(frozen=True)
class Decomposition:
    """Solver output: final regions plus the full recursion record.

    ``winner`` is the owner of the root label; the last ``branch`` rounds
    (one full cycle through the children) describe the stable structure of
    the winner's region, while all rounds together partition the loser's.
    """

    arena: Arena
    condition: MullerCondition
    tree: ZielonkaTree
    arena_vertices: int
    winner: int
    rounds: tuple[RoundRecord, ...]
    w0: int
    w1: int

    def region(self, player: int) -> int:
        return self.w0 if player == 0 else self.w1

    def winning_regions(self) -> tuple[int, int]:
        return self.w0, self.w1

    @property
    def branch(self) -> int:
        return len(self.tree.children)

    def final_rounds(self) -> tuple[RoundRecord, ...]:
        """The last ``branch`` rounds, ascending by round index."""
        return self.rounds[len(self.rounds) - self.branch :]


def winning_regions(d: Decomposition) -> tuple[int, int]:
    return d.winning_regions()


def solve(
    arena: Arena,
    tree: ZielonkaTree,
    cond: MullerCondition,
    active: int | None = None,
) -> Decomposition:
    """Solve the Muller game on ``arena`` (restricted to ``active``).

    ``active`` must induce a subarena contained in the tree's root label's
    universe.  Each round removes the opponent attractor of everything the
    opponent has won so far, picks the next child of the root cyclically,
    carves out the root owner's attractor to the child label's complement
    and recurses on the rest; the loop stops once a full cycle through the
    children adds nothing.
    """
    if active is None:
        active = arena.vertices
    if not is_subset(active, arena.vertices):
        raise ValueError("active set leaves the arena")
    cond = restrict(cond, tree.label) if cond.universe != tree.label else cond
    i = tree.owner
    if active == 0:
        return Decomposition(arena, cond, tree, 0, i, (), 0, 0)
    if tree.is_leaf:
        w = (active, 0) if i == 0 else (0, active)
        return Decomposition(arena, cond, tree, active, i, (), w[0], w[1])

    k = len(tree.children)
    u_hist = [0]
    rounds: list[RoundRecord] = []
    n = 0
    while True:
        n += 1
        u_att = attractor(arena, 1 - i, u_hist[-1], active)
        a_n = u_att.attractor
        x_n = active & ~a_n
        child = n % k
        t_n = tree.children[child]
        z_att = attractor(arena, i, active & ~t_n.label, x_n)
        y_n = x_n & ~z_att.attractor
        sub = solve(arena, t_n, cond, y_n)
        u_n = a_n | sub.region(1 - i)
        assert u_n & u_hist[-1] == u_hist[-1], "removed region shrank"
        rounds.append(RoundRecord(n, u_att, x_n, child, t_n, z_att, y_n, sub, u_n))
        u_hist.append(u_n)
        if n >= k and all(u_hist[n - j] == u_n for j in range(1, k + 1)):
            break

    w_winner = active & ~u_n
    regions = (w_winner, u_n) if i == 0 else (u_n, w_winner)
    assert regions[0] & regions[1] == 0
    assert regions[0] | regions[1] == active
    return Decomposition(arena, cond, tree, active, i, tuple(rounds), regions[0], regions[1])
