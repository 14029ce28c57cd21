"""Scores, accumulators and the incremental score chain of a finite play.

The score of a vertex set ``F`` after a finite play ``w`` is the largest
``k`` such that some suffix of ``w`` splits into ``k`` consecutive blocks
whose occurrence set is exactly ``F``.  The accumulator of ``F`` is the
occurrence set of the longest suffix that stays inside ``F`` and along
which the score of ``F`` is constant - the progress made towards the next
score increase.

Two independent implementations live here:

* :func:`score` / :func:`accumulator` / :func:`definitional_profile`
  recompute values from the suffix-decomposition definition; they are the
  ground truth the tests check everything else against.
* :class:`ScoreChain` carries all non-zero scores incrementally, one
  update per played vertex.  The sets with non-zero score after any play
  are exactly the occurrence sets of its suffixes, which are totally
  ordered by inclusion, so a play needs at most ``|V|`` live entries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

Play = Sequence[int]


class ScoringError(ValueError):
    pass


class LengthOverflow(ScoringError):
    """A generated word would exceed the configured length budget."""


# ---------------------------------------------------------------------------
# Definitional recomputation


def score_prefixes(f_set: int, play: Play) -> list[int]:
    """Score of ``f_set`` after every prefix of ``play``.

    ``result[m]`` is the score after ``play[:m]`` (``result[0]`` is 0 for
    the empty prefix).  Direct dynamic program over block decompositions:
    a decomposition ending at ``m`` is one block ``play[i:m]`` with
    occurrence set exactly ``f_set`` on top of the best decomposition
    ending at ``i``.
    """
    n = len(play)
    ends = [0] * (n + 1)
    for m in range(1, n + 1):
        occ = 0
        best = 0
        for i in range(m - 1, -1, -1):
            b = 1 << play[i]
            if b & ~f_set:
                break
            occ |= b
            if occ == f_set and ends[i] + 1 > best:
                best = ends[i] + 1
        ends[m] = best
    return ends


def score(f_set: int, play: Play) -> int:
    """Number of consecutive trailing blocks of ``play`` with occurrence
    set exactly ``f_set``."""
    if not play:
        raise ScoringError("score of an empty play")
    return score_prefixes(f_set, play)[-1]


def accumulator(f_set: int, play: Play) -> int:
    """Occurrence set of the longest suffix inside ``f_set`` along which
    the score of ``f_set`` never changes."""
    if not play:
        raise ScoringError("accumulator of an empty play")
    ends = score_prefixes(f_set, play)
    final = ends[-1]
    occ = 0
    for j in range(len(play) - 1, -1, -1):
        b = 1 << play[j]
        if b & ~f_set or ends[j] != final:
            break
        occ |= b
    return occ


def definitional_profile(f_set: int, play: Play) -> tuple[list[int], list[int]]:
    """Per-prefix scores and accumulators of one set, recomputed rather
    than carried.

    Equivalent to calling :func:`score` and :func:`accumulator` on every
    prefix, but runs in linear time: for each prefix the candidate block
    starts form one contiguous index range (between the last vertex outside
    ``f_set`` and the point where all of ``f_set`` has been seen), so a
    sliding-window maximum over earlier scores yields the new score, and
    the accumulator is the occurrence set of the window back to the last
    score change.
    """
    n = len(play)
    scores = [0] * (n + 1)
    accs = [0] * (n + 1)
    want = f_set.bit_count()
    member_last: dict[int, int] = {}
    last_out = -1
    chg = 0  # last prefix index where the score value changed
    window: deque[int] = deque()  # indices with decreasing scores
    pushed = 0
    # occurrence window [acc_lo, m) for the accumulator
    counts: dict[int, int] = {}
    occ = 0
    acc_lo = 0

    def advance_acc_lo(target: int) -> None:
        # only positions inside f_set were ever counted
        nonlocal acc_lo, occ
        while acc_lo < target:
            u = play[acc_lo]
            if (1 << u) & f_set:
                counts[u] -= 1
                if counts[u] == 0:
                    occ &= ~(1 << u)
            acc_lo += 1

    for m in range(1, n + 1):
        v = play[m - 1]
        b = 1 << v
        if b & ~f_set:
            last_out = m - 1
            advance_acc_lo(m)
            continue
        member_last[v] = m - 1
        hi = min(member_last.values()) if len(member_last) == want else -1
        lo = last_out + 1
        if hi >= lo:
            while pushed <= hi:
                while window and scores[window[-1]] <= scores[pushed]:
                    window.pop()
                window.append(pushed)
                pushed += 1
            while window and window[0] < lo:
                window.popleft()
            scores[m] = scores[window[0]] + 1
        if scores[m] != scores[m - 1]:
            chg = m
        counts[v] = counts.get(v, 0) + 1
        occ |= b
        advance_acc_lo(max(lo, chg))
        accs[m] = occ
    return scores, accs


def max_score(family: Iterable[int] | None, play: Play) -> int:
    """Highest score any set of ``family`` reaches at any prefix of ``play``.

    ``family=None`` means the full power set.  Only occurrence sets of
    suffixes ever score, so the running chain is scanned instead of the
    family; an explicit empty family yields 0.
    """
    fam = None if family is None else frozenset(family)
    if fam is not None and not fam:
        return 0
    best = 0
    chain: ScoreChain | None = None
    for v in play:
        chain = chain_init(v) if chain is None else chain_update(chain, v)
        for e in chain.entries:
            if e.score > best and (fam is None or e.vertices in fam):
                best = e.score
    return best


# ---------------------------------------------------------------------------
# Incremental chain


class ChainEntry(NamedTuple):
    vertices: int
    score: int
    accumulator: int


@dataclass(frozen=True)
class ScoreChain:
    """All non-zero scores of a play, smallest set first.

    Entry sets are exactly the occurrence sets of the play's suffixes;
    they form a strict inclusion chain and all contain ``last_vertex``,
    so there are at most ``|V|`` of them.  Accumulators are strict
    subsets of their entry's set (empty right after a score increase).
    """

    entries: tuple[ChainEntry, ...]
    last_vertex: int

    def entry(self, f_set: int) -> ChainEntry | None:
        for e in self.entries:
            if e.vertices == f_set:
                return e
        return None

    def score_of(self, f_set: int) -> int:
        e = self.entry(f_set)
        return e.score if e else 0

    def accumulator_of(self, f_set: int) -> int:
        """Accumulator of an arbitrary set, derived from the chain.

        For a set that is not an entry the accumulator is the occurrence
        set of the longest suffix inside it, i.e. the largest entry set it
        contains (its score never changed along that suffix: it is 0).
        """
        e = self.entry(f_set)
        if e is not None:
            return e.accumulator
        best = 0
        for entry in self.entries:
            if entry.vertices & ~f_set == 0:
                best = entry.vertices
            else:
                break
        return best

    def max_entry_score(self) -> int:
        return max((e.score for e in self.entries), default=0)


def chain_init(v: int) -> ScoreChain:
    """Chain of the one-vertex play ``v``: its only suffix set scores once."""
    return ScoreChain((ChainEntry(1 << v, 1, 0),), v)


def chain_update(chain: ScoreChain, v: int) -> ScoreChain:
    """Chain of ``w`` extended by ``v``, given the chain of ``w``.

    The suffix sets of ``wv`` are ``{v}`` and ``T | {v}`` for every old
    suffix set ``T``.  A surviving entry (one containing ``v``) grows its
    accumulator by ``v`` and scores when the accumulator fills the set; a
    set not containing ``v`` is dropped (score reset to 0); a newly formed
    set completes its first block the moment it appears.
    """
    vb = 1 << v
    old = {e.vertices: e for e in chain.entries}
    entries: list[ChainEntry] = []
    prev = 0
    for s in (vb, *(e.vertices | vb for e in chain.entries)):
        if s == prev:
            continue
        prev = s
        e = old.get(s)
        if e is None:
            entries.append(ChainEntry(s, 1, 0))
        else:
            acc = e.accumulator | vb
            if acc == s:
                entries.append(ChainEntry(s, e.score + 1, 0))
            else:
                entries.append(ChainEntry(s, e.score, acc))
    return ScoreChain(tuple(entries), v)


def run_chain(play: Play) -> ScoreChain:
    if not play:
        raise ScoringError("chain of an empty play")
    chain = chain_init(play[0])
    for v in play[1:]:
        chain = chain_update(chain, v)
    return chain


def chain_states(play: Play) -> list[ScoreChain]:
    """Chain after every non-empty prefix of ``play``."""
    if not play:
        return []
    states = [chain_init(play[0])]
    for v in play[1:]:
        states.append(chain_update(states[-1], v))
    return states


def threshold_hit(before: ScoreChain, after: ScoreChain, k: int) -> int | None:
    """The unique set whose score reached ``k`` in this update, if any.

    Requires ``k >= 2`` and that no entry of ``before`` had already
    reached ``k``; under these conditions two distinct sets can never hit
    the threshold simultaneously, which is asserted rather than assumed.
    """
    if k < 2:
        raise ScoringError("threshold must be at least 2")
    hits = [e.vertices for e in after.entries if e.score >= k]
    if not hits:
        return None
    assert all(e.score < k for e in before.entries), "threshold was already hit"
    assert len(hits) == 1, f"two sets reached the threshold at once: {hits}"
    return hits[0]


# ---------------------------------------------------------------------------
# Derived notions


def is_burden(play: Play, family: Iterable[int]) -> bool:
    """True iff ``play`` never let any family set score above 2 and every
    family set currently sits at score 0, or at score 1 with an empty
    accumulator."""
    if not play:
        raise ScoringError("burden check on an empty play")
    fam = frozenset(family)
    chain: ScoreChain | None = None
    for v in play:
        chain = chain_init(v) if chain is None else chain_update(chain, v)
        for e in chain.entries:
            if e.score > 2 and e.vertices in fam:
                return False
    assert chain is not None
    for f in fam:
        e = chain.entry(f)
        if e is None:
            continue
        if e.score == 0 or (e.score == 1 and e.accumulator == 0):
            continue
        return False
    return True


def indicator(play: Play, f0: Iterable[int]) -> int:
    """Union of every listed set with positive score and of every listed
    set's non-empty accumulator."""
    if not play:
        raise ScoringError("indicator of an empty play")
    return indicator_from_chain(run_chain(play), f0)


def indicator_from_chain(chain: ScoreChain, f0: Iterable[int]) -> int:
    # every listed set with a positive score is an entry, every listed
    # set's accumulator is the largest entry it contains, and entries are
    # nested - so the whole union collapses to the largest entry that
    # fits inside some listed set
    fam = f0 if isinstance(f0, (tuple, list, frozenset, set)) else tuple(f0)
    for e in reversed(chain.entries):
        s = e.vertices
        for f in fam:
            if s & ~f == 0:
                return s
    return 0


# ---------------------------------------------------------------------------
# Tight low-score words


def low_score_word(k: int, n: int, limit: int = 1_000_000) -> tuple[int, ...]:
    """Word of length ``k**n - 1`` over letters ``1..n`` whose maximal
    score over all sets stays below ``k``.

    Built by the recurrence ``w(k, 1) = 1^(k-1)`` and
    ``w(k, n) = (w(k, n-1) n)^(k-1) w(k, n-1)``.
    """
    if k < 1 or n < 1:
        raise ScoringError("k and n must be positive")
    length = k**n - 1
    if length > limit:
        raise LengthOverflow(f"word would have length {length}, budget is {limit}")
    word: tuple[int, ...] = (1,) * (k - 1)
    for letter in range(2, n + 1):
        word = (word + (letter,)) * (k - 1) + word
    return word


def occurrence_set(play: Play) -> int:
    m = 0
    for v in play:
        m |= 1 << v
    return m


def suffix_occurrence_sets(play: Play) -> list[int]:
    """Occurrence sets of all non-empty suffixes, smallest first."""
    seen = 0
    sets: list[int] = []
    for v in reversed(play):
        grown = seen | (1 << v)
        if grown != seen:
            sets.append(grown)
            seen = grown
    return sets


__all__ = [
    "ChainEntry",
    "LengthOverflow",
    "Play",
    "ScoreChain",
    "ScoringError",
    "accumulator",
    "chain_init",
    "chain_states",
    "chain_update",
    "definitional_profile",
    "indicator",
    "indicator_from_chain",
    "is_burden",
    "low_score_word",
    "max_score",
    "occurrence_set",
    "run_chain",
    "score",
    "score_prefixes",
    "suffix_occurrence_sets",
    "threshold_hit",
]
