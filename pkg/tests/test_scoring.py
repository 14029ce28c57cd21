"""Scoring tests.

The ground truth here is a brute-force oracle that enumerates actual
block decompositions of suffixes; the definitional implementations are
checked against it on small words, and the incremental chain against the
definitional ones on larger random plays.
"""

import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muller_hurry.bitset import mask_of, submasks
from muller_hurry.corpus import triangle
from muller_hurry.scoring import (
    LengthOverflow,
    accumulator,
    chain_init,
    chain_states,
    chain_update,
    definitional_profile,
    indicator,
    is_burden,
    low_score_word,
    max_score,
    occurrence_set,
    run_chain,
    score,
    suffix_occurrence_sets,
    threshold_hit,
)

from conftest import hyp_plays


def brute_score(f_set, play):
    """Enumerate every suffix and every decomposition into blocks."""

    @lru_cache(maxsize=None)
    def blocks(seq):
        if not seq:
            return 0
        best = -1
        for cut in range(1, len(seq) + 1):
            if occurrence_set(seq[:cut]) == f_set:
                rest = blocks(seq[cut:])
                if rest >= 0:
                    best = max(best, 1 + rest)
        return best

    result = max(blocks(tuple(play[i:])) for i in range(len(play)))
    return max(result, 0)


def brute_accumulator(f_set, play):
    """Longest suffix inside the set with unchanged score, verbatim."""
    n = len(play)
    full = brute_score(f_set, play)
    best = 0
    for start in range(n, -1, -1):
        x = play[start:]
        if occurrence_set(x) & ~f_set:
            continue
        if all(brute_score_or_zero(f_set, play[:m]) == full for m in range(start, n + 1)):
            best = occurrence_set(x)
    return best


def brute_score_or_zero(f_set, play):
    return brute_score(f_set, play) if play else 0


W = tuple(int(c) for c in "100122121")


class TestWorkedExamples:
    def test_score_of_12_is_3(self):
        assert score(mask_of([1, 2]), W) == 3

    def test_score_of_01_after_1001(self):
        assert score(mask_of([0, 1]), (1, 0, 0, 1)) == 2

    def test_single_vertex(self):
        assert score(1 << 4, (4,)) == 1

    def test_accumulator_resets_on_increment(self):
        assert accumulator(mask_of([1, 2]), W) == 0

    def test_accumulator_examples(self):
        assert accumulator(mask_of([1, 2]), tuple(int(c) for c in "10012212")) == mask_of([2])
        assert accumulator(mask_of([0, 1]), (2,)) == 0  # last vertex outside

    def test_max_score(self):
        assert max_score([mask_of([1, 2])], W) == 3
        assert max_score([], W) == 0
        assert max_score(None, low_score_word(3, 2)) == 2


class TestAgainstBruteForce:
    @settings(max_examples=120, deadline=None)
    @given(hyp_plays(max_vertices=3, max_length=9), st.integers(0, 7))
    def test_score_matches_decomposition_enumeration(self, play, f_set):
        assert score(f_set, play) == brute_score(f_set, play)

    @settings(max_examples=120, deadline=None)
    @given(hyp_plays(max_vertices=3, max_length=8), st.integers(0, 7))
    def test_accumulator_matches_verbatim_definition(self, play, f_set):
        assert accumulator(f_set, play) == brute_accumulator(f_set, play)

    @settings(max_examples=80, deadline=None)
    @given(hyp_plays(max_vertices=3, max_length=8), st.integers(0, 7))
    def test_profile_matches_brute_force_on_all_prefixes(self, play, f_set):
        scores, accs = definitional_profile(f_set, play)
        for m in range(1, len(play) + 1):
            assert scores[m] == brute_score(f_set, play[:m])
            assert accs[m] == brute_accumulator(f_set, play[:m])

    @settings(max_examples=60, deadline=None)
    @given(hyp_plays(max_vertices=3, max_length=10))
    def test_max_score_matches_definitional(self, play):
        fam = [s for s in submasks(occurrence_set(play))]
        want = max(
            (score(f, play[:m]) for f in fam for m in range(1, len(play) + 1)),
            default=0,
        )
        assert max_score(fam, play) == want == max_score(None, play)


class TestChain:
    def test_init(self):
        ch = chain_init(1)
        assert [(e.vertices, e.score, e.accumulator) for e in ch.entries] == [(0b10, 1, 0)]
        assert ch.last_vertex == 1

    def test_update_example(self):
        ch = run_chain((1, 2))
        assert [(e.vertices, e.score) for e in ch.entries] == [(0b100, 1), (0b110, 1)]
        grown = chain_update(ch, 0)
        assert [(e.vertices, e.score, e.accumulator) for e in grown.entries] == [
            (0b001, 1, 0),
            (0b101, 1, 0),
            (0b111, 1, 0),
        ]

    def test_score_3_example(self):
        ch = run_chain(tuple(int(c) for c in "10012212"))
        grown = chain_update(ch, 1)
        entry = grown.entry(mask_of([1, 2]))
        assert entry.score == 3 and entry.accumulator == 0

    @settings(max_examples=200, deadline=None)
    @given(hyp_plays(max_vertices=6, max_length=60))
    def test_chain_equals_definitional_on_every_prefix(self, play):
        states = chain_states(play)
        for m, ch in enumerate(states, start=1):
            prefix = play[:m]
            expected_sets = suffix_occurrence_sets(prefix)
            assert [e.vertices for e in ch.entries] == expected_sets
            for e in ch.entries:
                assert e.score == score(e.vertices, prefix)
                assert e.accumulator == accumulator(e.vertices, prefix)

    @settings(max_examples=150, deadline=None)
    @given(hyp_plays(max_vertices=6, max_length=60), st.integers(0, 63))
    def test_derived_accumulator_for_arbitrary_sets(self, play, f_set):
        f_set &= (1 << 6) - 1
        ch = run_chain(play)
        assert ch.accumulator_of(f_set) == accumulator(f_set, play)
        assert ch.score_of(f_set) == score(f_set, play)

    @settings(max_examples=200, deadline=None)
    @given(hyp_plays(max_vertices=6, max_length=50))
    def test_chain_is_an_inclusion_chain(self, play):
        for ch in chain_states(play):
            sets = [e.vertices for e in ch.entries]
            assert len(sets) <= 6
            assert sets[0] & (1 << ch.last_vertex)
            for a, b in zip(sets, sets[1:]):
                assert a & ~b == 0 and a != b
            for e in ch.entries:
                assert e.score >= 1
                assert e.accumulator & ~e.vertices == 0 and e.accumulator != e.vertices

    @settings(max_examples=150, deadline=None)
    @given(hyp_plays(max_vertices=5, max_length=50))
    def test_step_monotonicity(self, play):
        states = chain_states(play)
        for before, after, v in zip(states, states[1:], play[1:]):
            olds = {e.vertices: e.score for e in before.entries}
            for e in after.entries:
                assert e.score - olds.get(e.vertices, 0) <= 1
            for s, sc in olds.items():
                if not s & (1 << v):
                    assert after.entry(s) is None  # reset


class TestThresholdHit:
    def test_final_step_of_worked_example(self):
        states = chain_states(W)
        hit = threshold_hit(states[-2], states[-1], 3)
        assert hit == mask_of([1, 2])

    def test_no_hit(self):
        states = chain_states((0, 1))
        assert threshold_hit(states[0], states[1], 2) is None

    def test_unique_first_hit_exhaustively(self):
        """All plays of length <= 2^|V| on three small arenas, k = 2."""
        from muller_hurry.arena import Arena

        arenas = [
            triangle().arena,
            Arena((0, 1), ((0, 1), (0, 1))),
            Arena((1, 0, 1), ((1, 2), (0, 2), (0, 1, 2))),
        ]
        for arena in arenas:
            bound = 2 ** arena.vertex_count
            def plays(prefix):
                yield prefix
                if len(prefix) < bound + 1:
                    for w in arena.successors[prefix[-1]]:
                        yield from plays(prefix + (w,))
            for start in range(arena.vertex_count):
                for play in plays((start,)):
                    states = chain_states(play)
                    for before, after in zip(states, states[1:]):
                        if before.max_entry_score() < 2:
                            threshold_hit(before, after, 2)  # asserts uniqueness


class TestBurden:
    def test_single_vertex_is_burden(self):
        assert is_burden((3,), [mask_of([3]), mask_of([1, 3])])

    def test_score_2_is_not(self):
        assert not is_burden((1, 0, 0, 1), [mask_of([0, 1])])

    def test_score_1_empty_accumulator(self):
        assert is_burden((1, 2), [mask_of([1, 2])])
        assert not is_burden((1, 2, 2), [mask_of([1, 2]), mask_of([2])])  # {2} scored, acc grows

    @settings(max_examples=100, deadline=None)
    @given(hyp_plays(max_vertices=4, max_length=30), st.data())
    def test_burden_matches_definitional(self, play, data):
        universe = (1 << 4) - 1
        fam = data.draw(st.sets(st.integers(1, universe), max_size=8))
        want = max_score(fam, play) <= 2 and all(
            score(f, play) == 0 or (score(f, play) == 1 and accumulator(f, play) == 0)
            for f in fam
        )
        assert is_burden(play, fam) == want


class TestIndicator:
    def test_empty_family(self):
        assert indicator(W, []) == 0

    def test_no_scores_no_accumulators(self):
        assert indicator((3,), [mask_of([1, 2])]) == 0

    @settings(max_examples=120, deadline=None)
    @given(hyp_plays(max_vertices=4, max_length=25), st.data())
    def test_indicator_matches_displayed_formula(self, play, data):
        universe = (1 << 4) - 1
        fam = data.draw(st.sets(st.integers(1, universe), max_size=10))
        want = 0
        for f in fam:
            if score(f, play) > 0:
                want |= f
            want |= accumulator(f, play)
        assert indicator(play, fam) == want

    def test_triangle_example_play(self, tri):
        got = indicator(W, sorted(tri.cond.f0))
        want = 0
        for f in tri.cond.f0:
            if score(f, W) > 0:
                want |= f
            want |= accumulator(f, W)
        assert got == want


class TestLowScoreWords:
    def test_base_cases(self):
        assert low_score_word(3, 1) == (1, 1)
        assert low_score_word(2, 2) == (1, 2, 1)
        assert len(low_score_word(2, 3)) == 7
        assert max_score(None, low_score_word(2, 3)) == 1

    @pytest.mark.parametrize("k,n", [(k, n) for k in (2, 3) for n in range(1, 6)])
    def test_length_and_tightness(self, k, n):
        word = low_score_word(k, n)
        assert len(word) == k**n - 1
        assert set(word) <= set(range(1, n + 1))
        if k >= 2:
            assert max_score(None, word) == k - 1

    def test_length_budget(self):
        with pytest.raises(LengthOverflow):
            low_score_word(10, 10)

    def test_every_word_of_full_length_scores(self):
        # all words of length k^n over n letters reach score k: (k, n) = (2, 2)
        for word in itertools.product((0, 1), repeat=4):
            assert max_score(None, word) >= 2
