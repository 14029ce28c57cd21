import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muller_hurry.arena import (
    Arena,
    ArenaError,
    NotASubarena,
    attractor,
    induces_subarena,
    is_trap,
    subarena,
)
from muller_hurry.bitset import bit, iter_members, mask_of, members

from conftest import hyp_arenas


@pytest.fixture
def tri_arena():
    return Arena(owner=(1, 0, 1), successors=((0, 1), (0, 2), (1, 2)))


class TestArenaValidation:
    def test_every_vertex_needs_a_successor(self):
        with pytest.raises(ArenaError, match="no outgoing edge"):
            Arena((0, 1), ((1,), ()))

    def test_no_duplicate_successors(self):
        with pytest.raises(ArenaError, match="duplicate"):
            Arena((0,), ((0, 0),))

    def test_targets_in_range(self):
        with pytest.raises(ArenaError):
            Arena((0,), ((3,),))

    def test_vertex_limit(self):
        n = 65
        with pytest.raises(ArenaError, match="limit"):
            Arena(tuple(0 for _ in range(n)), tuple((v,) for v in range(n)))


class TestSubarena:
    def test_restriction_keeps_inner_edges(self, tri_arena):
        sub, old_of = subarena(tri_arena, mask_of([0, 1]))
        assert old_of == (0, 1)
        assert sub.successors == ((0, 1), (0,))

    def test_vertex_without_inner_successor(self, tri_arena):
        with pytest.raises(NotASubarena):
            subarena(tri_arena, mask_of([1]))

    def test_full_set_is_identity(self, tri_arena):
        sub, old_of = subarena(tri_arena, tri_arena.vertices)
        assert sub == tri_arena
        assert old_of == (0, 1, 2)


class TestAttractor:
    def test_player0_attracts_to_2(self, tri_arena):
        res = attractor(tri_arena, 0, mask_of([2]), tri_arena.vertices)
        assert members(res.attractor) == (1, 2)
        assert res.strategy == {1: 2}

    def test_player1_cannot_reach_0(self, tri_arena):
        res = attractor(tri_arena, 1, mask_of([0]), tri_arena.vertices)
        assert members(res.attractor) == (0,)

    def test_empty_target(self, tri_arena):
        res = attractor(tri_arena, 0, 0, tri_arena.vertices)
        assert res.attractor == 0
        assert res.strategy == {}

    def test_strategy_decreases_rank(self, tri_arena):
        res = attractor(tri_arena, 0, mask_of([2]), tri_arena.vertices)
        for v, w in res.strategy.items():
            assert res.rank[w] < res.rank[v]


class TestTrap:
    def test_full_vertex_set(self, tri_arena):
        assert is_trap(tri_arena, tri_arena.vertices, 0)
        assert is_trap(tri_arena, tri_arena.vertices, 1)

    def test_attractor_complement(self, tri_arena):
        att = attractor(tri_arena, 0, mask_of([2]), tri_arena.vertices).attractor
        rest = tri_arena.vertices & ~att
        assert members(rest) == (0,)
        assert is_trap(tri_arena, rest, 0)

    def test_one_two_traps_player1(self, tri_arena):
        assert is_trap(tri_arena, mask_of([1, 2]), 1)


@settings(max_examples=150, deadline=None)
@given(hyp_arenas(8), st.integers(0, 1), st.data())
def test_attractor_monotone_in_target(arena, player, data):
    full = arena.vertices
    f_small = data.draw(st.integers(0, full))
    f_big = f_small | data.draw(st.integers(0, full))
    small = attractor(arena, player, f_small & full, full).attractor
    big = attractor(arena, player, f_big & full, full).attractor
    assert small & ~big == 0


@settings(max_examples=150, deadline=None)
@given(hyp_arenas(8), st.integers(0, 1), st.data())
def test_attractor_complement_induces_trap(arena, player, data):
    f = data.draw(st.integers(0, arena.vertices))
    att = attractor(arena, player, f & arena.vertices, arena.vertices).attractor
    rest = arena.vertices & ~att
    if rest:
        subarena(arena, rest)  # must not raise
        assert is_trap(arena, rest, player)


@settings(max_examples=100, deadline=None)
@given(hyp_arenas(6), st.integers(0, 1), st.data())
def test_attractor_strategy_forces_target(arena, player, data):
    """Every opponent choice still reaches the target within rank steps."""
    target = data.draw(st.integers(1, arena.vertices))
    target &= arena.vertices
    res = attractor(arena, player, target, arena.vertices)

    def forced(v, budget):
        if target & bit(v):
            return True
        if budget == 0:
            return False
        if arena.owner[v] == player:
            return forced(res.strategy[v], budget - 1)
        return all(forced(w, budget - 1) for w in arena.successors[v])

    for v in iter_members(res.attractor):
        assert forced(v, res.rank[v])
        assert res.rank[v] <= arena.vertex_count


@settings(max_examples=100, deadline=None)
@given(hyp_arenas(7), st.integers(0, 1), st.data())
def test_attractor_agrees_with_subarena_computation(arena, player, data):
    x = data.draw(st.integers(1, arena.vertices)) & arena.vertices
    if x == 0 or not induces_subarena(arena, x):
        return
    f = data.draw(st.integers(0, arena.vertices))
    whole = attractor(arena, player, f & x, x).attractor
    sub, old_of = subarena(arena, x)
    inner = attractor(sub, player, mask_of(
        i for i, old in enumerate(old_of) if f & bit(old)
    ), sub.vertices).attractor
    lifted = mask_of(old_of[i] for i in iter_members(inner))
    assert lifted == whole
