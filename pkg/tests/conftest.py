from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from muller_hurry.arena import Arena
from muller_hurry.bitset import submasks
from muller_hurry.conditions import MullerCondition, build_zielonka_tree, condition
from muller_hurry.corpus import corpus_games, loop_game, triangle
from muller_hurry.zielonka import solve


@pytest.fixture
def tri():
    return triangle()


@pytest.fixture
def tri_decomp(tri):
    return solve(tri.arena, build_zielonka_tree(tri.cond), tri.cond)


@pytest.fixture
def swapped_tri(tri):
    f0 = [s for s in submasks(tri.cond.universe) if s not in tri.cond.f0]
    return condition(tri.cond.universe, f0)


@pytest.fixture(scope="session")
def corpus():
    return corpus_games()


def loops(ns=(2, 3, 4, 5, 6)):
    return [(n, loop_game(n)) for n in ns]


def random_arena(rng: random.Random, max_vertices: int = 4, dense: bool = False) -> Arena:
    nv = rng.randint(1, max_vertices)
    owner = tuple(rng.randint(0, 1) for _ in range(nv))
    succ = []
    for v in range(nv):
        lo = 2 if dense and nv > 1 else 1
        k = rng.randint(min(lo, nv), nv)
        succ.append(tuple(sorted(rng.sample(range(nv), k))))
    return Arena(owner, tuple(succ))


def random_condition(rng: random.Random, universe: int, p: float = 0.5) -> MullerCondition:
    f0 = [s for s in submasks(universe) if s and rng.random() < p]
    return condition(universe, f0)


def random_muller_game(rng: random.Random, max_vertices: int = 4, dense: bool = False):
    arena = random_arena(rng, max_vertices, dense)
    return arena, random_condition(rng, arena.vertices)


# hypothesis strategies


@st.composite
def hyp_arenas(draw, max_vertices: int = 5) -> Arena:
    n = draw(st.integers(1, max_vertices))
    owner = tuple(draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    succ = []
    for _ in range(n):
        s = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))
        succ.append(tuple(sorted(s)))
    return Arena(owner, tuple(succ))


@st.composite
def hyp_conditions(draw, max_vertices: int = 5) -> MullerCondition:
    n = draw(st.integers(1, max_vertices))
    universe = (1 << n) - 1
    pool = [s for s in submasks(universe) if s]
    f0 = draw(st.sets(st.sampled_from(pool), max_size=len(pool)))
    return condition(universe, f0)


@st.composite
def hyp_games(draw, max_vertices: int = 4):
    arena = draw(hyp_arenas(max_vertices))
    pool = [s for s in submasks(arena.vertices) if s]
    f0 = draw(st.sets(st.sampled_from(pool), max_size=len(pool)))
    return arena, condition(arena.vertices, f0)


@st.composite
def hyp_plays(draw, max_vertices: int = 6, max_length: int = 60):
    n = draw(st.integers(1, max_vertices))
    return tuple(draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=max_length)))
