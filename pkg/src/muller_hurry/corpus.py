"""Bundled example games.

The corpus ships the three-vertex introductory game, the loop family
``loop2..loop6`` (where the classic cyclic-counter strategy lets the
opponent's scores grow with the arena) and twenty fixed-seed random
games.  Everything is generated deterministically in code; the ``.mg``
files under ``corpus/`` are written by ``scripts/gen_corpus.py`` and must
match byte for byte.
"""

from __future__ import annotations

import random

from .arena import Arena
from .bitset import mask_of, submasks
from .conditions import condition
from .gamefile import GameFile

RANDOM_GAME_COUNT = 20
RANDOM_GAME_SEED = 0xC0FFEE


def triangle() -> GameFile:
    """Three vertices in a line with loops at both ends.

    Player 0 owns the middle vertex; her family is ``{0}``, ``{2}`` and
    ``{0,1,2}``.  She wins everywhere but cannot keep the opponent's
    scores below 2.
    """
    arena = Arena(
        owner=(1, 0, 1),
        successors=((0, 1), (0, 2), (1, 2)),
        names=("left", "mid", "right"),
    )
    cond = condition(0b111, [mask_of([0]), mask_of([2]), mask_of([0, 1, 2])])
    return GameFile(arena, cond, start=1)


def loop_game(n: int) -> GameFile:
    """Descending chain ``n -> n-1 -> ... -> 0`` with edges ``0 -> n`` and
    ``1 -> n``; all vertices belong to Player 0 and only the full vertex
    set is hers."""
    if n < 1:
        raise ValueError("need n >= 1")
    succ = []
    for v in range(n + 1):
        s = set()
        if v >= 1:
            s.add(v - 1)
        if v in (0, 1):
            s.add(n)
        succ.append(tuple(sorted(s)))
    arena = Arena(tuple(0 for _ in range(n + 1)), tuple(succ))
    cond = condition(arena.vertices, [arena.vertices])
    return GameFile(arena, cond, start=0)


def random_game(seed: int, max_vertices: int = 4) -> GameFile:
    """Deterministic random game: arena plus a random family."""
    rng = random.Random(seed)
    nv = rng.randint(1, max_vertices)
    owner = tuple(rng.randint(0, 1) for _ in range(nv))
    succ = []
    for v in range(nv):
        k = rng.randint(1, nv)
        succ.append(tuple(sorted(rng.sample(range(nv), k))))
    arena = Arena(owner, tuple(succ))
    f0 = [s for s in submasks(arena.vertices) if s and rng.random() < 0.5]
    start = rng.randrange(nv)
    return GameFile(arena, condition(arena.vertices, f0), start)


def corpus_games() -> list[tuple[str, GameFile]]:
    games: list[tuple[str, GameFile]] = [("triangle", triangle())]
    for n in range(2, 7):
        games.append((f"loop{n}", loop_game(n)))
    for i in range(RANDOM_GAME_COUNT):
        games.append((f"rand{i:02d}", random_game(RANDOM_GAME_SEED + i)))
    return games


def corpus_game(name: str) -> GameFile:
    for got, gf in corpus_games():
        if got == name:
            return gf
    raise KeyError(f"no corpus game named {name!r}")
