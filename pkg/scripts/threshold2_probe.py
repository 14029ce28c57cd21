#!/usr/bin/env python3
"""Experimental probe: does stopping already at score 2 preserve winners?

Whether the finite-duration game with threshold 2 has the same winning
regions as the infinite game is an open question; this script makes no
correctness claim either way.  It compares the uniform(2) winner map with
the solver's regions over the bundled corpus plus extra random games and
logs every mismatch it finds.
"""

import argparse
import random

from muller_hurry.arena import Arena
from muller_hurry.bitset import format_set, submasks
from muller_hurry.conditions import build_zielonka_tree, condition
from muller_hurry.corpus import corpus_games
from muller_hurry.finite_time import finite_time_regions, uniform_rule
from muller_hurry.gamefile import GameFile, print_game
from muller_hurry.zielonka import solve


def probe(name: str, gf: GameFile) -> bool:
    d = solve(gf.arena, build_zielonka_tree(gf.cond), gf.cond)
    w0, w1 = finite_time_regions(gf.arena, gf.cond, uniform_rule(2))
    if (w0, w1) == (d.w0, d.w1):
        return True
    print(f"MISMATCH {name}: infinite W0={format_set(d.w0)} vs threshold-2 W0={format_set(w0)}")
    print(print_game(gf))
    return False


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--extra", type=int, default=500, help="extra random games")
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--seed", type=int, default=2)
    args = parser.parse_args()

    agree = total = 0
    for name, gf in corpus_games():
        total += 1
        agree += probe(name, gf)

    rng = random.Random(args.seed)
    for i in range(args.extra):
        nv = rng.randint(1, args.max_vertices)
        owner = tuple(rng.randint(0, 1) for _ in range(nv))
        succ = tuple(
            tuple(sorted(rng.sample(range(nv), rng.randint(1, nv)))) for _ in range(nv)
        )
        arena = Arena(owner, succ)
        f0 = [s for s in submasks(arena.vertices) if s and rng.random() < 0.5]
        gf = GameFile(arena, condition(arena.vertices, f0), None)
        total += 1
        agree += probe(f"random-{i}", gf)

    print(f"threshold-2 winner map agreed on {agree}/{total} games")
    if agree == total:
        print("no counterexample found (which proves nothing)")


if __name__ == "__main__":
    main()
