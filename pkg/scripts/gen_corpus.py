#!/usr/bin/env python3
"""Write the bundled corpus games to corpus/*.mg (deterministic)."""

from pathlib import Path

from muller_hurry.corpus import corpus_games
from muller_hurry.gamefile import print_game

def main() -> None:
    out = Path(__file__).resolve().parents[1] / "corpus"
    out.mkdir(exist_ok=True)
    for name, gf in corpus_games():
        path = out / f"{name}.mg"
        path.write_text(print_game(gf), encoding="utf-8")
        print(f"wrote {path}")

if __name__ == "__main__":
    main()
