"""Command-line front end.

Exit codes: 0 on success, 1 when a check falsifies a game-logic claim
(``verify-bound`` seeing an opponent score above 2), 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bitset import format_set, members
from .conditions import build_zielonka_tree
from .engine import BudgetExceeded, ExhaustiveSearch, RandomSearch, referee_play, verify_bound
from .finite_time import (
    StoppingRule,
    finite_time_regions,
    mcnaughton_rule,
    uniform_rule,
)
from .gamefile import GameFile, GameSemanticError, GameSyntaxError, parse_game
from .scoring import LengthOverflow, low_score_word
from .service import FORMAT, STRATEGY_NAMES, build_engine_strategy
from .zielonka import solve

USAGE_ERROR = 2
FALSIFIED = 1


def _load_game(path: str) -> GameFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(_usage_fail(f"cannot read {path}: {exc}"))
    try:
        return parse_game(text)
    except (GameSyntaxError, GameSemanticError) as exc:
        raise SystemExit(_usage_fail(f"{path}: {exc}"))


def _usage_fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _emit_regions(args, w0: int, w1: int, extra: dict | None = None) -> None:
    if args.json:
        payload = {"format": FORMAT, "w0": list(members(w0)), "w1": list(members(w1))}
        payload.update(extra or {})
        print(json.dumps(payload))
    else:
        print(f"W0={format_set(w0)} W1={format_set(w1)}")


def cmd_solve(args) -> int:
    gf = _load_game(args.file)
    tree = build_zielonka_tree(gf.cond)
    d = solve(gf.arena, tree, gf.cond)
    _emit_regions(args, d.w0, d.w1)
    return 0


def cmd_solve_finite(args) -> int:
    gf = _load_game(args.file)
    rule = mcnaughton_rule() if args.mcnaughton else uniform_rule(args.k)
    w0, w1 = finite_time_regions(gf.arena, gf.cond, rule, state_cap=args.state_cap)
    _emit_regions(args, w0, w1, {"rule": rule.describe()})
    return 0


def _rule_from_name(name: str) -> StoppingRule | None:
    if name == "k3":
        return uniform_rule(3)
    if name == "mcnaughton":
        return mcnaughton_rule()
    return None


def cmd_play(args) -> int:
    gf = _load_game(args.file)
    rule = _rule_from_name(args.rule)
    start = args.start if args.start is not None else (gf.start if gf.start is not None else 0)
    referee_rule = rule if args.rule != "none" else None
    strategies = []
    try:
        for player, name in enumerate((args.p0, args.p1)):
            strategies.append(
                build_engine_strategy(gf, name, player, rule or uniform_rule(3), seed=args.seed)
            )
    except Exception as exc:
        return _usage_fail(f"cannot build strategy: {exc}")
    record = referee_play(
        gf.arena,
        gf.cond,
        referee_rule,
        start,
        strategies[0],
        strategies[1],
        budget=args.budget,
    )
    print("play:", " ".join(str(v) for v in record.steps))
    v = record.verdict
    if v.kind == "stopped":
        print(
            f"verdict: stopped winner={v.winner} set={format_set(v.stop_set)} step={v.step}"
        )
    elif v.kind == "lasso":
        print(f"verdict: lasso winner={v.winner} infinity={format_set(v.infinity_set)}")
    else:
        print(f"verdict: budget exhausted after {len(record.steps)} steps")
    return 0


def cmd_verify_bound(args) -> int:
    gf = _load_game(args.file)
    tree = build_zielonka_tree(gf.cond)
    d = solve(gf.arena, tree, gf.cond)
    if d.region(args.player) == 0:
        print(f"player {args.player} wins nowhere; nothing to verify")
        return 0
    if args.exhaustive:
        mode = ExhaustiveSearch(depth=args.depth)
    else:
        if args.trials is None:
            return _usage_fail("--random needs --trials")
        mode = RandomSearch(trials=args.trials, depth=args.depth or 200, seed=args.seed)
    start = gf.start if gf.start is not None and d.region(args.player) & (1 << gf.start) else None
    try:
        report = verify_bound(gf.arena, gf.cond, d, args.player, mode, start=start)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FALSIFIED
    witness = " ".join(str(v) for v in report.witness) if report.witness else "-"
    print(
        f"max opponent score: {report.max_opponent_score} "
        f"({report.mode}, explored {report.explored}, witness: {witness})"
    )
    return 0 if report.max_opponent_score <= 2 else FALSIFIED


def cmd_gen_word(args) -> int:
    try:
        word = low_score_word(args.k, args.n)
    except LengthOverflow as exc:
        return _usage_fail(str(exc))
    if args.n <= 9:
        print("".join(str(v) for v in word))
    else:
        print(",".join(str(v) for v in word))
    return 0


def cmd_serve(args) -> int:
    from .service import serve_forever

    static = Path(args.static) if args.static else None
    serve_forever(args.bind, args.port, static_dir=static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muller-hurry",
        description="Solve, referee and verify Muller games and their finite-duration variants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="winning regions via Zielonka's algorithm")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-finite", help="winning regions of the finite-duration game")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int, help="uniform stopping threshold (>= 2)")
    group.add_argument("--mcnaughton", action="store_true", help="per-set |F|!+1 thresholds")
    p.add_argument("--json", action="store_true")
    p.add_argument("--state-cap", type=int, default=5_000_000)
    p.set_defaults(func=cmd_solve_finite)

    p = sub.add_parser("play", help="referee a strategy-vs-strategy play")
    p.add_argument("file")
    p.add_argument("--p0", choices=STRATEGY_NAMES, default="first")
    p.add_argument("--p1", choices=STRATEGY_NAMES, default="first")
    p.add_argument("--start", type=int)
    p.add_argument("--rule", choices=("k3", "mcnaughton", "none"), default="k3")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify-bound", help="search for opponent scores above 2")
    p.add_argument("file")
    p.add_argument("--player", type=int, choices=(0, 1), required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--random", action="store_true")
    p.add_argument("--depth", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_bound)

    p = sub.add_parser("gen-word", help="tight low-score word over letters 1..n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gen_word)

    p = sub.add_parser("serve", help="run the interactive play server")
    p.add_argument("--port", type=int, default=8728)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--static", help="directory with the web client build")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve-finite" and not args.mcnaughton and (args.k is None or args.k < 2):
        return _usage_fail("--k must be at least 2")
    if args.command == "gen-word" and (args.k < 1 or args.n < 1):
        return _usage_fail("--k and --n must be positive")
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except (GameSyntaxError, GameSemanticError) as exc:
        return _usage_fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
