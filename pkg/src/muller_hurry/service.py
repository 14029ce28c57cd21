"""Interactive play sessions over a small JSON/HTTP protocol.

Endpoints (all JSON bodies):

* ``POST /games`` - create a session: ``{"game": <corpus name>}`` or
  ``{"text": <game file text>}``, plus ``rule`` (``{"kind": "k3"}``,
  ``{"kind": "uniform", "k": 4}`` or ``{"kind": "mcnaughton"}``),
  ``humanPlayer``, ``engineStrategy`` and optional ``start``.
* ``GET /games/{id}`` - session state.
* ``POST /games/{id}/move`` - human move ``{"to": vertex}``.
* ``POST /games/{id}/engine-step`` - let the engine move.
* ``GET /games/{id}/hint`` - suggested move for the side to move.
* ``GET /corpus`` - bundled games.

Sessions live in memory and are evicted after an idle TTL; the server is
the referee, clients never rescore anything.
"""

from __future__ import annotations

import json
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any

from .bitset import members, size
from .conditions import membership
from .corpus import corpus_game, corpus_games
from .engine import Verdict
from .finite_time import (
    StoppingRule,
    ThresholdOverflow,
    extract_finite_strategy,
    build_product,
    mcnaughton_rule,
    solve_reachability,
    stopped_set,
    uniform_rule,
)
from .gamefile import GameFile, GameSemanticError, GameSyntaxError, parse_game
from .scoring import ScoreChain, chain_init, chain_update
from .strategies import (
    OffDomain,
    RandomStrategy,
    StrategyEvaluator,
    first_successor_strategy,
    naive_zielonka_strategy,
    score_bounding_strategy,
)
from .conditions import build_zielonka_tree
from .zielonka import solve

FORMAT = "muller-hurry/1"
STRATEGY_NAMES = ("sigma-star", "tau-star", "naive", "finite", "random", "first")


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code


def _err(status: int, code: str, message: str) -> ServiceError:
    return ServiceError(status, code, message)


def build_engine_strategy(
    gf: GameFile, name: str, player: int, rule: StoppingRule, seed: int = 0
) -> StrategyEvaluator:
    arena, cond = gf.arena, gf.cond
    if name in ("sigma-star", "tau-star", "naive"):
        tree = build_zielonka_tree(cond)
        d = solve(arena, tree, cond)
        if name == "naive":
            return naive_zielonka_strategy(d, player)
        return score_bounding_strategy(d, player)
    if name == "finite":
        product_rule = rule if rule.kind in ("uniform", "mcnaughton") else uniform_rule(3)
        pg = build_product(arena, cond, product_rule)
        sol = solve_reachability(pg, cond)
        return extract_finite_strategy(pg, sol, player)
    if name == "random":
        return RandomStrategy(player, arena, seed)
    if name == "first":
        return first_successor_strategy(arena, player)
    raise _err(400, "unknown-strategy", f"unknown strategy {name!r}")


@dataclass
class Session:
    id: str
    game_name: str
    gf: GameFile
    rule: StoppingRule
    human: int
    engine_name: str
    engine: StrategyEvaluator | None
    steps: list[int]
    chains: list[ScoreChain]
    verdict: Verdict | None = None
    warning: str | None = None
    error: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)

    @property
    def status(self) -> str:
        if self.verdict is not None:
            return "finished"
        mover = self.gf.arena.owner[self.steps[-1]]
        return "awaiting-human" if mover == self.human else "awaiting-engine"

    def side_to_move(self) -> int | None:
        if self.verdict is not None:
            return None
        return self.gf.arena.owner[self.steps[-1]]

    def append(self, v: int) -> None:
        self.steps.append(v)
        self.chains.append(chain_update(self.chains[-1], v))
        if __debug__:
            from .scoring import accumulator, score

            for e in self.chains[-1].entries:
                assert e.score == score(e.vertices, self.steps)
                assert e.accumulator == accumulator(e.vertices, self.steps)
        hit = stopped_set(self.rule, self.chains[-1])
        if hit is not None:
            self.verdict = Verdict(
                "stopped",
                winner=membership(self.gf.cond, hit),
                stop_set=hit,
                step=len(self.steps),
            )


class SessionStore:
    def __init__(self, ttl_seconds: float = 3600.0):
        self.ttl = ttl_seconds
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def put(self, session: Session) -> None:
        with self._lock:
            self._evict()
            self._sessions[session.id] = session

    def get(self, sid: str) -> Session:
        with self._lock:
            self._evict()
            session = self._sessions.get(sid)
            if session is None:
                raise _err(404, "no-such-session", f"session {sid} not found")
            session.last_access = time.monotonic()
            return session

    def _evict(self) -> None:
        cut = time.monotonic() - self.ttl
        dead = [sid for sid, s in self._sessions.items() if s.last_access < cut]
        for sid in dead:
            del self._sessions[sid]


def rule_from_json(spec: Any) -> StoppingRule:
    if spec is None:
        return uniform_rule(3)
    if not isinstance(spec, dict):
        raise _err(400, "bad-rule", "rule must be an object")
    kind = spec.get("kind", "k3")
    if kind in ("k3", "uniform"):
        k = spec.get("k", 3)
        if not isinstance(k, int) or k < 2:
            raise _err(400, "bad-rule", "uniform rule needs integer k >= 2")
        return uniform_rule(k)
    if kind == "mcnaughton":
        return mcnaughton_rule()
    raise _err(400, "bad-rule", f"unknown rule kind {kind!r}")


def rule_json(rule: StoppingRule, universe: int) -> dict:
    thresholds = {}
    for s in range(1, size(universe) + 1):
        try:
            thresholds[str(s)] = rule.threshold((1 << s) - 1)
        except ThresholdOverflow:
            thresholds[str(s)] = None
    return {"kind": rule.kind if rule.kind != "uniform" or rule.k != 3 else "k3",
            "k": rule.k, "thresholds": thresholds}


def session_json(session: Session) -> dict:
    gf = session.gf
    arena, cond = gf.arena, gf.cond
    chain = session.chains[-1]
    verdict = None
    if session.verdict is not None:
        verdict = {
            "winner": session.verdict.winner,
            "set": list(members(session.verdict.stop_set or 0)),
            "step": session.verdict.step,
        }
    payload = {
        "format": FORMAT,
        "id": session.id,
        "game": session.game_name,
        "status": session.status,
        "humanPlayer": session.human,
        "engineStrategy": session.engine_name,
        "sideToMove": session.side_to_move(),
        "currentVertex": session.steps[-1],
        "history": list(session.steps),
        "chain": [
            {
                "set": list(members(e.vertices)),
                "score": e.score,
                "accumulator": list(members(e.accumulator)),
                "owner": membership(cond, e.vertices),
            }
            for e in chain.entries
        ],
        "rule": rule_json(session.rule, cond.universe),
        "verdict": verdict,
        "arena": arena_json(gf),
    }
    if session.warning:
        payload["warning"] = session.warning
    if session.error:
        payload["error"] = session.error
    return payload


def arena_json(gf: GameFile) -> dict:
    arena = gf.arena
    return {
        "vertices": [
            {"id": v, "owner": arena.owner[v], "name": arena.name_of(v)}
            for v in range(arena.vertex_count)
        ],
        "edges": [[v, w] for v in range(arena.vertex_count) for w in arena.successors[v]],
        "f0": [list(members(f)) for f in sorted(gf.cond.f0)],
        "start": gf.start,
    }


class GameService:
    """Protocol logic, independent of the HTTP plumbing."""

    def __init__(self, ttl_seconds: float = 3600.0):
        self.store = SessionStore(ttl_seconds)

    def create_session(self, body: Any) -> dict:
        if not isinstance(body, dict):
            raise _err(400, "bad-request", "body must be a JSON object")
        if "text" in body:
            game_name = "custom"
            try:
                gf = parse_game(body["text"])
            except (GameSyntaxError, GameSemanticError) as exc:
                raise _err(400, "bad-game", str(exc)) from exc
        else:
            game_name = body.get("game", "triangle")
            try:
                gf = corpus_game(game_name)
            except KeyError as exc:
                raise _err(404, "no-such-game", str(exc)) from exc
        rule = rule_from_json(body.get("rule"))
        human = body.get("humanPlayer", 1)
        if human not in (0, 1):
            raise _err(400, "bad-player", "humanPlayer must be 0 or 1")
        engine_name = body.get("engineStrategy", "sigma-star")
        if engine_name not in STRATEGY_NAMES:
            raise _err(400, "unknown-strategy", f"engineStrategy must be one of {STRATEGY_NAMES}")
        start = body.get("start", gf.start if gf.start is not None else 0)
        if not isinstance(start, int) or not 0 <= start < gf.arena.vertex_count:
            raise _err(400, "invalid-start", f"start {start!r} is not a vertex")
        try:
            rule_json(rule, gf.cond.universe)
        except ThresholdOverflow as exc:
            raise _err(400, "bad-rule", str(exc)) from exc

        warning = None
        engine: StrategyEvaluator | None = None
        try:
            engine = build_engine_strategy(gf, engine_name, 1 - human, rule)
        except Exception as exc:  # strategy may be undefined for this side
            warning = f"engine strategy unavailable: {exc}"
        if (
            engine is not None
            and engine_name in ("sigma-star", "tau-star")
            and not engine.domain & (1 << start)
        ):
            warning = "start is outside the engine's winning region"

        session = Session(
            id=uuid.uuid4().hex[:12],
            game_name=game_name,
            gf=gf,
            rule=rule,
            human=human,
            engine_name=engine_name,
            engine=engine,
            steps=[start],
            chains=[chain_init(start)],
            warning=warning,
        )
        self.store.put(session)
        return session_json(session)

    def get_session(self, sid: str) -> dict:
        session = self.store.get(sid)
        with session.lock:
            return session_json(session)

    def human_move(self, sid: str, body: Any) -> dict:
        session = self.store.get(sid)
        with session.lock:
            if session.verdict is not None:
                raise _err(409, "finished", "the referee has already ruled")
            if session.status != "awaiting-human":
                raise _err(409, "not-your-turn", "it is the engine's move")
            if not isinstance(body, dict) or not isinstance(body.get("to"), int):
                raise _err(400, "bad-move", 'body must be {"to": <vertex>}')
            to = body["to"]
            if not session.gf.arena.has_edge(session.steps[-1], to):
                raise _err(409, "illegal-move", f"{session.steps[-1]}->{to} is not an edge")
            session.append(to)
            session.error = None
            return session_json(session)

    def engine_step(self, sid: str) -> dict:
        session = self.store.get(sid)
        with session.lock:
            if session.verdict is not None:
                raise _err(409, "finished", "the referee has already ruled")
            if session.status != "awaiting-engine":
                raise _err(409, "not-engine-turn", "it is the human's move")
            if session.engine is None:
                raise _err(409, "engine-unavailable", session.warning or "engine unavailable")
            try:
                move = session.engine.move(tuple(session.steps))
            except OffDomain as exc:
                session.error = f"strategy-off-domain: {exc}"
                return session_json(session)
            session.append(move)
            session.error = None
            return session_json(session)

    def hint(self, sid: str) -> dict:
        session = self.store.get(sid)
        with session.lock:
            if session.verdict is not None:
                raise _err(409, "finished", "the referee has already ruled")
            mover = session.side_to_move()
            assert mover is not None
            try:
                strategy = build_engine_strategy(
                    session.gf, session.engine_name, mover, session.rule
                )
                move = strategy.move(tuple(session.steps))
            except ServiceError:
                raise
            except Exception as exc:
                raise _err(409, "no-hint", f"no hint available: {exc}") from exc
            return {"format": FORMAT, "move": move}

    def corpus(self) -> dict:
        games = []
        for name, gf in corpus_games():
            games.append(
                {
                    "name": name,
                    "vertices": gf.arena.vertex_count,
                    "start": gf.start,
                    "arena": arena_json(gf),
                }
            )
        return {"format": FORMAT, "games": games}


_ROUTES = [
    ("POST", re.compile(r"^/games$"), "create"),
    ("GET", re.compile(r"^/games/([0-9a-f]+)$"), "get"),
    ("POST", re.compile(r"^/games/([0-9a-f]+)/move$"), "move"),
    ("POST", re.compile(r"^/games/([0-9a-f]+)/engine-step$"), "engine"),
    ("GET", re.compile(r"^/games/([0-9a-f]+)/hint$"), "hint"),
    ("GET", re.compile(r"^/corpus$"), "corpus"),
]


def default_static_dir() -> Path | None:
    root = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return root if root.is_dir() else None


class _Handler(BaseHTTPRequestHandler):
    service: GameService
    static_dir: Path | None = None
    quiet = True

    def log_message(self, *args) -> None:  # pragma: no cover
        if not self.quiet:
            super().log_message(*args)

    def _send_json(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _body(self) -> Any:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return None
        raw = self.rfile.read(length)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _err(400, "bad-json", f"invalid JSON body: {exc}") from exc

    def _dispatch(self, method: str) -> None:
        path = self.path.split("?", 1)[0]
        try:
            for want, pattern, action in _ROUTES:
                if want != method:
                    continue
                m = pattern.match(path)
                if m is None:
                    continue
                service = self.service
                if action == "create":
                    self._send_json(201, service.create_session(self._body()))
                elif action == "get":
                    self._send_json(200, service.get_session(m.group(1)))
                elif action == "move":
                    self._send_json(200, service.human_move(m.group(1), self._body()))
                elif action == "engine":
                    self._send_json(200, service.engine_step(m.group(1)))
                elif action == "hint":
                    self._send_json(200, service.hint(m.group(1)))
                elif action == "corpus":
                    self._send_json(200, service.corpus())
                return
            if method == "GET" and self._serve_static(path):
                return
            self._send_json(404, {"error": "not-found", "message": f"no route for {path}"})
        except ServiceError as exc:
            self._send_json(exc.status, {"error": exc.code, "message": str(exc)})
        except Exception as exc:  # pragma: no cover
            self._send_json(500, {"error": "internal", "message": str(exc)})

    def _serve_static(self, path: str) -> bool:
        if self.static_dir is None:
            if path == "/":
                self._send_json(200, {"format": FORMAT, "endpoints": [r.pattern for _, r, _ in _ROUTES]})
                return True
            return False
        rel = "index.html" if path == "/" else path.lstrip("/")
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())) or not target.is_file():
            return False
        types = {
            ".html": "text/html",
            ".js": "text/javascript",
            ".css": "text/css",
            ".svg": "image/svg+xml",
            ".map": "application/json",
        }
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", types.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)
        return True

    def do_GET(self) -> None:
        self._dispatch("GET")

    def do_POST(self) -> None:
        self._dispatch("POST")


def make_server(
    bind: str = "127.0.0.1",
    port: int = 8728,
    ttl_seconds: float = 3600.0,
    static_dir: Path | None = None,
    quiet: bool = True,
) -> ThreadingHTTPServer:
    service = GameService(ttl_seconds)
    handler = type(
        "Handler",
        (_Handler,),
        {
            "service": service,
            "static_dir": static_dir if static_dir is not None else default_static_dir(),
            "quiet": quiet,
        },
    )
    return ThreadingHTTPServer((bind, port), handler)


def serve_forever(bind: str, port: int, static_dir: Path | None = None) -> None:  # pragma: no cover
    server = make_server(bind, port, static_dir=static_dir, quiet=False)
    host, actual_port = server.server_address[:2]
    print(f"serving on http://{host}:{actual_port}/", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
