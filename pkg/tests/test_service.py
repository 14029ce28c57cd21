import json
import threading
import urllib.error
import urllib.request

import pytest

from muller_hurry.engine import referee_play
from muller_hurry.finite_time import uniform_rule
from muller_hurry.scoring import accumulator, chain_states, score
from muller_hurry.service import make_server
from muller_hurry.strategies import ScriptedStrategy
from muller_hurry.corpus import triangle


@pytest.fixture(scope="module")
def server():
    srv = make_server(port=0, ttl_seconds=3600)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def call(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def create(base, **over):
    body = {
        "game": "triangle",
        "rule": {"kind": "k3"},
        "humanPlayer": 1,
        "engineStrategy": "sigma-star",
    }
    body.update(over)
    return call(base, "POST", "/games", body)


class TestCorpusEndpoint:
    def test_lists_bundled_games(self, server):
        status, payload = call(server, "GET", "/corpus")
        assert status == 200
        names = [g["name"] for g in payload["games"]]
        assert "triangle" in names and "loop3" in names
        assert len(names) == 26


class TestSessionLifecycle:
    def test_create_reports_contract_fields(self, server):
        status, s = create(server)
        assert status == 201
        for field in (
            "id", "status", "humanPlayer", "sideToMove", "currentVertex",
            "history", "chain", "rule", "verdict", "arena",
        ):
            assert field in s
        assert s["status"] == "awaiting-engine"  # vertex 1 belongs to Player 0
        assert s["chain"] == [{"set": [1], "score": 1, "accumulator": [], "owner": 1}]
        assert s["rule"]["kind"] == "k3"
        assert s["verdict"] is None

    def test_mcnaughton_thresholds_by_size(self, server):
        status, s = create(server, rule={"kind": "mcnaughton"})
        assert status == 201
        assert s["rule"]["thresholds"] == {"1": 2, "2": 3, "3": 7}

    def test_invalid_start(self, server):
        status, s = create(server, start=9)
        assert status == 400 and s["error"] == "invalid-start"

    def test_unknown_strategy(self, server):
        status, s = create(server, engineStrategy="perfect")
        assert status == 400 and s["error"] == "unknown-strategy"

    def test_unknown_game(self, server):
        status, s = create(server, game="chess")
        assert status == 404

    def test_engine_region_warning(self, server):
        # engine plays Player 0 in the empty-family game: wins nowhere
        text = "muller 1;\n0 1 0;\nF0: ;\n"
        status, s = call(server, "POST", "/games", {
            "text": text, "humanPlayer": 1, "engineStrategy": "sigma-star",
        })
        assert status == 201
        assert "warning" in s


class TestPlayingAGame:
    def test_full_game_and_verdict_replay(self, server):
        status, s = create(server)
        sid = s["id"]
        moves = []
        for _ in range(60):
            if s["status"] == "finished":
                break
            if s["status"] == "awaiting-engine":
                status, s = call(server, "POST", f"/games/{sid}/engine-step")
                assert status == 200
            else:
                succ = sorted(w for v, w in s["arena"]["edges"] if v == s["currentVertex"])
                status, s = call(server, "POST", f"/games/{sid}/move", {"to": succ[0]})
                assert status == 200
                moves.append(succ[0])
        assert s["status"] == "finished"
        verdict = s["verdict"]

        # the verdict must be reproducible by refereeing the recorded play
        gf = triangle()
        history = s["history"]
        record = referee_play(
            gf.arena, gf.cond, uniform_rule(3), history[0],
            ScriptedStrategy(0, history), ScriptedStrategy(1, history),
        )
        assert record.verdict.winner == verdict["winner"]
        assert sorted(record.verdict.stop_set and list(
            v for v in range(3) if record.verdict.stop_set >> v & 1
        )) == verdict["set"]
        assert record.verdict.step == verdict["step"]
        assert list(record.steps) == history

    def test_chain_payload_matches_scoring(self, server):
        status, s = create(server)
        sid = s["id"]
        for _ in range(10):
            if s["status"] != "awaiting-engine":
                break
            status, s = call(server, "POST", f"/games/{sid}/engine-step")
        history = tuple(s["history"])
        chain = chain_states(history)[-1]
        payload = [
            {
                "set": [v for v in range(3) if e.vertices >> v & 1],
                "score": e.score,
                "accumulator": [v for v in range(3) if e.accumulator >> v & 1],
            }
            for e in chain.entries
        ]
        got = [{k: e[k] for k in ("set", "score", "accumulator")} for e in s["chain"]]
        assert got == payload
        for e in chain.entries:
            assert e.score == score(e.vertices, history)
            assert e.accumulator == accumulator(e.vertices, history)

    def test_turn_and_legality_errors(self, server):
        status, s = create(server)
        sid = s["id"]
        # engine to move: human move rejected
        status, err = call(server, "POST", f"/games/{sid}/move", {"to": 0})
        assert status == 409 and err["error"] == "not-your-turn"
        status, s = call(server, "POST", f"/games/{sid}/engine-step")
        if s["status"] == "awaiting-human":
            bad = next(
                w for w in range(3)
                if [s["currentVertex"], w] not in s["arena"]["edges"]
            )
            status, err = call(server, "POST", f"/games/{sid}/move", {"to": bad})
            assert status == 409 and err["error"] == "illegal-move"
            # state unchanged
            status, again = call(server, "GET", f"/games/{sid}")
            assert again["history"] == s["history"]

    def test_hint(self, server):
        status, s = create(server, humanPlayer=0)  # human owns vertex 1
        sid = s["id"]
        assert s["status"] == "awaiting-human"
        status, hint = call(server, "GET", f"/games/{sid}/hint")
        assert status == 200 and hint["move"] in (0, 2)

    def test_sessions_are_isolated(self, server):
        _, a = create(server)
        _, b = create(server)
        assert a["id"] != b["id"]
        call(server, "POST", f"/games/{a['id']}/engine-step")
        _, b_after = call(server, "GET", f"/games/{b['id']}")
        assert b_after["history"] == b["history"]

    def test_unknown_session(self, server):
        status, err = call(server, "GET", "/games/deadbeef0000")
        assert status == 404


def test_ttl_eviction():
    from muller_hurry.service import GameService

    service = GameService(ttl_seconds=0.0)
    state = service.create_session({"game": "triangle"})
    with pytest.raises(Exception):
        service.get_session(state["id"])


class TestStaticServing:
    def test_serves_client_files_and_blocks_traversal(self, tmp_path):
        import http.client
        import threading

        from muller_hurry.service import make_server

        static = tmp_path / "dist"
        static.mkdir()
        (static / "index.html").write_text("<!doctype html><title>ui</title>")
        (static / "main.js").write_text("export {};")
        (tmp_path / "secret.txt").write_text("keep out")

        srv = make_server(port=0, static_dir=static)
        thread = threading.Thread(target=srv.serve_forever, daemon=True)
        thread.start()
        try:
            conn = http.client.HTTPConnection("127.0.0.1", srv.server_address[1])
            conn.request("GET", "/")
            r = conn.getresponse()
            assert r.status == 200 and b"ui" in r.read()
            conn.request("GET", "/main.js")
            r = conn.getresponse()
            assert r.status == 200 and "javascript" in r.getheader("Content-Type", "")
            conn.request("GET", "/../secret.txt")
            r = conn.getresponse()
            assert r.status == 404
            r.read()
            # API routes still take precedence over files
            conn.request("GET", "/corpus")
            r = conn.getresponse()
            assert r.status == 200
            conn.close()
        finally:
            srv.shutdown()
            srv.server_close()
