"""Text format for Muller games.

Line-oriented, UTF-8, ``#`` starts a comment, every statement ends with
``;``::

    muller <num_vertices> ;
    <id> <owner:0|1> <succ>(,<succ>)* ( "<name>" )? ;   # one line per vertex
    F0: <set>(,<set>)* ;                                # set ::= { id(,id)* } | {}
    start: <id> ;                                       # optional

``F0:`` lists Player 0's family; an empty family is written ``F0: ;``.
The condition's universe is the arena's vertex set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arena import Arena
from .bitset import MAX_VERTICES, format_set, iter_members, mask_of
from .conditions import MullerCondition, condition


class GameSyntaxError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class GameSemanticError(ValueError):
    pass


@dataclass(frozen=True)
class GameFile:
    arena: Arena
    cond: MullerCondition
    start: int | None = None


def _strip_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def parse_game(text: str) -> GameFile:
    """Parse and validate a game description.

    Syntax problems raise :class:`GameSyntaxError` with a position;
    well-formed but inconsistent input (dangling successors, a vertex
    without successors, duplicate ids, sets outside the universe, more
    than 64 vertices) raises :class:`GameSemanticError`.
    """
    statements: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        if not body.endswith(";"):
            raise GameSyntaxError(lineno, len(raw.rstrip()) + 1, "statement must end with ';'")
        if body.count(";") != 1:
            raise GameSyntaxError(lineno, body.find(";") + 2, "one statement per line")
        statements.append((lineno, body[:-1].strip()))
    if not statements:
        raise GameSyntaxError(1, 1, "empty game description")

    lineno, head = statements[0]
    m = re.fullmatch(r"muller\s+(\d+)", head)
    if m is None:
        raise GameSyntaxError(lineno, 1, "expected 'muller <num_vertices>;'")
    n = int(m.group(1))
    if n < 1:
        raise GameSemanticError("the arena needs at least one vertex")
    if n > MAX_VERTICES:
        raise GameSemanticError(f"{n} vertices exceed the {MAX_VERTICES}-vertex limit")

    owners: dict[int, int] = {}
    succs: dict[int, tuple[int, ...]] = {}
    names: dict[int, str] = {}
    f0: list[int] | None = None
    start: int | None = None

    vertex_re = re.compile(r'(\d+)\s+([01])\s+(\d+(?:\s*,\s*\d+)*)(?:\s+"([^"]*)")?')
    for lineno, body in statements[1:]:
        if body.startswith("F0:"):
            if f0 is not None:
                raise GameSyntaxError(lineno, 1, "duplicate F0 section")
            f0 = _parse_family(lineno, body[3:].strip())
            continue
        if body.startswith("start:"):
            if start is not None:
                raise GameSyntaxError(lineno, 1, "duplicate start")
            rest = body[6:].strip()
            if not rest.isdigit():
                raise GameSyntaxError(lineno, body.find(":") + 2, "start needs a vertex id")
            start = int(rest)
            continue
        m = vertex_re.fullmatch(body)
        if m is None:
            raise GameSyntaxError(lineno, 1, "expected '<id> <owner> <succ,...> [\"name\"];'")
        vid = int(m.group(1))
        if vid in owners:
            raise GameSemanticError(f"duplicate vertex id {vid}")
        targets = tuple(int(t.strip()) for t in m.group(3).split(","))
        if len(set(targets)) != len(targets):
            raise GameSemanticError(f"vertex {vid} lists a successor twice")
        owners[vid] = int(m.group(2))
        succs[vid] = targets
        if m.group(4) is not None:
            names[vid] = m.group(4)

    if sorted(owners) != list(range(n)):
        missing = sorted(set(range(n)) - set(owners))
        extra = sorted(set(owners) - set(range(n)))
        if extra:
            raise GameSemanticError(f"vertex ids {extra} outside 0..{n - 1}")
        raise GameSemanticError(f"missing vertex lines for {missing}")
    for vid, targets in succs.items():
        for t in targets:
            if not 0 <= t < n:
                raise GameSemanticError(f"vertex {vid} has dangling successor {t}")
    if f0 is None:
        raise GameSyntaxError(statements[-1][0], 1, "missing F0 section")

    universe = (1 << n) - 1
    for f in f0:
        if f & ~universe:
            raise GameSemanticError(
                f"listed set {format_set(f)} leaves the universe {format_set(universe)}"
            )
    if start is not None and not 0 <= start < n:
        raise GameSemanticError(f"start vertex {start} does not exist")

    arena = Arena(
        tuple(owners[v] for v in range(n)),
        tuple(succs[v] for v in range(n)),
        tuple(names.get(v, "") for v in range(n)) if names else None,
    )
    return GameFile(arena, condition(universe, f0), start)


def _parse_family(lineno: int, body: str) -> list[int]:
    if not body:
        return []
    sets: list[int] = []
    pos = 0
    while pos < len(body):
        if body[pos] in ", ":
            pos += 1
            continue
        if body[pos] != "{":
            raise GameSyntaxError(lineno, pos + 1, "expected '{'")
        end = body.find("}", pos)
        if end < 0:
            raise GameSyntaxError(lineno, pos + 1, "unterminated set")
        inner = body[pos + 1 : end].strip()
        if inner:
            try:
                ids = [int(t.strip()) for t in inner.split(",")]
            except ValueError:
                raise GameSyntaxError(lineno, pos + 2, "sets contain vertex ids") from None
            sets.append(mask_of(ids))
        else:
            sets.append(0)
        pos = end + 1
    return sets


def print_game(gf: GameFile) -> str:
    """Canonical text of a game; ``parse_game`` round-trips it."""
    arena = gf.arena
    lines = [f"muller {arena.vertex_count};"]
    for v in range(arena.vertex_count):
        succ = ",".join(str(w) for w in arena.successors[v])
        name = ""
        if arena.names is not None and arena.names[v]:
            name = f' "{arena.names[v]}"'
        lines.append(f"{v} {arena.owner[v]} {succ}{name};")
    family = ",".join(
        "{" + ",".join(str(v) for v in iter_members(f)) + "}" for f in sorted(gf.cond.f0)
    )
    lines.append(f"F0: {family};")
    if gf.start is not None:
        lines.append(f"start: {gf.start};")
    return "\n".join(lines) + "\n"
