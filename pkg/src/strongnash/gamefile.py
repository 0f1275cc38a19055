"""Plain-text game files and profile strings.

File layout (``#`` starts a comment, tokens are whitespace separated)::

    players 2
    dims 2 2
    payoffs 1
    3 0 5 1
    payoffs 2
    3 5 0 1

Entries are ``p`` or ``p/q`` and run row-major over the action profile with
the last player's action varying fastest.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .game import BimatrixGame, Game, GameError, MixedProfile, TensorGame


class ParseError(GameError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        for tok in body.split():
            yield lineno, tok


def _rational(tok: str, lineno: int) -> Fraction:
    tok = tok.replace("−", "-")
    num, _, den = tok.partition("/")
    try:
        n = int(num)
        d = int(den) if den else 1
    except ValueError:
        raise ParseError(f"bad rational entry {tok!r}", lineno) from None
    if d == 0:
        raise ParseError(f"zero denominator in {tok!r}", lineno)
    return Fraction(n, d)


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno) from None


def parse_game(text: str) -> Game:
    """Parse a game file; two players give a :class:`BimatrixGame`."""
    toks = list(_tokens(text))
    pos = 0

    def take(expect: str | None = None):
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1][0] if toks else 1
            raise ParseError(f"unexpected end of input{'' if expect is None else f', expected {expect!r}'}", last)
        lineno, tok = toks[pos]
        pos += 1
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, got {tok!r}", lineno)
        return lineno, tok

    lineno, _ = take("players")
    lineno, tok = take()
    n = _int(tok, lineno, "player count")
    if n < 2:
        raise ParseError(f"need at least 2 players, got {n}", lineno)
    lineno, _ = take("dims")
    dims = []
    for _ in range(n):
        lineno, tok = take()
        m = _int(tok, lineno, "action count")
        if m < 1:
            raise ParseError(f"action counts must be positive, got {m}", lineno)
        dims.append(m)
    size = math.prod(dims)
    payoffs = []
    for player in range(1, n + 1):
        lineno, _ = take("payoffs")
        lineno, tok = take()
        if _int(tok, lineno, "player index") != player:
            raise ParseError(f"expected payoffs for player {player}, got {tok!r}", lineno)
        entries = []
        while len(entries) < size:
            if pos >= len(toks) or toks[pos][1] == "payoffs":
                raise ParseError(f"player {player}: expected {size} entries, got {len(entries)}", lineno)
            lineno, tok = take()
            entries.append(_rational(tok, lineno))
        payoffs.append(entries)
    if pos < len(toks):
        lineno, tok = toks[pos]
        raise ParseError(f"trailing token {tok!r}", lineno)
    if n == 2:
        m1, m2 = dims
        return BimatrixGame(
            [payoffs[0][i * m2:(i + 1) * m2] for i in range(m1)],
            [payoffs[1][i * m2:(i + 1) * m2] for i in range(m1)],
        )
    return TensorGame(tuple(dims), payoffs)


def serialize_game(game: Game) -> str:
    lines = [f"players {game.n_players}", "dims " + " ".join(str(m) for m in game.dims)]
    if isinstance(game, BimatrixGame):
        for p, grid in enumerate((game.u1, game.u2), start=1):
            lines.append(f"payoffs {p}")
            lines.extend(" ".join(str(v) for v in row) for row in grid)
    else:
        last = game.dims[-1]
        for p, flat in enumerate(game.payoffs, start=1):
            lines.append(f"payoffs {p}")
            lines.extend(" ".join(str(v) for v in flat[k:k + last]) for k in range(0, len(flat), last))
    return "\n".join(lines) + "\n"


def load_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def parse_profile(text: str) -> MixedProfile:
    """``"1/2,1/2;1/3,2/3"`` -> MixedProfile."""
    try:
        players = [
            tuple(_rational(tok.strip(), None) for tok in part.split(","))
            for part in text.strip().split(";")
        ]
        return MixedProfile(tuple(players))
    except GameError as exc:
        raise ParseError(f"bad profile {text!r}: {exc}") from None
