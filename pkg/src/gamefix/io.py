"""Text formats for games and chain families.

Game file::

    players 2
    moves 0 c d
    moves 1 c d
    payoff c c 10 10      # one line per profile
    ...

Chain file: a ``blocks <k> <m>`` header followed by m blocks of k rows with
k entries each. Entries are decimals or ``p/q``; ``#`` starts a comment in
both formats.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import (
    DuplicateProfileError,
    GameConstructionError,
    MissingProfileError,
    ParseError,
)
from .game import Game, new_game
from .markov import IndexedChainFamily


def _tokens(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if line:
            yield number, line


def _rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}", line, "number") from None


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line) from None


def parse_game(text: str) -> Game:
    """Parse a game file; move order is kept as declared."""
    m = None
    moves: dict[int, list[str]] = {}
    rows: list[tuple[int, list[str]]] = []
    for number, words in _tokens(text):
        keyword, args = words[0], words[1:]
        if keyword == "players":
            if m is not None:
                raise ParseError("duplicate players line", number, "duplicate-players")
            if len(args) != 1:
                raise ParseError("players takes one argument", number)
            m = _int(args[0], number, "player count")
            if m < 1:
                raise ParseError("player count must be at least 1", number, "arity")
        elif keyword == "moves":
            if m is None:
                raise ParseError("moves before players", number)
            if len(args) < 2:
                raise ParseError("moves needs a player index and at least one move", number)
            i = _int(args[0], number, "player index")
            if not 0 <= i < m:
                raise ParseError(f"player index {i} out of range", number, "arity")
            if i in moves:
                raise ParseError(f"duplicate moves line for player {i}", number, "duplicate-moves")
            if len(set(args[1:])) != len(args) - 1:
                raise ParseError(f"duplicate move names for player {i}", number, "duplicate-moves")
            moves[i] = args[1:]
        elif keyword == "payoff":
            if m is None:
                raise ParseError("payoff before players", number)
            if len(args) != 2 * m:
                raise ParseError(
                    f"payoff needs {m} moves and {m} payoffs, got {len(args)} fields",
                    number,
                    "arity",
                )
            rows.append((number, args))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", number)

    end = len(text.splitlines()) + 1
    if m is None:
        raise ParseError("missing players line", end, "missing-players")
    for i in range(m):
        if i not in moves:
            raise ParseError(f"missing moves line for player {i}", end, "missing-moves")

    move_sets = [moves[i] for i in range(m)]
    table = {}
    for number, args in rows:
        names, values = tuple(args[:m]), args[m:]
        for i, name in enumerate(names):
            if name not in move_sets[i]:
                raise ParseError(f"unknown move {name!r} for player {i}", number, "unknown-move")
        if names in table:
            raise ParseError("duplicate profile " + " ".join(names), number, "duplicate-profile")
        table[names] = [_rational(v, number) for v in values]
    try:
        return new_game(m, move_sets, table)
    except MissingProfileError as exc:
        raise ParseError(str(exc), end, "missing-profile") from None
    except DuplicateProfileError as exc:  # pragma: no cover - caught above
        raise ParseError(str(exc), end, "duplicate-profile") from None
    except GameConstructionError as exc:
        raise ParseError(str(exc), end, "invalid-game") from None


def serialize_game(g: Game) -> str:
    lines = [f"players {g.player_count}"]
    for i, moves in enumerate(g.move_sets):
        lines.append(f"moves {i} " + " ".join(moves))
    for s in g.profiles:
        values = " ".join(str(v) for v in g.payoffs[s])
        lines.append("payoff " + " ".join(g.profile_names(s)) + " " + values)
    return "\n".join(lines) + "\n"


def parse_chain(text: str) -> IndexedChainFamily:
    """Parse a chain file into a family of square column-stochastic blocks.

    Columns must sum to one exactly when every entry is ``p/q`` or an
    integer, and within 1e-9 when any entry is a decimal; in the latter case
    columns are rescaled to sum to one before conversion to floats.
    """
    lines = list(_tokens(text))
    if not lines or lines[0][1][0] != "blocks":
        raise ParseError("chain file must start with 'blocks <k> <m>'", lines[0][0] if lines else 1)
    number, header = lines[0]
    if len(header) != 3:
        raise ParseError("blocks takes two arguments", number)
    k = _int(header[1], number, "k")
    m = _int(header[2], number, "m")
    if k < 1 or m < 1:
        raise ParseError("k and m must be positive", number, "arity")
    body = lines[1:]
    if len(body) != k * m:
        raise ParseError(
            f"expected {k * m} matrix rows, got {len(body)}",
            body[-1][0] + 1 if body else number + 1,
            "arity",
        )
    blocks = np.empty((m, k, k), dtype=object)
    decimal = False
    for row, (number, words) in enumerate(body):
        if len(words) != k:
            raise ParseError(f"expected {k} entries, got {len(words)}", number, "arity")
        decimal |= any(("." in w) or ("e" in w.lower()) for w in words)
        blocks[row // k, row % k] = [_rational(w, number) for w in words]

    out = np.empty((m, k, k))
    for i in range(m):
        for col in range(k):
            column = blocks[i, :, col]
            if any(v < 0 for v in column):
                raise ParseError(f"block {i} column {col} has a negative entry", None, "not-stochastic")
            total = sum(column)
            if (abs(total - 1) > Fraction(1, 10**9)) if decimal else total != 1:
                raise ParseError(f"block {i} column {col} sums to {total}", None, "not-stochastic")
            out[i, :, col] = [float(v / total) for v in column]
    return IndexedChainFamily(out)
