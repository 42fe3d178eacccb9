"""Finite normal-form games with exact rational payoffs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    ArityError,
    DomainError,
    DuplicateProfileError,
    GameConstructionError,
    MissingProfileError,
)

Profile = tuple[int, ...]


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, and decimal or ``p/q`` strings exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GameConstructionError(f"not a rational number: {value!r}") from exc
    if isinstance(value, float):
        # floats are accepted through their shortest decimal repr, not their binary value
        return Fraction(repr(value))
    raise GameConstructionError(f"not a rational number: {value!r}")


@dataclass(frozen=True, eq=False)
class Game:
    """An m-player game. ``payoffs`` maps move-index profiles to payoff vectors.

    Profiles are linearized lexicographically (player 0 most significant), and
    that order is the row/column order of every relation and matrix over A.
    """

    move_sets: tuple[tuple[str, ...], ...]
    payoffs: Mapping[Profile, tuple[Fraction, ...]] = field(repr=False)

    @property
    def player_count(self) -> int:
        return len(self.move_sets)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(moves) for moves in self.move_sets)

    @cached_property
    def profiles(self) -> tuple[Profile, ...]:
        return tuple(itertools.product(*(range(n) for n in self.shape)))

    @cached_property
    def _profile_positions(self) -> dict[Profile, int]:
        return {s: k for k, s in enumerate(self.profiles)}

    def profile_index(self, s: Profile) -> int:
        return self._profile_positions[tuple(s)]

    def profile_names(self, s: Profile) -> tuple[str, ...]:
        return tuple(self.move_sets[i][a] for i, a in enumerate(s))

    def payoff_array(self, i: int) -> np.ndarray:
        """Player ``i``'s payoffs as an object array of Fractions shaped like A."""
        out = np.empty(self.shape, dtype=object)
        for s in self.profiles:
            out[s] = self.payoffs[s][i]
        return out

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return self.move_sets == other.move_sets and dict(self.payoffs) == dict(other.payoffs)

    def __hash__(self):
        return hash((self.move_sets, tuple(sorted(self.payoffs.items()))))


def _resolve_profile(key, move_sets) -> Profile:
    if len(key) != len(move_sets):
        raise GameConstructionError(
            f"profile {key!r} has {len(key)} moves, expected {len(move_sets)}"
        )
    out = []
    for i, move in enumerate(key):
        moves = move_sets[i]
        if isinstance(move, str):
            if move not in moves:
                raise GameConstructionError(f"unknown move {move!r} for player {i}")
            out.append(moves.index(move))
        else:
            if not 0 <= int(move) < len(moves):
                raise GameConstructionError(f"move index {move} out of range for player {i}")
            out.append(int(move))
    return tuple(out)


def new_game(m: int, move_sets: Sequence[Sequence[str]], payoff_table) -> Game:
    """Build and validate a game.

    ``payoff_table`` is a mapping or an iterable of ``(profile, payoffs)``
    pairs; profile entries may be move names or indices.
    """
    if m < 1:
        raise GameConstructionError("a game needs at least one player")
    if len(move_sets) != m:
        raise GameConstructionError(f"expected {m} move sets, got {len(move_sets)}")
    sets = []
    for i, moves in enumerate(move_sets):
        moves = tuple(str(a) for a in moves)
        if not moves:
            raise GameConstructionError(f"player {i} has an empty move set")
        if len(set(moves)) != len(moves):
            raise GameConstructionError(f"player {i} has duplicate move names")
        sets.append(moves)
    sets = tuple(sets)

    items = payoff_table.items() if isinstance(payoff_table, Mapping) else payoff_table
    payoffs: dict[Profile, tuple[Fraction, ...]] = {}
    for key, values in items:
        s = _resolve_profile(tuple(key), sets)
        if s in payoffs:
            raise DuplicateProfileError(sets[i][a] for i, a in enumerate(s))
        values = tuple(values)
        if len(values) != m:
            raise GameConstructionError(
                f"profile {' '.join(sets[i][a] for i, a in enumerate(s))} has "
                f"{len(values)} payoffs, expected {m}"
            )
        payoffs[s] = tuple(as_rational(v) for v in values)

    for s in itertools.product(*(range(len(moves)) for moves in sets)):
        if s not in payoffs:
            raise MissingProfileError(sets[i][a] for i, a in enumerate(s))
    return Game(sets, payoffs)


def check_profile(g: Game, s) -> Profile:
    s = tuple(int(a) for a in s)
    if len(s) != g.player_count:
        raise ArityError(f"profile has {len(s)} moves, game has {g.player_count} players")
    for i, a in enumerate(s):
        if not 0 <= a < g.shape[i]:
            raise DomainError(f"move index {a} out of range for player {i}")
    return s


def check_player(g: Game, i: int) -> int:
    if not 0 <= i < g.player_count:
        raise DomainError(f"player {i} out of range for a {g.player_count}-player game")
    return i


def payoff(g: Game, s) -> tuple[Fraction, ...]:
    return g.payoffs[check_profile(g, s)]


def affine(scale, shift=0) -> Callable[[Fraction], Fraction]:
    """The positive affine map ``x -> scale*x + shift``."""
    scale, shift = as_rational(scale), as_rational(shift)
    if scale <= 0:
        raise DomainError(f"affine scale must be positive, got {scale}")
    return lambda x: scale * x + shift


def transform_payoffs(g: Game, i: int, f: Callable[[Fraction], Fraction]) -> Game:
    """Replace player ``i``'s payoffs by ``f`` of them.

    ``f`` must be strictly increasing on the values player ``i`` actually
    receives; that is checked, not assumed.
    """
    check_player(g, i)
    values = sorted({v[i] for v in g.payoffs.values()})
    image = {v: as_rational(f(v)) for v in values}
    for lo, hi in zip(values, values[1:]):
        if not image[lo] < image[hi]:
            raise DomainError("payoff transform is not strictly increasing")
    payoffs = {
        s: v[:i] + (image[v[i]],) + v[i + 1:] for s, v in g.payoffs.items()
    }
    return Game(g.move_sets, payoffs)


def enumerate_opponent_profiles(g: Game, i: int) -> list[Profile]:
    """Lexicographic enumeration of A_{-i}; this is the column order everywhere."""
    check_player(g, i)
    others = [range(n) for k, n in enumerate(g.shape) if k != i]
    return list(itertools.product(*others))


def join_profile(i: int, own: int, opp: Profile) -> Profile:
    """The full profile where player ``i`` plays ``own`` and the others ``opp``."""
    return tuple(opp[:i]) + (own,) + tuple(opp[i:])


def opponents_of(s: Profile, i: int) -> Profile:
    return tuple(s[:i]) + tuple(s[i + 1:])


def profile_table(g: Game, i: int) -> np.ndarray:
    """``table[own, opp]`` is the flat index of the profile (own, opp) in A."""
    opps = enumerate_opponent_profiles(g, i)
    table = np.empty((g.shape[i], len(opps)), dtype=np.int64)
    for o, opp in enumerate(opps):
        for a in range(g.shape[i]):
            table[a, o] = g.profile_index(join_profile(i, a, opp))
    return table


def opponent_index(g: Game, i: int) -> np.ndarray:
    """For each flat profile, the column index of its A_{-i} part."""
    positions = {opp: o for o, opp in enumerate(enumerate_opponent_profiles(g, i))}
    return np.array([positions[opponents_of(s, i)] for s in g.profiles], dtype=np.int64)


def payoff_ranks(g: Game) -> np.ndarray:
    """Dense ordinal ranks of each player's payoffs, shape (m, |A|).

    Comparisons between one player's payoffs are all the relational responses
    ever make, so integer ranks stand in for the Fractions exactly.
    """
    out = np.empty((g.player_count, len(g.profiles)), dtype=np.int64)
    for i in range(g.player_count):
        column = [g.payoffs[s][i] for s in g.profiles]
        rank = {v: r for r, v in enumerate(sorted(set(column)))}
        out[i] = [rank[v] for v in column]
    return out


def prisoners_dilemma() -> Game:
    """The textbook bimatrix used throughout: (10,10) (0,11) / (11,0) (1,1)."""
    return new_game(
        2,
        [["c", "d"], ["c", "d"]],
        {
            ("c", "c"): (10, 10),
            ("c", "d"): (0, 11),
            ("d", "c"): (11, 0),
            ("d", "d"): (1, 1),
        },
    )


def matching_pennies() -> Game:
    return new_game(
        2,
        [["H", "T"], ["H", "T"]],
        {
            ("H", "H"): (1, 0),
            ("H", "T"): (0, 1),
            ("T", "H"): (0, 1),
            ("T", "T"): (1, 0),
        },
    )
