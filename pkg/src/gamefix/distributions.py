"""Stochastic response operators with exact rational arithmetic.

Matrices are column-stochastic: entry ``[row, col]`` is the probability of
the row outcome given the column input, and every column sums to one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import ArityError, DomainError, NegativePayoffError, NotStochasticError
from .game import Game, check_player, enumerate_opponent_profiles, join_profile, opponents_of

FLOAT_TOL = 1e-12
CHAIN_CONCEPTS = ("bd", "sd", "ud", "cd")


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int))


@dataclass(frozen=True, eq=False)
class Distribution:
    support: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.support) != len(self.weights):
            raise DomainError("support and weights differ in length")
        if any(w < 0 for w in self.weights):
            raise DomainError("distribution has a negative weight")
        total = sum(self.weights)
        exact = all(_is_exact(w) for w in self.weights)
        if (total != 1) if exact else abs(total - 1) > 1e-9:
            raise NotStochasticError(f"weights sum to {total}, not 1")

    def __getitem__(self, label):
        return self.weights[self.support.index(label)]

    def as_dict(self) -> dict:
        return dict(zip(self.support, self.weights))

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.support == other.support and self.weights == other.weights

    __hash__ = None


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    source: tuple
    target: tuple
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        entries = np.asarray(self.entries)
        if entries.shape != (len(self.target), len(self.source)):
            raise DomainError(
                f"entries shape {entries.shape} does not match "
                f"{len(self.target)} x {len(self.source)}"
            )
        check_column_stochastic(entries)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    def column(self, label) -> Distribution:
        j = self.source.index(label)
        return Distribution(self.target, self.entries[:, j].tolist())

    def to_float(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.float64)

    def __eq__(self, other):
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.entries.shape == other.entries.shape
            and bool(np.all(self.entries == other.entries))
        )

    __hash__ = None


def check_column_stochastic(entries: np.ndarray, tol: float = FLOAT_TOL) -> None:
    if entries.dtype == object:
        for j in range(entries.shape[1]):
            column = entries[:, j]
            if any(x < 0 for x in column) or sum(column) != 1:
                raise NotStochasticError(f"column {j} is not a probability distribution")
    else:
        if np.any(entries < -tol):
            raise NotStochasticError("matrix has negative entries")
        sums = entries.sum(axis=0)
        bad = np.flatnonzero(np.abs(sums - 1) > tol)
        if bad.size:
            raise NotStochasticError(f"column {bad[0]} sums to {sums[bad[0]]!r}, not 1")


def normalize(values: Sequence, support: Sequence | None = None) -> Distribution:
    """Divide by the sum; an all-zero vector becomes uniform."""
    values = list(values)
    if support is None:
        support = range(len(values))
    if any(v < 0 for v in values):
        raise DomainError("cannot normalize a vector with negative entries")
    total = sum(values)
    exact = all(_is_exact(v) for v in values)
    n = len(values)
    if total == 0:
        weights = [Fraction(1, n) if exact else 1.0 / n] * n
    elif exact:
        weights = [Fraction(v) / total for v in values]
    else:
        weights = [v / total for v in values]
    return Distribution(support, weights)


def positive_part(a):
    return a if a > 0 else a * 0


def _require_nonnegative(g: Game, players):
    for s, v in g.payoffs.items():
        for k in players:
            if v[k] < 0:
                names = " ".join(g.profile_names(s))
                raise NegativePayoffError(f"player {k} has negative payoff {v[k]} at {names}")


def _require_two_players(g: Game, what: str):
    if g.player_count != 2:
        raise ArityError(f"{what} is defined for 2-player games only, got {g.player_count} players")


def _matrix_from_columns(g: Game, i: int, column_weights: Callable) -> StochasticMatrix:
    opps = enumerate_opponent_profiles(g, i)
    own = range(g.shape[i])
    entries = np.empty((len(own), len(opps)), dtype=object)
    for o, opp in enumerate(opps):
        dist = normalize([column_weights(a, opp) for a in own])
        entries[:, o] = dist.weights
    return StochasticMatrix(opps, own, entries)


def _rho(g: Game, k: int, i: int, own: int, opp) -> Fraction:
    return g.payoffs[join_profile(i, own, opp)][k]


def bd(g: Game, i: int) -> StochasticMatrix:
    """Normalized payoffs: the best-response distribution."""
    check_player(g, i)
    _require_nonnegative(g, [i])
    return _matrix_from_columns(g, i, lambda a, opp: _rho(g, i, i, a, opp))


def sd(g: Game, i: int) -> StochasticMatrix:
    """Payoff weighted by the move's total payoff over all countermoves."""
    check_player(g, i)
    _require_nonnegative(g, [i])
    opps = enumerate_opponent_profiles(g, i)
    totals = [sum(_rho(g, i, i, a, t) for t in opps) for a in range(g.shape[i])]
    return _matrix_from_columns(g, i, lambda a, opp: _rho(g, i, i, a, opp) * totals[a])


def ud(g: Game, i: int) -> StochasticMatrix:
    """Like ``sd`` but each countermove counts in proportion to the opponent's payoff."""
    check_player(g, i)
    _require_two_players(g, "the uniform response distribution")
    _require_nonnegative(g, range(g.player_count))
    j = 1 - i
    opps = enumerate_opponent_profiles(g, i)
    totals = [
        sum(_rho(g, i, i, a, t) * _rho(g, j, i, a, t) for t in opps) for a in range(g.shape[i])
    ]
    return _matrix_from_columns(g, i, lambda a, opp: _rho(g, i, i, a, opp) * totals[a])


def constructive_weight(n_own, n_opp, s, o, own_now, own_after, opp_after):
    """Unnormalized constructive weight of own move ``s`` against column ``o``.

    ``own_now(a, o)`` is the player's payoff before any deviation.
    ``own_after(t, a, o2)`` and ``opp_after(t, a, o2)`` are the player's and
    the opponent's payoffs at (a, o2), evaluated once t has been tried
    against ``o``. Without positions they ignore ``t``.
    """
    base = own_now(s, o)
    best = base * 0
    for t in range(n_own):
        gain = positive_part(own_now(t, o) - base)
        if not gain:
            continue
        threat = base * 0
        for o2 in range(n_opp):
            tempt = positive_part(opp_after(t, t, o2) - opp_after(t, t, o))
            if tempt:
                threat += tempt * positive_part(own_after(t, s, o) - own_after(t, t, o2))
        best = max(best, gain * threat)
    return base + best


def cd(g: Game, i: int) -> StochasticMatrix:
    """Constructive distribution: deviations that invite punishment add weight."""
    check_player(g, i)
    _require_two_players(g, "the constructive response distribution")
    _require_nonnegative(g, range(g.player_count))
    j = 1 - i
    opps = enumerate_opponent_profiles(g, i)
    own_pay = [[_rho(g, i, i, a, opp) for opp in opps] for a in range(g.shape[i])]
    opp_pay = [[_rho(g, j, i, a, opp) for opp in opps] for a in range(g.shape[i])]
    n_own, n_opp = g.shape[i], len(opps)

    def own_now(a, o):
        return own_pay[a][o]

    def own_after(t, a, o2):
        return own_pay[a][o2]

    def opp_after(t, a, o2):
        return opp_pay[a][o2]

    entries = np.empty((n_own, n_opp), dtype=object)
    for o in range(n_opp):
        weights = [
            constructive_weight(n_own, n_opp, a, o, own_now, own_after, opp_after)
            for a in range(n_own)
        ]
        entries[:, o] = normalize(weights).weights
    return StochasticMatrix(opps, range(n_own), entries)


DISTRIBUTIONS = {"bd": bd, "sd": sd, "ud": ud, "cd": cd}


def response_distribution(g: Game, i: int, concept: str) -> StochasticMatrix:
    try:
        build = DISTRIBUTIONS[concept]
    except KeyError:
        raise DomainError(f"unknown distribution concept {concept!r}") from None
    return build(g, i)


def assemble_chain(g: Game, mats: Sequence[StochasticMatrix]) -> StochasticMatrix:
    """Profile chain from per-player matrices: P[t | s] = prod_i M_i[t_i | s_{-i}]."""
    if len(mats) != g.player_count:
        raise ArityError(f"need {g.player_count} matrices, got {len(mats)}")
    cols = []
    for i, mat in enumerate(mats):
        positions = {opp: o for o, opp in enumerate(mat.source)}
        cols.append([positions[opponents_of(s, i)] for s in g.profiles])
    exact = all(mat.exact for mat in mats)
    n = len(g.profiles)
    entries = np.empty((n, n), dtype=object if exact else np.float64)
    for c, s in enumerate(g.profiles):
        for r, t in enumerate(g.profiles):
            p = Fraction(1) if exact else 1.0
            for i, mat in enumerate(mats):
                p *= mat.entries[t[i], cols[i][c]]
            entries[r, c] = p
    return StochasticMatrix(g.profiles, g.profiles, entries)


def profile_chain(g: Game, concept: str) -> StochasticMatrix:
    """The Markov chain on profiles induced by every player using ``concept``."""
    mats = [response_distribution(g, i, concept) for i in range(g.player_count)]
    return assemble_chain(g, mats)
