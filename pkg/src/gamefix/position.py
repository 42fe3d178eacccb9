"""Position games: stateful play, adaptive strategies, trajectories.

A position game pairs a base game (moves and players) with a payoff map
``(profile, x) -> payoffs`` and an update map ``(profile, x) -> x'``. In a
cumulative game the two maps coincide and positions are running totals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .distributions import (
    Distribution,
    StochasticMatrix,
    assemble_chain,
    constructive_weight,
    normalize,
)
from .errors import ArityError, DomainError
from .game import Game, Profile, enumerate_opponent_profiles, join_profile, prisoners_dilemma

Position = Any


@dataclass(frozen=True)
class PositionGame:
    base: Game
    payoff_map: Callable[[Profile, Position], tuple]
    update_map: Callable[[Profile, Position], Position]
    cumulative: bool = False
    name: str = ""

    def payoffs(self, s: Profile, x: Position) -> tuple:
        return tuple(self.payoff_map(tuple(s), x))

    def update(self, s: Profile, x: Position) -> Position:
        return self.update_map(tuple(s), x)


@dataclass(frozen=True)
class PositionStrategy:
    """``rule(position, last_profile)`` returns a move index (deterministic)
    or a Distribution over the player's moves (stochastic).

    ``last_profile`` is the profile played in the previous round, or None
    when the game has not recorded one.
    """

    player: int
    kind: str
    rule: Callable[[Position, Profile | None], Any]

    def __post_init__(self):
        if self.kind not in ("deterministic", "stochastic"):
            raise DomainError(f"unknown strategy kind {self.kind!r}")


@dataclass(frozen=True)
class Step:
    position: Position
    profile: Profile
    payoffs: tuple
    cumulative: tuple


@dataclass
class Trajectory:
    game: PositionGame
    steps: list[Step] = field(default_factory=list)
    final_position: Position = None

    def __len__(self):
        return len(self.steps)

    @property
    def profiles(self) -> list[Profile]:
        return [step.profile for step in self.steps]

    @property
    def totals(self) -> tuple:
        if not self.steps:
            return (Fraction(0),) * self.game.base.player_count
        return self.steps[-1].cumulative


def _base_payoff(g: Game):
    return lambda s, x: g.payoffs[s]


def stateless(g: Game) -> PositionGame:
    """``g`` as a position game whose single position never changes."""
    zero = (Fraction(0),) * g.player_count
    return PositionGame(g, _base_payoff(g), lambda s, x: zero if x is None else x, name="stateless")


def last_move_pd() -> PositionGame:
    """Prisoners' Dilemma whose position is the last profile played."""
    g = prisoners_dilemma()
    return PositionGame(g, _base_payoff(g), lambda s, x: s, name="pd")


def iterated_pd() -> PositionGame:
    """Prisoners' Dilemma with the full history (most recent first) as position."""
    g = prisoners_dilemma()
    return PositionGame(g, _base_payoff(g), lambda s, x: (s,) + tuple(x), name="iterated-pd")


def inflation_pd() -> PositionGame:
    """Cumulative Prisoners' Dilemma where past gains lose half their value each round."""
    g = prisoners_dilemma()

    def rho(s, x):
        base = g.payoffs[s]
        return tuple(base[k] + x[k] / 2 for k in range(2))

    return PositionGame(g, rho, rho, cumulative=True, name="inflation-pd")


def last_profile(pg: PositionGame, x: Position) -> Profile | None:
    """The last profile recorded in ``x``, for the built-in position shapes."""
    if pg.name == "pd":
        return x
    if pg.name == "iterated-pd":
        return x[0] if x else None
    return None


def tit_for_tat(i: int) -> PositionStrategy:
    """Repeat the opponent's last move; open with the first move (cooperate)."""
    if i not in (0, 1):
        raise ArityError("tit-for-tat is a 2-player strategy")

    def rule(x, last):
        if last is None:
            return 0
        if len(last) != 2:
            raise ArityError(f"tit-for-tat needs a 2-move profile, got {last!r}")
        return last[1 - i]

    return PositionStrategy(i, "deterministic", rule)


def position_cd(pg: PositionGame, i: int, x: Position) -> StochasticMatrix:
    """The constructive distribution of player ``i`` at position ``x``.

    The base term and the deviation gain are read at ``x``; the threat
    factors at the position reached after the deviation is played.
    """
    g = pg.base
    if g.player_count != 2:
        raise ArityError("the position-sensitive constructive distribution needs 2 players")
    j = 1 - i
    opps = enumerate_opponent_profiles(g, i)
    n_own, n_opp = g.shape[i], len(opps)
    now = [[pg.payoffs(join_profile(i, a, opp), x) for opp in opps] for a in range(n_own)]

    columns = []
    for o, opp in enumerate(opps):
        xi = [pg.update(join_profile(i, t, opp), x) for t in range(n_own)]
        after = [
            [[pg.payoffs(join_profile(i, a, opp2), xi[t]) for opp2 in opps] for a in range(n_own)]
            for t in range(n_own)
        ]
        weights = [
            constructive_weight(
                n_own,
                n_opp,
                s,
                o,
                lambda a, o_: now[a][o_][i],
                lambda t, a, o2: after[t][a][o2][i],
                lambda t, a, o2: after[t][a][o2][j],
            )
            for s in range(n_own)
        ]
        columns.append(normalize(weights).weights)
    exact = all(isinstance(w, Fraction) for col in columns for w in col)
    entries = np.array(columns, dtype=object if exact else np.float64).T
    return StochasticMatrix(opps, range(n_own), entries)


def constructive_strategy(pg: PositionGame, i: int) -> PositionStrategy:
    """Respond to the opponent's last move with the position-sensitive CD column.

    Before any move has been observed the opponent is assumed to have
    played their first move.
    """

    def rule(x, last):
        opp = (0,) if last is None else (last[1 - i],)
        return position_cd(pg, i, x).column(opp)

    return PositionStrategy(i, "stochastic", rule)


def _sample(dist: Distribution, rng: np.random.Generator) -> int:
    p = np.array([float(w) for w in dist.weights])
    return int(dist.support[rng.choice(len(p), p=p / p.sum())])


def simulate(
    pg: PositionGame,
    strategies: Sequence[PositionStrategy],
    init: Position,
    rounds: int,
    seed: int = 0,
    last: Profile | None = None,
) -> Trajectory:
    """Play ``rounds`` rounds from position ``init``.

    ``last`` is the profile the strategies treat as previously played before
    round 0; by default it is read off the position when the position
    records one. Stochastic strategies draw from a generator seeded with
    ``seed``, so equal inputs give equal trajectories.
    """
    m = pg.base.player_count
    if len(strategies) != m:
        raise ArityError(f"need {m} strategies, got {len(strategies)}")
    for k, strategy in enumerate(strategies):
        if strategy.player != k:
            raise ArityError(f"strategy {k} is for player {strategy.player}")
    if rounds < 0:
        raise DomainError("rounds must be non-negative")

    rng = np.random.default_rng(seed)
    if last is None:
        last = last_profile(pg, init)
    x = init
    totals = (Fraction(0),) * m
    traj = Trajectory(pg)
    for _ in range(rounds):
        moves = []
        for strategy in strategies:
            choice = strategy.rule(x, last)
            if strategy.kind == "stochastic":
                choice = _sample(choice, rng)
            if not 0 <= choice < pg.base.shape[strategy.player]:
                raise DomainError(f"strategy for player {strategy.player} chose move {choice}")
            moves.append(int(choice))
        s = tuple(moves)
        pay = pg.payoffs(s, x)
        totals = pay if pg.cumulative else tuple(a + b for a, b in zip(totals, pay))
        traj.steps.append(Step(x, s, pay, totals))
        x = pg.update(s, x)
        last = s
    traj.final_position = x
    return traj


def _fmt(v) -> str:
    if isinstance(v, (Fraction, int)):
        return str(Fraction(v))
    return format(float(v), ".17g")


def export_trajectory(traj: Trajectory) -> str:
    """One ``round <n> <moves> <payoffs> <cumulative>`` line per round."""
    g = traj.game.base
    lines = []
    for n, step in enumerate(traj.steps):
        fields = ["round", str(n)]
        fields += list(g.profile_names(step.profile))
        fields += [_fmt(v) for v in step.payoffs]
        fields += [_fmt(v) for v in step.cumulative]
        lines.append(" ".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class PositionIteration:
    steps: list[tuple[Position, Distribution]]
    converged: bool

    @property
    def final(self) -> tuple[Position, Distribution]:
        return self.steps[-1]


def iterate_position_distribution(
    pg: PositionGame,
    rounds: int,
    init_position: Position,
    init_dist: Distribution,
    tol: float = 1e-9,
) -> PositionIteration:
    """Mean-field iteration of the position-sensitive constructive profile.

    Each step pushes the profile distribution through the CD profile kernel
    evaluated at the current expected position, then moves the expected
    position to the distribution-weighted average of the updated positions.
    Stops after ``rounds`` steps, or earlier once two successive
    distributions agree within ``tol`` (max-norm).
    """
    g = pg.base
    if g.player_count != 2:
        raise ArityError("position iteration needs a 2-player game")
    profiles = g.profiles
    x = tuple(float(v) for v in init_position)
    dist = np.array([float(w) for w in init_dist.weights])
    steps = [(x, Distribution(profiles, dist.tolist()))]
    converged = False
    for _ in range(rounds):
        mats = [position_cd(pg, i, x) for i in range(2)]
        kernel = assemble_chain(g, mats).to_float()
        nxt = kernel @ dist
        nxt = nxt / nxt.sum()
        moved = [np.array([float(v) for v in pg.update(s, x)]) for s in profiles]
        x = tuple(float(v) for v in sum(p * mv for p, mv in zip(nxt, moved)))
        delta = float(np.max(np.abs(nxt - dist)))
        dist = nxt
        steps.append((x, Distribution(profiles, dist.tolist())))
        if delta < tol:
            converged = True
            break
    return PositionIteration(steps, converged)


def defection_advantage(rounds_after_defection: int) -> Fraction:
    """The lone defector's lead in inflation PD after n further all-defect rounds."""
    if rounds_after_defection < 0:
        raise DomainError("rounds must be non-negative")
    return Fraction(11, 2**rounds_after_defection)
