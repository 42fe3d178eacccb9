"""Relational response operators and the equilibria they induce.

Each response relation goes from opponent profiles A_{-i} (columns, in
``enumerate_opponent_profiles`` order) to the player's own moves A_i (rows).
Relation labels are move indices and index tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ArityError, DimensionError, DomainError
from .game import (
    Game,
    Profile,
    check_player,
    enumerate_opponent_profiles,
    opponent_index,
    payoff_ranks,
    profile_table,
)
from .relations import UNIT, Relation, strong_fixpoint, weak_fixpoint

CONCEPTS = ("br", "sr", "ur", "cr")
EQUILIBRIUM_CONCEPTS = {"nash": "br", "ess": "sr", "uniform": "ur", "constructive": "cr"}
RATIONALIZABLE_CONCEPTS = {"nash": "br", "ess": "sr", "uniform": "ur"}


@dataclass(frozen=True)
class ResponseRelation:
    player: int
    relation: Relation
    concept: str

    def responses(self, opp: Profile) -> list[int]:
        return self.relation.image(tuple(opp))


@lru_cache(maxsize=64)
def _tables(g: Game):
    ranks = payoff_ranks(g)
    tables = [profile_table(g, i) for i in range(g.player_count)]
    return ranks, tables


def _wrap(g: Game, i: int, matrix: np.ndarray, concept: str) -> ResponseRelation:
    rel = Relation(enumerate_opponent_profiles(g, i), range(g.shape[i]), matrix)
    return ResponseRelation(i, rel, concept)


def _own_ranks(g: Game, i: int) -> np.ndarray:
    ranks, tables = _tables(g)
    return np.ascontiguousarray(ranks[i][tables[i]])


def best_response(g: Game, i: int) -> ResponseRelation:
    check_player(g, i)
    return _wrap(g, i, kernels.active().best_response(_own_ranks(g, i)), "br")


def stable_response(g: Game, i: int) -> ResponseRelation:
    """Best responses that also weakly dominate every move tying with them."""
    check_player(g, i)
    return _wrap(g, i, kernels.active().stable_response(_own_ranks(g, i)), "sr")


def _best_at_profile(g: Game) -> np.ndarray:
    """``out[k, p]``: player k's move in profile p is a best response within p."""
    impl = kernels.active()
    out = np.empty((g.player_count, len(g.profiles)), dtype=np.bool_)
    for k in range(g.player_count):
        br = impl.best_response(_own_ranks(g, k))
        own = np.array([s[k] for s in g.profiles], dtype=np.int64)
        out[k] = br[own, opponent_index(g, k)]
    return out


def _uniform_mask(g: Game, i: int) -> np.ndarray:
    _, tables = _tables(g)
    table = tables[i]  # [own, opp] -> profile
    best = _best_at_profile(g)
    others = [k for k in range(g.player_count) if k != i]
    # every opponent best-responds inside the profile (s_i, t_{-i})
    provoked = np.ones(table.shape, dtype=np.bool_)
    for k in others:
        provoked &= best[k][table]
    return (~provoked | best[i][table]).all(axis=1)


def uniform_moves(g: Game, i: int) -> list[int]:
    """Moves that stay best against every opponents' best reply to them."""
    check_player(g, i)
    return np.flatnonzero(_uniform_mask(g, i)).tolist()


def uniform_response(g: Game, i: int) -> ResponseRelation:
    check_player(g, i)
    br = kernels.active().best_response(_own_ranks(g, i))
    return _wrap(g, i, br & _uniform_mask(g, i)[:, None], "ur")


def _require_two_players(g: Game, what: str):
    if g.player_count != 2:
        raise ArityError(f"{what} is defined for 2-player games only, got {g.player_count} players")


def constructive_response(g: Game, i: int) -> ResponseRelation:
    """Keep s_i unless some better t_i faces no credible punishing countermove."""
    check_player(g, i)
    _require_two_players(g, "the constructive response")
    ranks, tables = _tables(g)
    own = np.ascontiguousarray(ranks[i][tables[i]])
    opp = np.ascontiguousarray(ranks[1 - i][tables[i]])
    return _wrap(g, i, kernels.active().constructive_response(own, opp), "cr")


RESPONSES = {
    "br": best_response,
    "sr": stable_response,
    "ur": uniform_response,
    "cr": constructive_response,
}


def response(g: Game, i: int, concept: str) -> ResponseRelation:
    try:
        build = RESPONSES[concept]
    except KeyError:
        raise DomainError(f"unknown response concept {concept!r}") from None
    return build(g, i)


def response_profile(g: Game, rs) -> Relation:
    """Relation A -> A: s is related to t iff every s_{-i} RS_i t_i."""
    rs = list(rs)
    if len(rs) != g.player_count:
        raise ArityError(f"need {g.player_count} response relations, got {len(rs)}")
    mats = []
    for i, r in enumerate(rs):
        rel = r.relation if isinstance(r, ResponseRelation) else r
        expected = (g.shape[i], len(enumerate_opponent_profiles(g, i)))
        if rel.matrix.shape != expected:
            raise DimensionError(f"response relation {i} has shape {rel.matrix.shape}, expected {expected}")
        mats.append(np.ascontiguousarray(rel.matrix))
    own_idx = np.array([[s[i] for s in g.profiles] for i in range(g.player_count)], dtype=np.int64)
    opp_idx = np.stack([opponent_index(g, i) for i in range(g.player_count)])
    matrix = kernels.active().assemble_profile(mats, own_idx, opp_idx)
    return Relation(g.profiles, g.profiles, matrix)


def concept_profile(g: Game, concept: str) -> Relation:
    return response_profile(g, [response(g, i, concept) for i in range(g.player_count)])


def _profiles_of(rel: Relation) -> list[Profile]:
    # a relation 1 -> A read as a subset of A
    return [a for a, hit in zip(rel.target, rel.matrix[:, 0]) if hit]


def equilibria(g: Game, concept: str) -> list[Profile]:
    """Profiles fixed by the concept's response profile, in lexicographic order.

    ``concept`` is one of nash, ess, uniform, constructive. The result may be
    empty; that is an answer, not an error.
    """
    try:
        rc = EQUILIBRIUM_CONCEPTS[concept]
    except KeyError:
        raise DomainError(f"unknown equilibrium concept {concept!r}") from None
    return _profiles_of(strong_fixpoint(concept_profile(g, rc), UNIT))


def rationalizable(g: Game, concept: str) -> list[Profile]:
    """The weak fixed point of the concept's response profile."""
    try:
        rc = RATIONALIZABLE_CONCEPTS[concept]
    except KeyError:
        raise DomainError(f"unknown rationalizability concept {concept!r}") from None
    return _profiles_of(weak_fixpoint(concept_profile(g, rc), UNIT))
