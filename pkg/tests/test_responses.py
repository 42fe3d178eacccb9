from fractions import Fraction

import oracles
import pytest
from conftest import games
from hypothesis import given, settings
from hypothesis import strategies as st

from gamefix import (
    ArityError,
    affine,
    best_response,
    constructive_response,
    equilibria,
    new_game,
    rationalizable,
    response_profile,
    stable_response,
    transform_payoffs,
    uniform_moves,
    uniform_response,
)
from gamefix.relations import empty, full
from gamefix.responses import RESPONSES, response

C, D = 0, 1


def image(rr, opp):
    return set(rr.responses((opp,)))


def test_best_response_pd(pd):
    br = best_response(pd, 0)
    assert image(br, C) == {D}
    assert image(br, D) == {D}


def test_best_response_constant(constant_game):
    for i in range(2):
        assert best_response(constant_game, i).relation == full(
            best_response(constant_game, i).relation.source, (0, 1)
        )


def test_best_response_pennies(pennies):
    br = best_response(pennies, 0)
    assert image(br, 0) == {0}
    assert image(br, 1) == {1}


def test_stable_equals_best_on_pd(pd):
    for i in range(2):
        assert stable_response(pd, i).relation == best_response(pd, i).relation


def test_stable_breaks_ties_by_dominance():
    # row 0 pays (1, 1), row 1 pays (1, 0) across the opponent's two moves
    g = new_game(2, [["a", "b"], ["x", "y"]], {
        ("a", "x"): (1, 0), ("a", "y"): (1, 0),
        ("b", "x"): (1, 0), ("b", "y"): (0, 0),
    })
    sr = stable_response(g, 0)
    assert image(sr, 0) == {0}
    assert image(sr, 1) == {0}
    assert image(best_response(g, 0), 0) == {0, 1}


def test_stable_constant(constant_game):
    rel = stable_response(constant_game, 0).relation
    assert rel == full(rel.source, rel.target)


def test_uniform_pd(pd):
    ur = uniform_response(pd, 0)
    assert image(ur, C) == {D}
    assert image(ur, D) == {D}
    assert uniform_moves(pd, 0) == [D]


def test_uniform_may_be_empty(pennies):
    for i in range(2):
        rel = uniform_response(pennies, i).relation
        assert rel == empty(rel.source, rel.target)


def test_uniform_one_player():
    g = new_game(1, [["a", "b", "c"]], {("a",): (2,), ("b",): (5,), ("c",): (5,)})
    assert uniform_response(g, 0).relation == best_response(g, 0).relation
    # only the antecedent is vacuous; the empty opponent profile still demands a best reply
    assert uniform_moves(g, 0) == [1, 2]
    assert all(oracles.is_uniform_move(g, 0, a) == (a in (1, 2)) for a in range(3))


def test_uniform_moves_constant(constant_game):
    assert uniform_moves(constant_game, 0) == [0, 1]


def test_constructive_pd(pd):
    cr = constructive_response(pd, 0)
    assert image(cr, C) == {C, D}
    assert image(cr, D) == {D}


def test_constructive_constant(constant_game):
    rel = constructive_response(constant_game, 1).relation
    assert rel == full(rel.source, rel.target)


def test_constructive_needs_two_players():
    g = oracles.random_game(__import__("random").Random(1), m=3)
    with pytest.raises(ArityError):
        constructive_response(g, 0)
    with pytest.raises(ArityError):
        equilibria(g, "constructive")


def test_response_profile_pd(pd):
    rel = response_profile(pd, [best_response(pd, i) for i in range(2)])
    for s in pd.profiles:
        assert rel.image(s) == [(D, D)]


def test_response_profile_full_and_empty(pd):
    fulls = [full(best_response(pd, i).relation.source, (0, 1)) for i in range(2)]
    assert response_profile(pd, fulls) == full(pd.profiles, pd.profiles)
    mixed = [fulls[0], empty(fulls[1].source, (0, 1))]
    assert response_profile(pd, mixed) == empty(pd.profiles, pd.profiles)
    with pytest.raises(ArityError):
        response_profile(pd, fulls[:1])


def test_equilibria_examples(pd, pennies):
    assert equilibria(pd, "nash") == [(D, D)]
    assert equilibria(pd, "constructive") == [(C, C), (D, D)]
    assert equilibria(pennies, "nash") == []
    assert rationalizable(pd, "nash") == [(D, D)]
    assert rationalizable(pennies, "nash") == list(pennies.profiles)


def test_rationalizable_empty_profile(pennies):
    assert rationalizable(pennies, "uniform") == []


@given(games())
def test_nash_matches_direct_definition(g):
    assert equilibria(g, "nash") == oracles.nash_direct(g)


@settings(max_examples=60)
@given(games(), st.sampled_from(["nash", "ess", "uniform"]))
def test_sets_match_oracle(g, concept):
    assert equilibria(g, concept) == oracles.equilibrium_set(g, concept)
    assert rationalizable(g, concept) == oracles.rationalizable_set(g, concept)


@settings(max_examples=60)
@given(games(min_players=2, max_players=2))
def test_constructive_matches_oracle(g):
    assert equilibria(g, "constructive") == oracles.equilibrium_set(g, "constructive")


@settings(max_examples=60)
@given(games(), st.data())
def test_relations_match_oracle(g, data):
    i = data.draw(st.integers(0, g.player_count - 1))
    concepts = ["br", "sr", "ur"] + (["cr"] if g.player_count == 2 else [])
    for concept in concepts:
        assert response(g, i, concept).relation.pairs() == oracles.relation_pairs(g, i, concept)


@given(games(), st.data())
def test_refinements_within_best_response(g, data):
    i = data.draw(st.integers(0, g.player_count - 1))
    br = best_response(g, i).relation
    assert stable_response(g, i).relation <= br
    assert uniform_response(g, i).relation <= br


@given(games(min_players=2, max_players=2))
def test_nash_within_constructive(g):
    assert set(equilibria(g, "nash")) <= set(equilibria(g, "constructive"))


@settings(max_examples=50)
@given(games(nonnegative=False), st.data())
def test_ordinal_invariance(g, data):
    h = g
    for i in range(g.player_count):
        a = data.draw(st.fractions(min_value=Fraction(1, 9), max_value=9), label=f"scale{i}")
        b = data.draw(st.fractions(min_value=-9, max_value=9), label=f"shift{i}")
        h = transform_payoffs(h, i, affine(a, b))
    concepts = ["br", "sr", "ur"] + (["cr"] if g.player_count == 2 else [])
    for i in range(g.player_count):
        for concept in concepts:
            assert RESPONSES[concept](h, i).relation == RESPONSES[concept](g, i).relation


@given(games(nonnegative=False), st.data())
def test_stable_response_survives_small_mixtures(g, data):
    i = data.draw(st.integers(0, g.player_count - 1))
    sr = stable_response(g, i)
    values = [v[i] for v in g.payoffs.values()]
    diameter = max(values) - min(values)
    opps = sr.relation.source

    def rho(a, opp):
        return g.payoffs[opp[:i] + (a,) + opp[i:]][i]

    for s_opp in opps:
        for s in sr.responses(s_opp):
            gaps = [rho(s, s_opp) - rho(t, s_opp) for t in range(g.shape[i])]
            nonzero = [gap for gap in gaps if gap != 0]
            eps = Fraction(1, 2) if not nonzero or diameter == 0 else min(nonzero) / (min(nonzero) + diameter)
            for t in range(g.shape[i]):
                for t_opp in opps:
                    lhs = (1 - eps) * rho(s, s_opp) + eps * rho(s, t_opp)
                    rhs = (1 - eps) * rho(t, s_opp) + eps * rho(t, t_opp)
                    assert lhs >= rhs
