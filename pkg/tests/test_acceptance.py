"""Acceptance criteria, one test per criterion.

Each test prints ``ACCEPTANCE <n> PASS|FAIL <title>``; the lines are
collected in ``RESULTS`` and repeated in the pytest terminal summary.
Run alone with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

import functools
import random
import sys
from fractions import Fraction as F

import numpy as np
import oracles

from gamefix import (
    IndexedChainFamily,
    affine,
    bd,
    cd,
    defection_advantage,
    equilibria,
    inflation_pd,
    iterate_position_distribution,
    last_move_pd,
    matching_pennies,
    position_cd,
    prisoners_dilemma,
    profile_chain,
    rationalizable,
    sd,
    simulate,
    stationary_distribution,
    tit_for_tat,
    transform_payoffs,
    ud,
    uniform_fixpoint,
    verify_uniform_fixpoint,
)
from gamefix.distributions import DISTRIBUTIONS, Distribution
from gamefix.position import PositionStrategy
from gamefix.responses import RESPONSES

RESULTS: list[str] = []
C, D = 0, 1


def criterion(number, title):
    def wrap(body):
        @functools.wraps(body)
        def run():
            try:
                body()
            except BaseException:
                _report(number, "FAIL", title)
                raise
            _report(number, "PASS", title)

        return run

    return wrap


def _report(number, status, title):
    line = f"ACCEPTANCE {number} {status} {title}"
    RESULTS.append(line)
    print(line)


def columns(mat):
    return [list(mat.entries[:, j]) for j in range(mat.entries.shape[1])]


def constant(i, move):
    return PositionStrategy(i, "deterministic", lambda x, last: move)


@criterion(1, "exact PD response matrices")
def test_criterion_1_exact_matrices():
    g = prisoners_dilemma()
    expected = {
        bd: [[F(10, 21), F(11, 21)], [0, 1]],
        sd: [[F(25, 58), F(33, 58)], [0, 1]],
        ud: [[F(1000, 1011), F(11, 1011)], [0, 1]],
        cd: [[F(19, 30), F(11, 30)], [0, 1]],
    }
    for build, cols in expected.items():
        for i in range(2):
            got = columns(build(g, i))
            assert got == cols, (build.__name__, i, got)
            assert all(isinstance(v, F) for col in got for v in col)


@criterion(2, "equilibrium sets")
def test_criterion_2_equilibrium_sets():
    pd, pennies = prisoners_dilemma(), matching_pennies()
    assert set(equilibria(pd, "nash")) == {(D, D)}
    assert set(equilibria(pd, "constructive")) == {(C, C), (D, D)}
    assert set(rationalizable(pd, "nash")) == {(D, D)}
    assert set(equilibria(pennies, "nash")) == set()


@criterion(3, "fixed-point pipeline equals brute-force oracle")
def test_criterion_3_oracle_equivalence():
    rng = random.Random(20240603)
    for _ in range(200):
        g = oracles.random_game(rng, m=rng.randint(1, 3), max_moves=4)
        for concept in ("nash", "ess", "uniform"):
            assert equilibria(g, concept) == oracles.equilibrium_set(g, concept)
            assert rationalizable(g, concept) == oracles.rationalizable_set(g, concept)
    for _ in range(200):
        g = oracles.random_game(rng, m=2, max_moves=4)
        assert equilibria(g, "constructive") == oracles.equilibrium_set(g, "constructive")


@criterion(4, "defection absorbs the PD chains")
def test_criterion_4_defection_absorption():
    g = prisoners_dilemma()
    for concept in ("bd", "sd", "ud", "cd"):
        dist = stationary_distribution(g, concept)
        assert dist[(D, D)] >= 1 - 1e-9, (concept, dist)


@criterion(5, "uniform fixed point identity and ergodic agreement")
def test_criterion_5_uniform_fixpoint():
    rng = np.random.default_rng(5)
    for n in range(100):
        k, m = rng.integers(1, 6, size=2)
        sparsity = (0.0, 0.5, 0.8)[n % 3]
        fam = IndexedChainFamily(np.stack([oracles.random_stochastic(rng, k, sparsity) for _ in range(m)]))
        assert verify_uniform_fixpoint(fam, uniform_fixpoint(fam), 1e-9)
    for _ in range(100):
        k = int(rng.integers(1, 6))
        h = oracles.random_stochastic(rng, k)
        got = uniform_fixpoint(IndexedChainFamily(h))[:, 0]
        assert np.max(np.abs(got - oracles.stationary_linear(h))) <= 1e-8


@criterion(6, "ordinal and scale invariance")
def test_criterion_6_invariance():
    rng = random.Random(6)

    def positive():
        return F(rng.randint(1, 40), rng.randint(1, 9))

    for _ in range(100):
        g = oracles.random_game(rng, m=rng.randint(1, 3), max_moves=4)
        m = g.player_count
        shifted, scaled = g, g
        for i in range(m):
            shifted = transform_payoffs(shifted, i, affine(positive(), F(rng.randint(-30, 30), rng.randint(1, 9))))
            scaled = transform_payoffs(scaled, i, affine(positive()))
        relations = ["br", "sr", "ur"] + (["cr"] if m == 2 else [])
        matrices = ["bd", "sd"] + (["ud"] if m == 2 else [])
        for i in range(m):
            for concept in relations:
                assert RESPONSES[concept](shifted, i).relation == RESPONSES[concept](g, i).relation
            for concept in matrices:
                assert DISTRIBUTIONS[concept](scaled, i) == DISTRIBUTIONS[concept](g, i)


@criterion(7, "position dynamics")
def test_criterion_7_position_dynamics():
    tft = [tit_for_tat(0), tit_for_tat(1)]
    pd = last_move_pd()
    assert simulate(pd, tft, (C, C), 10).profiles == [(C, C)] * 10
    assert simulate(pd, tft, (D, D), 10).profiles == [(D, D)] * 10
    assert simulate(pd, tft, (C, D), 4).profiles == [(D, C), (C, D), (D, C), (C, D)]

    pg = inflation_pd()
    for move, limit in ((C, F(20)), (D, F(2))):
        traj = simulate(pg, [constant(0, move), constant(1, move)], (F(0), F(0)), 30)
        for n, step in enumerate(traj.steps, start=1):
            assert all(abs(x - limit) == limit / 2**n for x in step.cumulative)

    assert defection_advantage(10) == F(11, 1024)
    for n in (0, 1, 3, 10):
        finals = []
        for first in ((D, C), (C, D)):
            opening = simulate(pg, [constant(0, first[0]), constant(1, first[1])], (F(0), F(0)), 1)
            rest = simulate(pg, [constant(0, D), constant(1, D)], opening.final_position, n)
            finals.append(rest.final_position)
        assert finals[0][0] - finals[1][0] == defection_advantage(n)


@criterion(8, "position CD closed form")
def test_criterion_8_position_cd():
    pg = inflation_pd()
    for x in (F(0), F(2), F(10)):
        expected = [
            [(38 + x) / (60 + 2 * x), (22 + x) / (60 + 2 * x)],
            [x / (2 + 2 * x), (2 + x) / (2 + 2 * x)],
        ]
        for i in range(2):
            assert columns(position_cd(pg, i, (x, x))) == expected
    for i in range(2):
        assert position_cd(pg, i, (F(0), F(0))) == cd(prisoners_dilemma(), i)


@criterion(9, "every produced column is stochastic")
def test_criterion_9_stochasticity():
    rng = random.Random(9)
    nrng = np.random.default_rng(9)
    for _ in range(100):
        g = oracles.random_game(rng, m=rng.randint(1, 3), max_moves=3)
        concepts = ["bd", "sd"] + (["ud", "cd"] if g.player_count == 2 else [])
        for concept in concepts:
            for i in range(g.player_count):
                for col in columns(DISTRIBUTIONS[concept](g, i)):
                    assert sum(col) == 1 and min(col) >= 0
            chain = profile_chain(g, concept)
            assert all(sum(col) == 1 for col in columns(chain))
            pi = np.array(stationary_distribution(g, concept).weights)
            assert abs(pi.sum() - 1) <= 1e-9 and pi.min() >= -1e-12
    for _ in range(50):
        x = (F(rng.randint(0, 200), rng.randint(1, 9)), F(rng.randint(0, 200), rng.randint(1, 9)))
        for i in range(2):
            assert all(sum(col) == 1 for col in columns(position_cd(inflation_pd(), i, x)))
    for _ in range(50):
        k, m = nrng.integers(1, 6, size=2)
        fam = IndexedChainFamily(np.stack([oracles.random_stochastic(nrng, k, 0.5) for _ in range(m)]))
        assert np.max(np.abs(uniform_fixpoint(fam).sum(axis=0) - 1)) <= 1e-9
    g = prisoners_dilemma()
    run = iterate_position_distribution(inflation_pd(), 200, (0, 0), Distribution(g.profiles, [F(1, 4)] * 4))
    for _, dist in run.steps:
        assert abs(sum(dist.weights) - 1) <= 1e-9


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:
                failed += 1
    sys.exit(1 if failed else 0)
