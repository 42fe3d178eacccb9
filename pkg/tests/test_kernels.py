import numpy as np
import pytest
from conftest import games
from hypothesis import given, settings
from hypothesis import strategies as st

from gamefix import kernels
from gamefix.responses import RESPONSES, equilibria, rationalizable

pytestmark = pytest.mark.skipif(kernels.numba_impl is None, reason="numba not installed")

NP, NB = kernels.numpy_impl, kernels.numba_impl


def bool_matrix(rng, shape, density):
    return rng.random(shape) < density


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_compose_agrees(seed, a, b, c):
    rng = np.random.default_rng(seed)
    r, s = bool_matrix(rng, (b, a), 0.3), bool_matrix(rng, (c, b), 0.3)
    assert np.array_equal(NP.compose(r, s), NB.compose(r, s))


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 4), st.sampled_from([0.1, 0.3, 0.6]))
def test_weak_fixpoint_agrees(seed, n, n_states, density):
    mat = bool_matrix(np.random.default_rng(seed), (n, n * n_states), density)
    assert np.array_equal(NP.weak_fixpoint(mat, n_states), NB.weak_fixpoint(mat, n_states))


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6), st.integers(1, 5))
def test_response_kernels_agree(seed, n, n_opp, levels):
    rng = np.random.default_rng(seed)
    q = rng.integers(0, levels, (n, n_opp)).astype(np.int64)
    opp = rng.integers(0, levels, (n, n_opp)).astype(np.int64)
    assert np.array_equal(NP.best_response(q), NB.best_response(q))
    assert np.array_equal(NP.stable_response(q), NB.stable_response(q))
    assert np.array_equal(NP.constructive_response(q, opp), NB.constructive_response(q, opp))


@settings(max_examples=40)
@given(games())
def test_library_results_independent_of_flag(g):
    concepts = ["br", "sr", "ur"] + (["cr"] if g.player_count == 2 else [])
    eq = ["nash", "ess", "uniform"] + (["constructive"] if g.player_count == 2 else [])
    results = {}
    for flag in ("0", "1"):
        with pytest.MonkeyPatch.context() as mp:
            mp.setenv("GAMEFIX_NUMBA", flag)
            assert kernels.active() is (NP if flag == "0" else NB)
            results[flag] = (
                [RESPONSES[c](g, i).relation for c in concepts for i in range(g.player_count)],
                [equilibria(g, c) for c in eq],
                [rationalizable(g, c) for c in eq if c != "constructive"],
            )
    assert results["0"] == results["1"]


def test_flag_selects_implementation(monkeypatch):
    monkeypatch.setenv("GAMEFIX_NUMBA", "0")
    assert not kernels.numba_enabled()
    assert kernels.active() is NP
    monkeypatch.delenv("GAMEFIX_NUMBA")
    assert kernels.numba_enabled()
    assert kernels.active() is NB
