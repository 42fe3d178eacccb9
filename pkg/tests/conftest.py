import itertools
import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from gamefix import matching_pennies, new_game, prisoners_dilemma  # noqa: E402

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def pd():
    return prisoners_dilemma()


@pytest.fixture
def pennies():
    return matching_pennies()


@pytest.fixture
def constant_game():
    return new_game(2, [["a", "b"], ["x", "y"]], {s: (3, 3) for s in itertools.product("ab", "xy")})


@st.composite
def games(draw, min_players=1, max_players=3, max_moves=4, max_payoff=6, nonnegative=True):
    m = draw(st.integers(min_players, max_players))
    sizes = draw(st.lists(st.integers(1, max_moves), min_size=m, max_size=m))
    lo = 0 if nonnegative else -max_payoff
    cells = list(itertools.product(*(range(n) for n in sizes)))
    values = draw(
        st.lists(
            st.lists(st.integers(lo, max_payoff), min_size=m, max_size=m),
            min_size=len(cells),
            max_size=len(cells),
        )
    )
    move_sets = [[f"m{a}" for a in range(n)] for n in sizes]
    return new_game(m, move_sets, {s: [Fraction(v) for v in vals] for s, vals in zip(cells, values)})


positive_rationals = st.fractions(min_value=Fraction(1, 7), max_value=7, max_denominator=9)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
