"""Equilibria, rationalizable sets and stationary play of finite games,
computed as relational and stochastic fixed points."""

from .distributions import (
    Distribution,
    StochasticMatrix,
    assemble_chain,
    bd,
    cd,
    normalize,
    positive_part,
    profile_chain,
    sd,
    ud,
)
from .errors import (
    ArityError,
    ConvergenceError,
    DegenerateProjectorError,
    DimensionError,
    DomainError,
    GameFixError,
    MissingProfileError,
    NegativePayoffError,
    ParseError,
)
from .game import (
    Game,
    affine,
    enumerate_opponent_profiles,
    matching_pennies,
    new_game,
    payoff,
    prisoners_dilemma,
    transform_payoffs,
)
from .io import parse_chain, parse_game, serialize_game
from .markov import (
    IndexedChainFamily,
    cesaro_projector,
    fixpoint_residual,
    stationary_distribution,
    uniform_fixpoint,
    verify_uniform_fixpoint,
)
from .position import (
    PositionGame,
    PositionStrategy,
    Trajectory,
    constructive_strategy,
    defection_advantage,
    export_trajectory,
    inflation_pd,
    iterate_position_distribution,
    iterated_pd,
    last_move_pd,
    position_cd,
    simulate,
    stateless,
    tit_for_tat,
)
from .relations import (
    Process,
    Relation,
    compose,
    extract_control,
    strong_fixpoint,
    weak_fixpoint,
)
from .responses import (
    ResponseRelation,
    best_response,
    constructive_response,
    equilibria,
    rationalizable,
    response_profile,
    stable_response,
    uniform_moves,
    uniform_response,
)

__version__ = "0.1.0"
