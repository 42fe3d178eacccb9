"""Principal-eigenspace projectors and the uniform fixed point of chain families.

Everything here is floating point. Exact matrices from
:mod:`gamefix.distributions` are converted on entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import FLOAT_TOL, Distribution, StochasticMatrix, profile_chain
from .errors import ConvergenceError, DegenerateProjectorError, DimensionError, DomainError, NotStochasticError
from .game import Game

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


def _as_float_square(h) -> np.ndarray:
    if isinstance(h, StochasticMatrix):
        h = h.to_float()
    h = np.array(h, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {h.shape}")
    return h


def _check_stochastic(h: np.ndarray):
    if np.any(h < -FLOAT_TOL) or np.any(np.abs(h.sum(axis=0) - 1) > FLOAT_TOL):
        raise NotStochasticError("matrix is not column-stochastic")


def cesaro_projector(h, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """Limit of the Cesàro averages (1/N) sum_{n<=N} H^n.

    The averages themselves converge like 1/N, far too slowly for tight
    tolerances. The same limit is reached geometrically as the limit of
    powers of the lazy chain (I + H)/2: it shares the eigenvalue-1
    eigenspace and spectral projector with H, while every other eigenvalue
    moves strictly inside the unit disc, periodic ones included. The powers
    are taken by repeated squaring, stopping once two successive squarings
    differ by less than ``tol`` in max-norm. ``max_iter`` bounds the number
    of squarings.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    h = _as_float_square(h)
    _check_stochastic(h)
    p = 0.5 * (np.eye(h.shape[0]) + h)
    for _ in range(max_iter):
        nxt = p @ p
        nxt /= nxt.sum(axis=0, keepdims=True)
        if np.max(np.abs(nxt - p)) < tol:
            return nxt
        p = nxt
    raise ConvergenceError(f"projector did not converge within {max_iter} squarings")


@dataclass(frozen=True, eq=False)
class IndexedChainFamily:
    """m square k×k column-stochastic blocks, ``blocks[i]`` being H_i.

    As one k × (k·m) matrix, column ``<v, i>`` sits at position ``v*m + i``.
    """

    blocks: np.ndarray

    def __post_init__(self):
        blocks = np.array(self.blocks, dtype=np.float64)
        if blocks.ndim == 2:
            blocks = blocks[None]
        if blocks.ndim != 3 or blocks.shape[1] != blocks.shape[2]:
            raise DimensionError(f"blocks must have shape (m, k, k), got {blocks.shape}")
        for block in blocks:
            _check_stochastic(block)
        blocks.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return self.blocks.shape[1]

    @property
    def m(self) -> int:
        return self.blocks.shape[0]

    def as_matrix(self) -> np.ndarray:
        # [u, v, i] -> column v*m + i
        return self.blocks.transpose(1, 2, 0).reshape(self.k, self.k * self.m)

    @classmethod
    def from_matrix(cls, matrix, m: int) -> "IndexedChainFamily":
        matrix = np.asarray(matrix, dtype=np.float64)
        k = matrix.shape[0]
        if matrix.shape != (k, k * m):
            raise DimensionError(f"expected a {k} x {k * m} matrix, got {matrix.shape}")
        return cls(matrix.reshape(k, k, m).transpose(2, 0, 1))


def uniform_fixpoint(
    h: IndexedChainFamily, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> np.ndarray:
    """The uniform fixed point H•, a k×m matrix with stochastic columns.

    Column i is the trace of the square of the projector onto H_i's fixed
    vectors, renormalized:
    h•_ui ∝ sum_w P_i[w, w] P_i[u, w].
    """
    if not isinstance(h, IndexedChainFamily):
        h = IndexedChainFamily(h)
    out = np.empty((h.k, h.m))
    for i, block in enumerate(h.blocks):
        proj = cesaro_projector(block, tol, max_iter)
        diag = np.diag(proj)
        weights = proj @ diag
        denom = float(np.sum(diag[None, :] * proj))
        if not denom > 0:
            raise DegenerateProjectorError(f"block {i}: zero normalization in the trace formula")
        out[:, i] = weights / denom
    return out


def fixpoint_residual(h: IndexedChainFamily, candidate) -> float:
    """Max-norm of H·<candidate, I> − candidate."""
    if not isinstance(h, IndexedChainFamily):
        h = IndexedChainFamily(h)
    if isinstance(candidate, StochasticMatrix):
        candidate = candidate.to_float()
    c = np.asarray(candidate, dtype=np.float64)
    if c.ndim == 1:
        c = c[:, None]
    if c.shape != (h.k, h.m):
        raise DimensionError(f"candidate has shape {c.shape}, expected {(h.k, h.m)}")
    # <candidate, I>: rows <u, j>, column i, nonzero only when j == i
    paired = np.zeros((h.k * h.m, h.m))
    for i in range(h.m):
        paired[np.arange(h.k) * h.m + i, i] = c[:, i]
    return float(np.max(np.abs(h.as_matrix() @ paired - c)))


def verify_uniform_fixpoint(h: IndexedChainFamily, candidate, tol: float = 1e-9) -> bool:
    return fixpoint_residual(h, candidate) < tol


def stationary_distribution(
    g: Game, concept: str, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> Distribution:
    """Uniform fixed point of the profile chain, as a distribution over profiles."""
    chain = profile_chain(g, concept)
    column = uniform_fixpoint(IndexedChainFamily(chain.to_float()), tol, max_iter)[:, 0]
    return Distribution(chain.target, column.tolist())
