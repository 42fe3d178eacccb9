"""Hot boolean/ordinal kernels, each in a numba and a pure-numpy flavour.

The numba path is used when numba imports and ``GAMEFIX_NUMBA`` is not set
to ``0``. Both paths are always importable as ``numpy_impl`` and
``numba_impl`` (the latter is ``None`` without numba) so tests and the
benchmark can compare them directly.

All kernels work on bool matrices or on integer payoff ranks, never on
Fractions, so both paths give identical results.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


# ---------------------------------------------------------------------------
# numpy


def _np_compose(r, s):
    # float32 matmul is exact for counts below 2**24
    return (s.astype(np.float32) @ r.astype(np.float32)) > 0


def _np_weak_fixpoint(mat, n_states):
    n = mat.shape[0]
    # blocks[x][a_out, c] = ((c, x), a_out) in R
    blocks = mat.reshape(n, n, n_states).transpose(2, 0, 1)
    out = np.zeros((n, n_states), dtype=np.bool_)
    for x in range(n_states):
        block = blocks[x]
        current = block.any(axis=1)
        while True:
            nxt = block[:, current].any(axis=1)
            if np.array_equal(nxt, current):
                break
            current = nxt
        out[:, x] = current
    return out


def _np_assemble_profile(rels, own_idx, opp_idx):
    n_profiles = own_idx.shape[1]
    out = np.ones((n_profiles, n_profiles), dtype=np.bool_)
    for i in range(own_idx.shape[0]):
        out &= rels[i][own_idx[i]][:, opp_idx[i]]
    return out


def _np_best_response(q):
    return q == q.max(axis=0, keepdims=True)


def _np_stable_response(q):
    br = _np_best_response(q)
    # dominates[s, t]: s is at least as good as t against every opponent column
    dominates = (q[None, :, :] <= q[:, None, :]).all(axis=2)
    ties = q[:, None, :] == q[None, :, :]  # ties[s, t, o]
    ok = ~ties | dominates[:, :, None]
    return br & ok.all(axis=1)


def _np_constructive_response(q, opp):
    # improves[s, t, o]: t beats s against column o
    improves = q[None, :, :] > q[:, None, :]
    # threat[t, o, o2]: o2 is better than o for the opponent once t is played
    threat = opp[:, None, :] > opp[:, :, None]
    # hurts[s, t, o, o2]: q[t, o2] < q[s, o]
    hurts = q[None, :, None, :] < q[:, None, :, None]
    rescued = (threat[None, :, :, :] & hurts).any(axis=3)  # [s, t, o]
    return (~improves | rescued).all(axis=1)


numpy_impl = SimpleNamespace(
    compose=_np_compose,
    weak_fixpoint=_np_weak_fixpoint,
    assemble_profile=_np_assemble_profile,
    best_response=_np_best_response,
    stable_response=_np_stable_response,
    constructive_response=_np_constructive_response,
)


# ---------------------------------------------------------------------------
# explicit loops, compiled by numba


def _loop_compose(r, s):
    n_c, n_b = s.shape
    n_a = r.shape[1]
    out = np.zeros((n_c, n_a), dtype=np.bool_)
    for c in range(n_c):
        for b in range(n_b):
            if s[c, b]:
                for a in range(n_a):
                    if r[b, a]:
                        out[c, a] = True
    return out


def _loop_weak_fixpoint(mat, n_states):
    n = mat.shape[0]
    out = np.zeros((n, n_states), dtype=np.bool_)
    current = np.zeros(n, dtype=np.bool_)
    nxt = np.zeros(n, dtype=np.bool_)
    for x in range(n_states):
        for a in range(n):
            current[a] = True
        while True:
            changed = False
            for a in range(n):
                hit = False
                for c in range(n):
                    if current[c] and mat[a, c * n_states + x]:
                        hit = True
                        break
                nxt[a] = hit
            for a in range(n):
                if nxt[a] != current[a]:
                    changed = True
                current[a] = nxt[a]
            if not changed:
                break
        # the loop above starts from A, so it also covers the first image
        for a in range(n):
            out[a, x] = current[a]
    return out


def _loop_assemble_profile(packed, own_idx, opp_idx):
    m, n_profiles = own_idx.shape
    out = np.ones((n_profiles, n_profiles), dtype=np.bool_)
    for i in range(m):
        for t in range(n_profiles):
            row = packed[i, own_idx[i, t]]
            acc = out[t]
            for s in range(n_profiles):
                acc[s] = acc[s] & row[opp_idx[i, s]]
    return out


def _loop_best_response(q):
    n, n_opp = q.shape
    out = np.zeros((n, n_opp), dtype=np.bool_)
    for o in range(n_opp):
        best = q[0, o]
        for a in range(1, n):
            if q[a, o] > best:
                best = q[a, o]
        for a in range(n):
            out[a, o] = q[a, o] == best
    return out


def _loop_stable_response(q):
    n, n_opp = q.shape
    out = np.zeros((n, n_opp), dtype=np.bool_)
    for o in range(n_opp):
        best = q[0, o]
        for a in range(1, n):
            if q[a, o] > best:
                best = q[a, o]
        for s in range(n):
            if q[s, o] != best:
                continue
            ok = True
            for t in range(n):
                if q[t, o] == q[s, o]:
                    for o2 in range(n_opp):
                        if q[t, o2] > q[s, o2]:
                            ok = False
                            break
                if not ok:
                    break
            out[s, o] = ok
    return out


def _loop_constructive_response(q, opp):
    n, n_opp = q.shape
    out = np.zeros((n, n_opp), dtype=np.bool_)
    for o in range(n_opp):
        for s in range(n):
            ok = True
            for t in range(n):
                if q[s, o] < q[t, o]:
                    rescued = False
                    for o2 in range(n_opp):
                        if opp[t, o2] > opp[t, o] and q[t, o2] < q[s, o]:
                            rescued = True
                            break
                    if not rescued:
                        ok = False
                        break
            out[s, o] = ok
    return out


def _pack(rels):
    rows = max(r.shape[0] for r in rels)
    cols = max(r.shape[1] for r in rels)
    packed = np.zeros((len(rels), rows, cols), dtype=np.bool_)
    for i, r in enumerate(rels):
        packed[i, : r.shape[0], : r.shape[1]] = r
    return packed


if numba is not None:
    _jit = numba.njit(cache=True)
    _nb_assemble = _jit(_loop_assemble_profile)
    numba_impl = SimpleNamespace(
        compose=_jit(_loop_compose),
        weak_fixpoint=_jit(_loop_weak_fixpoint),
        assemble_profile=lambda rels, own_idx, opp_idx: _nb_assemble(
            _pack(rels), own_idx, opp_idx
        ),
        best_response=_jit(_loop_best_response),
        stable_response=_jit(_loop_stable_response),
        constructive_response=_jit(_loop_constructive_response),
    )
else:  # pragma: no cover
    numba_impl = None


def numba_enabled() -> bool:
    return numba_impl is not None and os.environ.get("GAMEFIX_NUMBA", "1") != "0"


def active():
    """The implementation selected by the environment, looked up per call."""
    return numba_impl if numba_enabled() else numpy_impl
