"""Finite relations as boolean matrices, and their two fixed-point operators.

A relation from ``source`` to ``target`` is stored as a ``(len(target),
len(source))`` bool matrix, so composition is a boolean matrix product in the
same order as composing column-stochastic matrices. Product sets A×X are
linearized with the A-component most significant: ``(a, x) -> a*|X| + x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionError

UNIT = ((),)  # the one-point set 1


@dataclass(frozen=True, eq=False)
class Relation:
    source: tuple
    target: tuple
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.bool_)
        if matrix.shape != (len(self.target), len(self.source)):
            raise DimensionError(
                f"matrix shape {matrix.shape} does not match "
                f"|target| x |source| = {len(self.target)} x {len(self.source)}"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "matrix", matrix)

    def related(self, a, b) -> bool:
        return bool(self.matrix[self.target.index(b), self.source.index(a)])

    def image(self, a) -> list:
        """Targets related to source element ``a``."""
        column = self.matrix[:, self.source.index(a)]
        return [b for b, hit in zip(self.target, column) if hit]

    def pairs(self) -> set:
        rows, cols = np.nonzero(self.matrix)
        return {(self.source[c], self.target[r]) for r, c in zip(rows, cols)}

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix.tobytes()))

    def __le__(self, other):
        return bool(np.all(~self.matrix | other.matrix))


def product_set(*sets: Sequence) -> tuple:
    return tuple(itertools.product(*sets))


def identity(elements: Sequence) -> Relation:
    return Relation(elements, elements, np.eye(len(elements), dtype=np.bool_))


def empty(source: Sequence, target: Sequence) -> Relation:
    return Relation(source, target, np.zeros((len(target), len(source)), dtype=np.bool_))


def full(source: Sequence, target: Sequence) -> Relation:
    return Relation(source, target, np.ones((len(target), len(source)), dtype=np.bool_))


def from_pairs(source: Sequence, target: Sequence, pairs) -> Relation:
    source, target = tuple(source), tuple(target)
    out = np.zeros((len(target), len(source)), dtype=np.bool_)
    for a, b in pairs:
        out[target.index(b), source.index(a)] = True
    return Relation(source, target, out)


def from_function(source: Sequence, target: Sequence, f) -> Relation:
    return from_pairs(source, target, ((a, f(a)) for a in source))


def compose(r: Relation, s: Relation) -> Relation:
    """``r`` then ``s``: a is related to c iff a r b and b s c for some b."""
    if r.target != s.source:
        raise DimensionError(
            f"cannot compose: inner sets differ ({len(r.target)} vs {len(s.source)} elements)"
        )
    matrix = kernels.active().compose(r.matrix, s.matrix)
    return Relation(r.source, s.target, matrix)


def _split(r: Relation, states):
    n_a = len(r.target)
    if states is None:
        if len(r.source) == n_a:
            states = UNIT
        elif n_a and len(r.source) % n_a == 0 and all(
            isinstance(p, tuple) and len(p) == 2 for p in r.source
        ):
            states = tuple(dict.fromkeys(p[1] for p in r.source))
        else:
            raise DimensionError("cannot infer the state set; pass states explicitly")
    states = tuple(states)
    if len(r.source) != n_a * len(states):
        raise DimensionError(
            f"source has {len(r.source)} elements, expected |A|*|X| = {n_a}*{len(states)}"
        )
    return states


def strong_fixpoint(r: Relation, states: Sequence | None = None) -> Relation:
    """x is related to a iff (a, x) r a.

    ``r`` goes from A×X to A; ``states`` lists X and defaults to the one-point
    set when the source has exactly |A| elements.
    """
    states = _split(r, states)
    n_a, n_x = len(r.target), len(states)
    blocks = r.matrix.reshape(n_a, n_a, n_x)  # [a_out, a_in, x]
    diag = blocks[np.arange(n_a), np.arange(n_a), :]  # [a, x]
    return Relation(states, r.target, diag)


def weak_fixpoint(r: Relation, states: Sequence | None = None) -> Relation:
    """For each x, the limit of S1 = xR(A), S(n+1) = xR(Sn).

    The chain decreases, so it settles after at most |A| steps; settling is
    detected by set equality.
    """
    states = _split(r, states)
    out = kernels.active().weak_fixpoint(np.ascontiguousarray(r.matrix), len(states))
    return Relation(states, r.target, out)


def image_chain(r: Relation, x_index: int = 0, states: Sequence | None = None) -> list[frozenset]:
    """The full chain S1 ⊇ S2 ⊇ ... up to and including its stable value."""
    states = _split(r, states)
    n_a, n_x = len(r.target), len(states)
    block = r.matrix.reshape(n_a, n_a, n_x)[:, :, x_index]
    current = block.any(axis=1)
    chain = [frozenset(np.flatnonzero(current).tolist())]
    while True:
        nxt = block[:, current].any(axis=1)
        if np.array_equal(nxt, current):
            return chain
        current = nxt
        chain.append(frozenset(np.flatnonzero(current).tolist()))


@dataclass(frozen=True, eq=False)
class Process:
    """A relation A×X -> B×X together with the factor sets A, B and X."""

    inputs: tuple
    outputs: tuple
    states: tuple
    relation: Relation

    def __post_init__(self):
        for name in ("inputs", "outputs", "states"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.relation.source != product_set(self.inputs, self.states):
            raise DimensionError("process source must be inputs x states")
        if self.relation.target != product_set(self.outputs, self.states):
            raise DimensionError("process target must be outputs x states")

    def data_part(self) -> Relation:
        proj = from_function(product_set(self.outputs, self.states), self.outputs, lambda p: p[0])
        return compose(self.relation, proj)

    def state_part(self) -> Relation:
        proj = from_function(product_set(self.outputs, self.states), self.states, lambda p: p[1])
        return compose(self.relation, proj)


def mealy_process(inputs, outputs, states, step) -> Process:
    """A deterministic Mealy machine ``step(a, x) -> (b, x')`` as a process."""
    source = product_set(inputs, states)
    rel = from_function(source, product_set(outputs, states), lambda p: tuple(step(*p)))
    return Process(inputs, outputs, states, rel)


def extract_control(p: Process, feedback: Relation) -> Relation:
    """The control X -> A obtained as the strong fixed point of feedback after p."""
    if feedback.target != p.inputs:
        raise DimensionError("feedback must land in the process inputs")
    return strong_fixpoint(compose(p.relation, feedback), p.states)
