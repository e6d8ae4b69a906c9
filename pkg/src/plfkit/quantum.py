"""Quantum model of the Hardy-type counterexample.

Each friend's sealed lab is modeled as a qubit: after the friend's
measurement the lab state lies in the span of the two record states, and
every superobserver effect acts within that span, so the two-dimensional
model is exact (the explicit ready-state/isometry construction is kept as
a cross-check in the test suite).

Basis order for the joint state is Alice-lab-major: index 2*c + d holds
the amplitude of the Alice record c, Bob record d basis state.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .scenario import Behavior, ScenarioConfig

__all__ = [
    "StateVector",
    "Effect",
    "ProbTable",
    "NormalizationError",
    "hardy_state",
    "measurement_effects",
    "born_table",
    "hardy_behavior",
    "HARDY_CONFIG",
]

_TOL = 1e-12

HARDY_CONFIG = ScenarioConfig(friend_a=True, friend_b=True, read_x=1, read_y=1)


class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > _TOL:
            raise NormalizationError(f"state norm^2 = {norm!r}, not 1")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class Effect:
    """Projective measurement effect (Hermitian idempotent matrix)."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex).copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("effect matrix must be square")
        if np.abs(mat - mat.conj().T).max() > _TOL:
            raise ValueError("effect matrix is not Hermitian")
        if np.abs(mat @ mat - mat).max() > _TOL:
            raise ValueError("effect matrix is not idempotent")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ProbTable:
    """Outcome probabilities per context; each context sums to one."""

    probs: Mapping[tuple, float]

    def __post_init__(self):
        object.__setattr__(self, "probs", dict(self.probs))
        for key, p in self.probs.items():
            if not -1e-12 <= p <= 1 + 1e-12:
                raise ValueError(f"probability out of range at {key}: {p}")

    def to_json(self) -> str:
        rows = {f"a={a} b={b} x={x} y={y}": p
                for (a, b, x, y), p in sorted(self.probs.items())}
        return json.dumps(rows, indent=2, sort_keys=True)


def hardy_state() -> StateVector:
    """Shared lab state with the record-(1,1) component absent."""
    s = 1.0 / math.sqrt(3.0)
    return StateVector(np.array([s, s, s, 0.0], dtype=complex))


def _record_projector(outcome: int) -> np.ndarray:
    v = np.zeros(2, dtype=complex)
    v[outcome] = 1.0
    return np.outer(v, v.conj())


def _plus_projector() -> np.ndarray:
    v = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    return np.outer(v, v.conj())


def measurement_effects(party: str, setting: int) -> list[Effect]:
    """Two-outcome projective measurement on one lab qubit.

    Setting 1 projects onto the friend's record basis (outcome 0 is the
    record-0 state, matching the reading protocol); setting 2 measures in
    the superposition basis.  Alice's and Bob's effects are identical
    matrices; the party argument is kept for interface symmetry.
    """
    if party not in ("A", "B"):
        raise ValueError(f"party must be 'A' or 'B', got {party!r}")
    eye = np.eye(2, dtype=complex)
    if setting == 1:
        p0 = _record_projector(0)
    elif setting == 2:
        p0 = _plus_projector()
    else:
        raise ValueError(f"setting must be 1 or 2, got {setting!r}")
    return [Effect(p0), Effect(eye - p0)]


def born_table(state: StateVector, config: ScenarioConfig = HARDY_CONFIG) -> ProbTable:
    """P(a, b | x, y) = <state| A_x(a) (x) B_y(b) |state>."""
    if state.dim != 4:
        raise ValueError("born_table expects the 4-dimensional joint state")
    psi = state.amplitudes
    probs = {}
    for x in config.x_values:
        effects_a = measurement_effects("A", x)
        for y in config.y_values:
            effects_b = measurement_effects("B", y)
            total = 0.0
            for a in config.a_values:
                for b in config.b_values:
                    op = np.kron(effects_a[a].matrix, effects_b[b].matrix)
                    val = complex(np.vdot(psi, op @ psi))
                    if abs(val.imag) > _TOL:
                        raise ValueError(f"imaginary residue {val.imag} at {(a, b, x, y)}")
                    p = val.real
                    probs[(a, b, x, y)] = p
                    total += p
            if abs(total - 1.0) > 1e-9:
                raise NormalizationError(
                    f"context (x={x}, y={y}) probabilities sum to {total}, not 1")
    return ProbTable(probs)


def hardy_behavior(epsilon: float = 1e-9) -> Behavior:
    """Possibility pattern of the Hardy model: possible iff P > epsilon."""
    if not 0.0 < epsilon <= 1e-3:
        raise ValueError(f"epsilon must lie in (0, 1e-3], got {epsilon!r}")
    table = born_table(hardy_state(), HARDY_CONFIG)
    possible = {cell: p > epsilon for cell, p in table.probs.items()}
    return Behavior(HARDY_CONFIG, possible)
