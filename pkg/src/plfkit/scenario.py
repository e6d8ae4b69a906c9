"""Two-superobserver Wigner's-friend scenario data model.

Alice intervenes with X, observing A; Bob with Y, observing B.  A friend
in Alice's wing records C (over A's outcome domain), and x = read_x is the
setting at which Alice opens the lab and copies C into A; symmetrically
for Bob, D, and read_y.  A Behavior records which superobserver outcome
combinations are possible in each measurement context.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping

from .formula import Atom, Formula, Implies, conj, disj
from .kripke import Conditional, Depth1Problem, Forbidden, MustAll, Required

__all__ = [
    "ScenarioConfig",
    "Behavior",
    "PnsReport",
    "check_pns",
    "encode",
    "cell_formula",
    "drop_impossibility",
    "behavior_from_json",
    "behavior_to_json",
]


@dataclass(frozen=True)
class ScenarioConfig:
    x_values: tuple = (1, 2)
    y_values: tuple = (1, 2)
    a_values: tuple = (0, 1)
    b_values: tuple = (0, 1)
    friend_a: bool = False
    friend_b: bool = False
    read_x: int = 1
    read_y: int = 1

    def __post_init__(self):
        for name in ("x_values", "y_values", "a_values", "b_values"):
            vals = tuple(getattr(self, name))
            object.__setattr__(self, name, vals)
            if not vals:
                raise ValueError(f"{name} must be nonempty")
            if len(set(vals)) != len(vals):
                raise ValueError(f"{name} has duplicates")
        if self.friend_a and self.read_x not in self.x_values:
            raise ValueError("read_x must be one of x_values when friend_a is set")
        if self.friend_b and self.read_y not in self.y_values:
            raise ValueError("read_y must be one of y_values when friend_b is set")

    def cells(self):
        """All (a, b, x, y) keys in deterministic order."""
        return [
            (a, b, x, y)
            for a in self.a_values
            for b in self.b_values
            for x in self.x_values
            for y in self.y_values
        ]

    def contexts(self):
        return [(x, y) for x in self.x_values for y in self.y_values]


@dataclass(frozen=True)
class Behavior:
    """Possibility table over (a, b, x, y), total over the domain product."""

    config: ScenarioConfig
    possible: Mapping[tuple, bool]

    def __post_init__(self):
        table = {}
        cells = self.config.cells()
        for cell in cells:
            if cell not in self.possible:
                raise ValueError(f"behavior table missing cell {cell}")
            table[cell] = bool(self.possible[cell])
        if len(self.possible) != len(cells):
            extra = set(self.possible) - set(cells)
            raise ValueError(f"behavior table has cells outside the domain: {sorted(extra)}")
        object.__setattr__(self, "possible", table)
        for (x, y) in self.config.contexts():
            if not any(table[(a, b, x, y)]
                       for a in self.config.a_values for b in self.config.b_values):
                raise ValueError(f"context (x={x}, y={y}) has no possible outcome")

    @staticmethod
    def from_cells(config: ScenarioConfig, true_cells) -> "Behavior":
        """Behavior whose possible cells are exactly `true_cells`."""
        true_cells = {tuple(c) for c in true_cells}
        table = {cell: cell in true_cells for cell in config.cells()}
        return Behavior(config, table)


@dataclass(frozen=True)
class PnsReport:
    """Possibilistic no-signalling verdict; holds iff no violations."""

    holds: bool
    violations: tuple

    def __post_init__(self):
        object.__setattr__(self, "violations", tuple(self.violations))
        assert self.holds == (not self.violations)


def check_pns(beh: Behavior) -> PnsReport:
    """Each party's marginal possibilities must not depend on the other's setting."""
    cfg = beh.config
    violations = []
    for a in cfg.a_values:
        for x in cfg.x_values:
            marg = {y: any(beh.possible[(a, b, x, y)] for b in cfg.b_values)
                    for y in cfg.y_values}
            for y1, y2 in itertools.combinations(cfg.y_values, 2):
                if marg[y1] != marg[y2]:
                    violations.append(("A", a, (x, y1), (x, y2)))
    for b in cfg.b_values:
        for y in cfg.y_values:
            marg = {x: any(beh.possible[(a, b, x, y)] for a in cfg.a_values)
                    for x in cfg.x_values}
            for x1, x2 in itertools.combinations(cfg.x_values, 2):
                if marg[x1] != marg[x2]:
                    violations.append(("B", b, (x1, y), (x2, y)))
    return PnsReport(holds=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# Encoding to a depth-1 modal problem
# ---------------------------------------------------------------------------


def _atom(var: str, val) -> Atom:
    return Atom(var, str(val))


def cell_formula(a, b, x, y) -> Formula:
    """The event that the superobservers see (a, b) at settings (x, y)."""
    return conj([_atom("A", a), _atom("B", b), _atom("X", x), _atom("Y", y)])


def encode(beh: Behavior) -> Depth1Problem:
    """The depth-1 modal problem whose satisfiability is PLF-compatibility.

    Emits, at the reference world:
      - Required / Forbidden for each possible / impossible behavior cell;
      - Conditional clauses: any possible assignment to variables outside an
        intervention's future light cone stays possible in conjunction with
        any value of that intervention (X cannot reach B, C, D, Y; Y cannot
        reach A, C, D, X);
      - MustAll reading clauses: at the reading setting a superobserver's
        outcome copies the friend's record.

    Exactly-one-value per variable is structural: every world of the search
    space is a total valuation point.
    """
    cfg = beh.config
    domains: dict[str, tuple] = {
        "A": tuple(str(v) for v in cfg.a_values),
        "B": tuple(str(v) for v in cfg.b_values),
        "X": tuple(str(v) for v in cfg.x_values),
        "Y": tuple(str(v) for v in cfg.y_values),
    }
    if cfg.friend_a:
        domains["C"] = tuple(str(v) for v in cfg.a_values)
    if cfg.friend_b:
        domains["D"] = tuple(str(v) for v in cfg.b_values)

    constraints: list = []
    for cell in cfg.cells():
        body = cell_formula(*cell)
        constraints.append(Required(body) if beh.possible[cell] else Forbidden(body))

    if cfg.friend_a:
        constraints.append(MustAll(Implies(
            _atom("X", cfg.read_x),
            disj([conj([_atom("A", v), _atom("C", v)]) for v in cfg.a_values]),
        )))
    if cfg.friend_b:
        constraints.append(MustAll(Implies(
            _atom("Y", cfg.read_y),
            disj([conj([_atom("B", v), _atom("D", v)]) for v in cfg.b_values]),
        )))

    eligible = {
        "X": [v for v in ("B", "C", "D", "Y") if v in domains],
        "Y": [v for v in ("A", "C", "D", "X") if v in domains],
    }
    for z in ("X", "Y"):
        pool = eligible[z]
        for size in range(1, len(pool) + 1):
            for subset in itertools.combinations(pool, size):
                for values in itertools.product(*(domains[v] for v in subset)):
                    event = conj([Atom(var, val) for var, val in zip(subset, values)])
                    for zval in domains[z]:
                        constraints.append(Conditional(
                            event,
                            conj([Atom(var, val) for var, val in zip(subset, values)]
                                 + [Atom(z, zval)]),
                        ))

    return Depth1Problem(atom_domains=domains, constraints=tuple(constraints))


def drop_impossibility(problem: Depth1Problem, cell) -> Depth1Problem:
    """The problem with the Forbidden clause for one behavior cell removed.

    Used to show a single impossibility assumption is load-bearing.
    Raises if the cell is not forbidden in the problem.
    """
    body = cell_formula(*cell)
    kept = tuple(c for c in problem.constraints
                 if not (isinstance(c, Forbidden) and c.body == body))
    if len(kept) != len(problem.constraints) - 1:
        raise ValueError(f"cell {cell} is not forbidden exactly once")
    return Depth1Problem(problem.atom_domains, kept)


# ---------------------------------------------------------------------------
# JSON behavior files
# ---------------------------------------------------------------------------

_BEHAVIOR_KEYS = {
    "x_values", "y_values", "a_values", "b_values",
    "friend_a", "friend_b", "read_x", "read_y", "possible",
}


def behavior_from_json(data) -> Behavior:
    """Behavior from its JSON dict form; `possible` lists the true cells."""
    if isinstance(data, str):
        data = json.loads(data)
    unknown = set(data) - _BEHAVIOR_KEYS
    if unknown:
        raise ValueError(f"unknown keys in behavior file: {sorted(unknown)}")
    missing = _BEHAVIOR_KEYS - set(data)
    if missing:
        raise ValueError(f"missing keys in behavior file: {sorted(missing)}")
    cfg = ScenarioConfig(
        x_values=tuple(data["x_values"]),
        y_values=tuple(data["y_values"]),
        a_values=tuple(data["a_values"]),
        b_values=tuple(data["b_values"]),
        friend_a=bool(data["friend_a"]),
        friend_b=bool(data["friend_b"]),
        read_x=data["read_x"],
        read_y=data["read_y"],
    )
    return Behavior.from_cells(cfg, [tuple(c) for c in data["possible"]])


def behavior_to_json(beh: Behavior) -> dict:
    cfg = beh.config
    return {
        "x_values": list(cfg.x_values),
        "y_values": list(cfg.y_values),
        "a_values": list(cfg.a_values),
        "b_values": list(cfg.b_values),
        "friend_a": cfg.friend_a,
        "friend_b": cfg.friend_b,
        "read_x": cfg.read_x,
        "read_y": cfg.read_y,
        "possible": [list(cell) for cell in cfg.cells() if beh.possible[cell]],
    }
