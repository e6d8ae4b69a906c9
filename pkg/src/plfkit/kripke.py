"""Finite Kripke models, the modal truth-condition evaluator, and an exact
satisfiability decision for depth-1 problems.

A depth-1 problem is a conjunction of constraints evaluated at a single
reference world w0, each of one of the shapes

    MustAll(phi)           from  []phi
    Forbidden(phi)         from  ~<>phi
    Required(phi)          from  <>phi
    Conditional(phi, psi)  from  <>phi -> <>psi

with phi, psi propositional over finite-domain atoms.  Because every
constraint lives at w0 and has modal depth 1, only the *set* of worlds
accessible from w0 matters, and each accessible world is fully described
by a total assignment of values to variables (a ValuationPoint).  The
family of satisfying world-sets is closed under union, so the unique
maximal candidate is found by deflation: start from all points passing
the MustAll/Forbidden filters, and repeatedly delete the antecedent
points of any Conditional whose consequent has no remaining witness.
"""

from __future__ import annotations

import json
import itertools
from dataclasses import dataclass, field
from typing import Mapping, Union

from .formula import (
    And,
    Atom,
    Box,
    Diamond,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    is_propositional,
    parse,
    render,
)

__all__ = [
    "KripkeModel",
    "UnknownWorldError",
    "evaluate",
    "valid",
    "model_from_json",
    "model_to_json",
    "MustAll",
    "Forbidden",
    "Required",
    "Conditional",
    "Clause",
    "FragmentError",
    "Depth1Problem",
    "ValuationPoint",
    "Model",
    "Unsat",
    "UnsatCore",
    "SatResult",
    "solve_depth1",
    "clause_formula",
    "points_to_model",
    "recheck_model",
]


class UnknownWorldError(KeyError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    """Worlds W, accessibility relation R and valuation V.

    Atoms absent from the valuation are false at every world.  No frame
    conditions (reflexivity, seriality, ...) are imposed.
    """

    worlds: frozenset
    relation: frozenset
    valuation: Mapping[Atom, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "worlds", frozenset(self.worlds))
        object.__setattr__(self, "relation", frozenset(tuple(p) for p in self.relation))
        object.__setattr__(
            self, "valuation",
            {atom: frozenset(ws) for atom, ws in self.valuation.items()},
        )
        if not self.worlds:
            raise ValueError("worlds must be nonempty")
        for (u, v) in self.relation:
            if u not in self.worlds or v not in self.worlds:
                raise ValueError(f"relation pair ({u!r}, {v!r}) mentions unknown world")
        for atom, ws in self.valuation.items():
            if not isinstance(atom, Atom):
                raise TypeError(f"valuation key is not an Atom: {atom!r}")
            bad = ws - self.worlds
            if bad:
                raise ValueError(f"valuation of {render(atom)} mentions unknown worlds {sorted(bad)}")

    def successors(self, w):
        return {v for (u, v) in self.relation if u == w}


def evaluate(m: KripkeModel, w, f: Formula) -> bool:
    """Truth of f at world w of m."""
    if w not in m.worlds:
        raise UnknownWorldError(w)
    if isinstance(f, Atom):
        return w in m.valuation.get(f, frozenset())
    if isinstance(f, Not):
        return not evaluate(m, w, f.child)
    if isinstance(f, And):
        return evaluate(m, w, f.left) and evaluate(m, w, f.right)
    if isinstance(f, Or):
        return evaluate(m, w, f.left) or evaluate(m, w, f.right)
    if isinstance(f, Implies):
        return (not evaluate(m, w, f.left)) or evaluate(m, w, f.right)
    if isinstance(f, Iff):
        return evaluate(m, w, f.left) == evaluate(m, w, f.right)
    if isinstance(f, Box):
        return all(evaluate(m, v, f.child) for v in m.successors(w))
    if isinstance(f, Diamond):
        return any(evaluate(m, v, f.child) for v in m.successors(w))
    raise TypeError(f"not a Formula: {f!r}")


def valid(m: KripkeModel, f: Formula) -> bool:
    """True iff f holds at every world of m."""
    return all(evaluate(m, w, f) for w in m.worlds)


# ---------------------------------------------------------------------------
# JSON model files
# ---------------------------------------------------------------------------

_MODEL_KEYS = {"worlds", "relation", "valuation"}


def model_from_json(data) -> KripkeModel:
    """Build a model from the JSON dict form; unknown keys are rejected."""
    if isinstance(data, str):
        data = json.loads(data)
    unknown = set(data) - _MODEL_KEYS
    if unknown:
        raise ValueError(f"unknown keys in model file: {sorted(unknown)}")
    missing = _MODEL_KEYS - set(data)
    if missing:
        raise ValueError(f"missing keys in model file: {sorted(missing)}")
    valuation = {}
    for key, worlds in data["valuation"].items():
        atom = parse(key)
        if not isinstance(atom, Atom):
            raise ValueError(f"valuation key is not an atom: {key!r}")
        valuation[atom] = frozenset(worlds)
    return KripkeModel(
        worlds=frozenset(data["worlds"]),
        relation=frozenset(tuple(p) for p in data["relation"]),
        valuation=valuation,
    )


def model_to_json(m: KripkeModel) -> dict:
    return {
        "worlds": sorted(m.worlds),
        "relation": sorted([u, v] for (u, v) in m.relation),
        "valuation": {render(a): sorted(ws) for a, ws in sorted(m.valuation.items(), key=lambda kv: render(kv[0]))},
    }


# ---------------------------------------------------------------------------
# Depth-1 fragment
# ---------------------------------------------------------------------------


class FragmentError(ValueError):
    """Constraint outside the MustAll/Forbidden/Required/Conditional fragment."""


@dataclass(frozen=True)
class MustAll:
    body: Formula


@dataclass(frozen=True)
class Forbidden:
    body: Formula


@dataclass(frozen=True)
class Required:
    body: Formula


@dataclass(frozen=True)
class Conditional:
    antecedent: Formula
    consequent: Formula


Clause = Union[MustAll, Forbidden, Required, Conditional]


def clause_formula(c: Clause) -> Formula:
    """The modal formula a clause stands for, for evaluator-based rechecks."""
    if isinstance(c, MustAll):
        return Box(c.body)
    if isinstance(c, Forbidden):
        return Not(Diamond(c.body))
    if isinstance(c, Required):
        return Diamond(c.body)
    if isinstance(c, Conditional):
        return Implies(Diamond(c.antecedent), Diamond(c.consequent))
    raise TypeError(f"not a clause: {c!r}")


@dataclass(frozen=True)
class ValuationPoint:
    """A total assignment of one value to every variable of a problem."""

    assignment: tuple  # sorted ((variable, value), ...) pairs

    @staticmethod
    def of(mapping: Mapping[str, str]) -> "ValuationPoint":
        return ValuationPoint(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict:
        return dict(self.assignment)

    def __getitem__(self, variable):
        for var, val in self.assignment:
            if var == variable:
                return val
        raise KeyError(variable)


@dataclass(frozen=True)
class Depth1Problem:
    atom_domains: Mapping[str, tuple]
    constraints: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "atom_domains",
            {var: tuple(vals) for var, vals in self.atom_domains.items()},
        )
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for var, vals in self.atom_domains.items():
            if not vals:
                raise ValueError(f"empty domain for {var}")
        for c in self.constraints:
            if isinstance(c, (MustAll, Forbidden, Required)):
                bodies = (c.body,)
            elif isinstance(c, Conditional):
                bodies = (c.antecedent, c.consequent)
            else:
                raise FragmentError(f"constraint outside the depth-1 fragment: {c!r}")
            for body in bodies:
                if not is_propositional(body):
                    raise FragmentError(f"modal operator inside clause body: {render(body)}")
                for atom in _atoms(body):
                    if atom.variable not in self.atom_domains:
                        raise ValueError(f"variable {atom.variable} not in atom_domains")


def _atoms(f: Formula):
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or, Implies, Iff)):
            stack.append(node.left)
            stack.append(node.right)


@dataclass(frozen=True)
class UnsatCore:
    """Why a Required clause cannot be covered.

    never_candidates: its witnesses excluded up front by MustAll/Forbidden,
    removals: the Conditional deflation steps that emptied the rest.
    """

    required: Required
    never_candidates: tuple  # ValuationPoints failing the MustAll/Forbidden filter
    removals: tuple  # (Conditional, (removed candidate points...)) in firing order


@dataclass(frozen=True)
class Model:
    points: frozenset  # of ValuationPoint


@dataclass(frozen=True)
class Unsat:
    core: UnsatCore


SatResult = Union[Model, Unsat]


def _grid(atom_domains) -> list[ValuationPoint]:
    variables = sorted(atom_domains)
    points = []
    for combo in itertools.product(*(atom_domains[v] for v in variables)):
        points.append(ValuationPoint(tuple(zip(variables, combo))))
    return points


def _sat_mask(f: Formula, atom_masks, full: int) -> int:
    """Bitmask over grid indices of the points satisfying f."""
    if isinstance(f, Atom):
        return atom_masks.get((f.variable, f.value), 0)
    if isinstance(f, Not):
        return full & ~_sat_mask(f.child, atom_masks, full)
    if isinstance(f, And):
        return _sat_mask(f.left, atom_masks, full) & _sat_mask(f.right, atom_masks, full)
    if isinstance(f, Or):
        return _sat_mask(f.left, atom_masks, full) | _sat_mask(f.right, atom_masks, full)
    if isinstance(f, Implies):
        return (full & ~_sat_mask(f.left, atom_masks, full)) | _sat_mask(f.right, atom_masks, full)
    if isinstance(f, Iff):
        return full & ~(_sat_mask(f.left, atom_masks, full) ^ _sat_mask(f.right, atom_masks, full))
    raise TypeError(f"not a propositional formula: {f!r}")


def solve_depth1(p: Depth1Problem) -> SatResult:
    """Decide the depth-1 problem exactly via greatest-fixpoint deflation."""
    grid = _grid(p.atom_domains)
    full = (1 << len(grid)) - 1

    atom_masks: dict = {}
    for i, point in enumerate(grid):
        for var, val in point.assignment:
            key = (var, val)
            atom_masks[key] = atom_masks.get(key, 0) | (1 << i)

    must_all = [c for c in p.constraints if isinstance(c, MustAll)]
    forbidden = [c for c in p.constraints if isinstance(c, Forbidden)]
    required = [c for c in p.constraints if isinstance(c, Required)]
    conditionals = [c for c in p.constraints if isinstance(c, Conditional)]

    start = full
    for c in must_all:
        start &= _sat_mask(c.body, atom_masks, full)
    for c in forbidden:
        start &= ~_sat_mask(c.body, atom_masks, full)

    cond_masks = [
        (c, _sat_mask(c.antecedent, atom_masks, full), _sat_mask(c.consequent, atom_masks, full))
        for c in conditionals
    ]

    current = start
    removal_log: list[tuple[Conditional, int]] = []
    changed = True
    while changed:
        changed = False
        for c, ant, cons in cond_masks:
            if (current & ant) and not (current & cons):
                removal_log.append((c, current & ant))
                current &= ~ant
                changed = True

    req_masks = [(c, _sat_mask(c.body, atom_masks, full)) for c in required]
    for c, mask in req_masks:
        if not (current & mask):
            never = mask & ~start
            removals = []
            alive = mask & start
            for cond, removed in removal_log:
                hit = removed & alive
                if hit:
                    removals.append((cond, tuple(grid[i] for i in _bits(hit))))
                    alive &= ~hit
            core = UnsatCore(
                required=c,
                never_candidates=tuple(grid[i] for i in _bits(never)),
                removals=tuple(removals),
            )
            return Unsat(core)

    return Model(frozenset(grid[i] for i in _bits(current)))


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


# ---------------------------------------------------------------------------
# Evaluator-based recheck of a returned model
# ---------------------------------------------------------------------------


def points_to_model(p: Depth1Problem, points, reference: str = "w0") -> KripkeModel:
    """The Kripke model with w0 seeing exactly the given valuation points.

    w0 itself carries the all-false valuation; no constraint of the fragment
    says anything about w0's own atoms.
    """
    points = sorted(points, key=lambda pt: pt.assignment)
    names = {pt: f"w{i + 1}" for i, pt in enumerate(points)}
    worlds = {reference} | set(names.values())
    relation = {(reference, names[pt]) for pt in points}
    valuation: dict[Atom, set] = {}
    for pt in points:
        for var, val in pt.assignment:
            valuation.setdefault(Atom(var, str(val)), set()).add(names[pt])
    return KripkeModel(frozenset(worlds), frozenset(relation),
                       {a: frozenset(ws) for a, ws in valuation.items()})


def recheck_model(p: Depth1Problem, points, reference: str = "w0") -> bool:
    """Independently verify a solve_depth1 model through the modal evaluator."""
    m = points_to_model(p, points, reference)
    return all(evaluate(m, reference, clause_formula(c)) for c in p.constraints)
