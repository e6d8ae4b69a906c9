import itertools
import json
import random

import pytest

from plfkit.formula import Atom, atoms_of
from plfkit.kripke import Conditional, Forbidden, Model, MustAll, Required, solve_depth1
from plfkit.scenario import (
    Behavior,
    ScenarioConfig,
    behavior_from_json,
    behavior_to_json,
    check_pns,
    drop_impossibility,
    encode,
)
from conftest import random_behavior
from oracles import eval_prop

BOTH_FRIENDS = ScenarioConfig(friend_a=True, friend_b=True)
NO_FRIENDS = ScenarioConfig()


def all_true(config=BOTH_FRIENDS):
    return Behavior(config, {cell: True for cell in config.cells()})


class TestConfig:
    def test_defaults(self):
        cfg = ScenarioConfig()
        assert cfg.x_values == (1, 2)
        assert cfg.a_values == (0, 1)
        assert not cfg.friend_a

    def test_read_setting_must_be_a_setting(self):
        with pytest.raises(ValueError):
            ScenarioConfig(friend_a=True, read_x=7)

    def test_empty_domain_rejected(self):
        with pytest.raises(ValueError):
            ScenarioConfig(x_values=())


class TestBehavior:
    def test_must_be_total(self):
        with pytest.raises(ValueError):
            Behavior(NO_FRIENDS, {(0, 0, 1, 1): True})

    def test_empty_context_rejected(self):
        table = {cell: cell[2:] != (1, 1) for cell in NO_FRIENDS.cells()}
        with pytest.raises(ValueError):
            Behavior(NO_FRIENDS, table)

    def test_from_cells(self):
        beh = all_true()
        assert Behavior.from_cells(BOTH_FRIENDS, list(beh.possible)) == beh


class TestCheckPns:
    def test_hardy_holds(self, hardy_beh):
        assert check_pns(hardy_beh).holds

    def test_all_true_holds(self):
        assert check_pns(all_true()).holds

    def test_constructed_signalling(self):
        # a=0 impossible in every context except (1,2)
        table = {cell: cell[0] != 0 for cell in BOTH_FRIENDS.cells()}
        table[(0, 0, 1, 2)] = True
        report = check_pns(Behavior(BOTH_FRIENDS, table))
        assert not report.holds
        assert ("A", 0, (1, 1), (1, 2)) in report.violations


class TestEncode:
    def test_hardy_clause_counts(self, hardy_beh):
        prob = encode(hardy_beh)
        kinds = {k: sum(isinstance(c, k) for c in prob.constraints)
                 for k in (Required, Forbidden, MustAll, Conditional)}
        assert kinds[Required] == 13
        assert kinds[Forbidden] == 3
        assert kinds[MustAll] == 2
        # two interventions, four reachable variables each, binary domains,
        # two intervention values: 2 * (3^4 - 1) * 2
        assert kinds[Conditional] == 320

    def test_hardy_forbidden_cells(self, hardy_beh):
        prob = encode(hardy_beh)
        forbidden = [c.body for c in prob.constraints if isinstance(c, Forbidden)]
        expected = {
            frozenset({Atom("A", "1"), Atom("B", "1"), Atom("X", "1"), Atom("Y", "1")}),
            frozenset({Atom("A", "0"), Atom("B", "1"), Atom("X", "1"), Atom("Y", "2")}),
            frozenset({Atom("A", "1"), Atom("B", "0"), Atom("X", "2"), Atom("Y", "1")}),
        }
        assert {frozenset(atoms_of(f)) for f in forbidden} == expected

    def test_friendless_has_no_reading_clauses(self):
        prob = encode(all_true(NO_FRIENDS))
        assert not any(isinstance(c, MustAll) for c in prob.constraints)
        assert set(prob.atom_domains) == {"A", "B", "X", "Y"}
        cond_vars = {v for c in prob.constraints if isinstance(c, Conditional)
                     for v in (a.variable for a in atoms_of(c.antecedent))}
        assert cond_vars <= {"A", "B", "X", "Y"}

    def test_all_possible_has_no_forbidden(self):
        prob = encode(all_true())
        assert not any(isinstance(c, Forbidden) for c in prob.constraints)

    def test_deterministic(self, hardy_beh):
        assert encode(hardy_beh) == encode(hardy_beh)

    def test_drop_impossibility(self, hardy_beh):
        prob = encode(hardy_beh)
        relaxed = drop_impossibility(prob, (1, 1, 1, 1))
        assert len(relaxed.constraints) == len(prob.constraints) - 1
        assert sum(isinstance(c, Forbidden) for c in relaxed.constraints) == 2
        with pytest.raises(ValueError):
            drop_impossibility(prob, (0, 0, 1, 1))  # that cell is possible


def _conditional_families(prob):
    """Split Conditional clauses into finest-assignment and coarser ones."""
    finest, coarser = [], []
    for c in prob.constraints:
        if not isinstance(c, Conditional):
            continue
        ant_vars = {a.variable for a in atoms_of(c.antecedent)}
        z = next(iter({a.variable for a in atoms_of(c.consequent)} - ant_vars))
        pool_size = sum(v in prob.atom_domains for v in
                        (("B", "C", "D", "Y") if z == "X" else ("A", "C", "D", "X")))
        (finest if len(ant_vars) == pool_size else coarser).append(c)
    return finest, coarser


def test_coarse_conditionals_follow_from_finest(rng):
    for _ in range(20):
        beh = random_behavior(rng)
        prob = encode(beh)
        finest, coarser = _conditional_families(prob)
        assert finest and coarser
        variables = sorted(prob.atom_domains)
        grid = [dict(zip(variables, combo))
                for combo in itertools.product(*(prob.atom_domains[v] for v in variables))]
        for _ in range(30):
            candidate = [p for p in grid if rng.random() < 0.3]

            def holds(c):
                return (not any(eval_prop(c.antecedent, p) for p in candidate)
                        or any(eval_prop(c.consequent, p) for p in candidate))

            if all(holds(c) for c in finest):
                assert all(holds(c) for c in coarser)


def test_friendless_satisfiability_is_pns(rng):
    for _ in range(60):
        beh = random_behavior(rng, NO_FRIENDS)
        sat = isinstance(solve_depth1(encode(beh)), Model)
        assert sat == check_pns(beh).holds


class TestBehaviorJson:
    def test_roundtrip(self, hardy_beh):
        data = behavior_to_json(hardy_beh)
        assert behavior_from_json(json.dumps(data)) == hardy_beh

    def test_field_names(self, hardy_beh):
        data = behavior_to_json(hardy_beh)
        assert set(data) == {"x_values", "y_values", "a_values", "b_values",
                             "friend_a", "friend_b", "read_x", "read_y", "possible"}
        assert [1, 1, 2, 2] in data["possible"]
        assert [1, 1, 1, 1] not in data["possible"]

    def test_unknown_keys_rejected(self, hardy_beh):
        data = behavior_to_json(hardy_beh)
        data["bogus"] = 1
        with pytest.raises(ValueError):
            behavior_from_json(data)
