import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plfkit.quantum import hardy_behavior
from plfkit.scenario import Behavior, ScenarioConfig

DEFAULT_CONFIG = ScenarioConfig(friend_a=True, friend_b=True)


def random_behavior(rng: random.Random, config: ScenarioConfig = DEFAULT_CONFIG,
                    p: float = 0.5) -> Behavior:
    """Uniform random behavior; empty contexts get one cell forced on."""
    table = {cell: rng.random() < p for cell in config.cells()}
    for (x, y) in config.contexts():
        context = [(a, b, x, y) for a in config.a_values for b in config.b_values]
        if not any(table[c] for c in context):
            table[rng.choice(context)] = True
    return Behavior(config, table)


@pytest.fixture(scope="session")
def hardy_beh():
    return hardy_behavior()


@pytest.fixture
def rng():
    return random.Random(20260823)
