"""With no friends the feasibility condition collapses to no-signalling.

A Bell scenario is the friendless special case: there are no records to
stay consistent with, so the only surviving constraint is that each
wing's marginal possibilities ignore the other wing's setting.

Run:  python3 demos/04_bell_reduction.py
"""

import random

from plfkit import check_pns, plf_feasible
from plfkit.scenario import Behavior, ScenarioConfig

cfg = ScenarioConfig()  # friendless, binary settings and outcomes

rng = random.Random(4)
agree = 0
trials = 500
for _ in range(trials):
    table = {cell: rng.random() < 0.5 for cell in cfg.cells()}
    for (x, y) in cfg.contexts():
        ctx = [(a, b, x, y) for a in cfg.a_values for b in cfg.b_values]
        if not any(table[c] for c in ctx):
            table[rng.choice(ctx)] = True
    beh = Behavior(cfg, table)
    agree += plf_feasible(beh).feasible == check_pns(beh).holds
print(f"feasible <=> no-signalling on {agree}/{trials} random friendless behaviors")

# The Hardy-style possibility pattern *without* friends is feasible:
# it is no-signalling, and in a Bell scenario that is all that is asked.
hardy_cells = [c for c in cfg.cells() if c not in
               {(1, 1, 1, 1), (0, 1, 1, 2), (1, 0, 2, 1)}]
beh = Behavior.from_cells(cfg, hardy_cells)
print("Hardy pattern, friendless:",
      "feasible" if plf_feasible(beh).feasible else "infeasible",
      "| no-signalling:", check_pns(beh).holds)
print("the contradiction needs the friends' records; see demos/03_no_go.py")
