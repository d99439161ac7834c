# %% What-if policy scenarios on the social concept map
#
# The map runs as an auto-associative network: every iteration each concept
# receives the weighted sum of all concept states and squashes it through a
# logistic. A policy is a clamp: a node held at a fixed level throughout.
#
# Run 03_condense_and_aggregate.py first (it builds ./demo-workspace).

from pathlib import Path

import fcmkit as fk
from fcmkit import pipeline as pl
from fcmkit import simulation as sim

ws = Path("demo-workspace")
if not (ws / "manifest.json").exists():
    raise SystemExit("demo-workspace missing; run 03_condense_and_aggregate.py first")

store = pl.open_store(ws)
concept_map = store.social("concept")
labels = {n.id: n.label for n in concept_map.nodes}

# %% Baseline: documented initial states, no intervention
states = sim.preset_states("jordan-2013")
baseline = sim.run(concept_map, sim.ScenarioSpec(initial_state=states))
print(f"baseline converged after {baseline.iterations} iterations")

# %% Policy: hold 'Integrated Management and Laws' (G) at its maximum
policy = sim.run(concept_map, sim.ScenarioSpec(initial_state=states, clamps={"G": 1.0}))
comparison = sim.compare(baseline, policy, targets=["A", "B", "C"])

print("\nsteady-state change when G is clamped to 1.0:")
for k, node in enumerate(comparison.ids):
    bar = "#" * int(round(abs(comparison.deltas[k]) * 200))
    sign = "+" if comparison.deltas[k] >= 0 else "-"
    print(f"  {node}  {labels[node]:<38} {comparison.deltas[k]:+.4f} {sign}{bar}")

print("\ntargets: water situation (A), water resources (B), water demand (C)")
for t, d in comparison.target_summary.items():
    print(f"  {t} ({labels[t]}): {d:+.4f}")

# %% Scenarios can also be negative interventions: freeze H at 0
frozen = sim.run(concept_map, sim.ScenarioSpec(initial_state=states, clamps={"H": 0.0}))
comparison = sim.compare(baseline, frozen, targets=["A", "B", "C"])
print("\nclamping 'Development and Urbanization' (H) to 0 moves the targets by:")
for t, d in comparison.target_summary.items():
    print(f"  {t}: {d:+.4f}")
