# %% Drilling into a concept and ranking its policy candidates
#
# Concepts are too coarse to implement directly, so a promising concept is
# probed one level at a time: clamp each child key variable high in the
# key-variable social map, compare against the default run, and score each
# candidate on Importance, Feasibility (signed economic effect), and
# Influence (desired-direction effect on the target concepts).
#
# Run 03_condense_and_aggregate.py first (it builds ./demo-workspace).

from pathlib import Path

from fcmkit import pipeline as pl
from fcmkit import simulation as sim
from fcmkit.appropriateness import CriterionWeights

ws = Path("demo-workspace")
if not (ws / "manifest.json").exists():
    raise SystemExit("demo-workspace missing; run 03_condense_and_aggregate.py first")

store = pl.open_store(ws)
hierarchy = store.hierarchy

# %% The drill batch: one clamp-one scenario per child
concept = "F"  # Water Projects
batch = sim.drill_down(concept, hierarchy, store)
print(f"concept {concept} ({hierarchy.label(concept)}) drills into:")
for kv, comparison in batch.key_variable_results:
    moved = max(abs(float(d)) for d in comparison.deltas)
    print(f"  {kv}  {hierarchy.label(kv):<40} largest state shift {moved:.4f}")

# %% Appropriateness ranking of the key variables
report = pl.rank_report(store, concept_id=concept, weights=CriterionWeights())
print(f"\n{'rank':>4} {'id':>4} {'importance':>11} {'feasibility':>12} "
      f"{'influence':>10} {'appropriateness':>16}")
for row in report.rows:
    print(
        f"{row['rank']:>4} {row['id']:>4} {row['importance']:11.1f} "
        f"{row['feasibility']:+12.1f} {row['influence']:10.1f} {row['appropriateness']:16.1f}"
    )

winner = report.rows[0]
print(f"\nhighest-ranked key variable: {winner['id']} ({hierarchy.label(winner['id'])})")
print("per-target influence of the winner:",
      {k: round(v, 1) for k, v in winner["influence_by_target"].items()})
