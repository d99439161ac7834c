"""Pipeline stages over a corpus workspace.

A workspace is a directory created by the corpus generator (or laid out the
same way by hand): manifest.json, hierarchy.json, and map files. Each stage
reads the manifest, writes its artifacts into a subdirectory, and updates
the manifest, so stages chain and re-running a stage overwrites its outputs
with identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Mapping, Sequence

from .appropriateness import (
    AppropriatenessReport,
    CriterionWeights,
    appropriateness as combine_criteria,
    feasibility as feasibility_pct,
    importance as importance_pct,
    influence as influence_pct,
    targets_from_hierarchy,
)
from . import simulation as sim
from .aggregation import WeightedMapSet, aggregate
from .centrality import EQUAL_WEIGHTS, PrioritizationWeights, compute_report, node_credibility_weights
from .condensation import condense
from .corpus import CorpusManifest, CorpusStore, ManifestEntry, generate_synthetic_corpus
from .errors import ConfigurationError, ConsistencyError, PipelineError, UsageError
from .model import GROUPS, LEVELS, FcmModel, _atomic_write, density, level_above, save_fcm

#: clamp set of the five documented policy scenarios on the concept map
DEFAULT_SCENARIOS = (("F", 1.0), ("G", 1.0), ("H", 0.0), ("I", 1.0), ("K", 1.0))


def open_store(workspace: str | Path) -> CorpusStore:
    manifest_path = Path(workspace) / "manifest.json"
    if not manifest_path.exists():
        raise PipelineError(f"no manifest at {manifest_path}; run gen-corpus first")
    return CorpusStore.open(manifest_path)


def _write_json(path: Path, doc) -> None:
    _atomic_write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    _atomic_write(path, buf.getvalue())


# ---------------------------------------------------------------------------
# stages

def stage_gen_corpus(
    workspace: str | Path,
    seed: int = 1,
    n_maps: int = 35,
    level_sizes: tuple[int, int, int] = (186, 42, 13),
) -> CorpusManifest:
    return generate_synthetic_corpus(workspace, seed=seed, n_maps=n_maps, level_sizes=level_sizes)


def stage_convert(workspace: str | Path) -> dict:
    """Rewrite every stakeholder file into the beta format under converted/."""
    store = open_store(workspace)
    manifest = store.manifest
    converted = []
    for entry in list(manifest.entries):
        if entry.role != "stakeholder" or entry.source_format == "beta":
            continue
        m = store.get(entry.id)
        rel = f"converted/{entry.id}.csv"
        save_fcm(m, manifest.root / rel, fmt="beta")
        manifest.replace_entry(
            entry.id,
            ManifestEntry(
                id=entry.id,
                path=rel,
                stakeholder_id=entry.stakeholder_id,
                group_id=entry.group_id,
                level=entry.level,
                source_format="beta",
                role=entry.role,
            ),
        )
        converted.append(entry.id)
    manifest.save()
    return {"converted": converted}


def stage_condense(
    workspace: str | Path,
    level: str = "variable",
    pw: PrioritizationWeights = EQUAL_WEIGHTS,
) -> dict:
    """Condense every stakeholder map at a level one level up."""
    store = open_store(workspace)
    manifest = store.manifest
    next_level = level_above(level)
    if next_level is None:
        raise ConfigurationError(f"nothing above level {level!r}")
    hierarchy = store.hierarchy
    produced = []
    for entry in manifest.at(level, role="stakeholder"):
        m = store.get(entry.id)
        condensed = condense(m, hierarchy, pw)
        model_id = f"{entry.stakeholder_id}-{next_level}"
        rel = f"condensed/{model_id}.csv"
        save_fcm(condensed, manifest.root / rel, fmt="beta")
        new_entry = ManifestEntry(
            id=model_id,
            path=rel,
            stakeholder_id=entry.stakeholder_id,
            group_id=entry.group_id,
            level=next_level,
            source_format="beta",
            role="stakeholder",
        )
        if any(e.id == model_id for e in manifest.entries):
            manifest.replace_entry(model_id, new_entry)
        else:
            manifest.add(new_entry)
        produced.append(model_id)
    if not produced:
        raise PipelineError(f"no stakeholder maps at level {level!r} to condense")
    manifest.save()
    return {"condensed": produced, "level": next_level}


def _add_or_replace(manifest: CorpusManifest, entry: ManifestEntry) -> None:
    if any(e.id == entry.id for e in manifest.entries):
        manifest.replace_entry(entry.id, entry)
    else:
        manifest.add(entry)


def stage_aggregate(
    workspace: str | Path,
    level: str,
    group: str | None = None,
    pw: PrioritizationWeights = EQUAL_WEIGHTS,
    from_groups: bool = False,
) -> dict:
    """Build group maps and/or the social map for one level.

    group=None builds every group map plus the social map; the social map is
    aggregated straight from the individual maps unless from_groups is set,
    in which case it re-weights the five group maps instead.
    """
    store = open_store(workspace)
    manifest = store.manifest
    produced = []

    def build(models: Sequence[FcmModel], stakeholder_id: str, group_id: str, rel: str):
        mapset = WeightedMapSet.from_maps(models, pw)
        combined = aggregate(mapset, stakeholder_id=stakeholder_id, group_id=group_id)
        save_fcm(combined, manifest.root / rel, fmt="beta")
        role = "social" if group_id == "aggregate" else "group"
        _add_or_replace(
            manifest,
            ManifestEntry(
                id=combined.id,
                path=rel,
                stakeholder_id=stakeholder_id,
                group_id=group_id,
                level=level,
                source_format="beta",
                role=role,
            ),
        )
        produced.append(combined.id)
        return combined

    groups = [group] if group else [g for g in GROUPS if g != "aggregate"]
    group_models = []
    for g in groups:
        members = store.stakeholder_models(level, group=g)
        if not members:
            if group:
                raise PipelineError(f"no stakeholder maps for group {g!r} at level {level!r}")
            continue
        group_models.append(build(members, g, g, f"aggregated/{g}-{level}.csv"))
    if group is None:
        if from_groups:
            if not group_models:
                raise PipelineError(f"no group maps available at level {level!r}")
            build(group_models, "social", "aggregate", f"aggregated/social-{level}.csv")
        else:
            everyone = store.stakeholder_models(level)
            if not everyone:
                raise PipelineError(f"no stakeholder maps at level {level!r}")
            build(everyone, "social", "aggregate", f"aggregated/social-{level}.csv")
    manifest.save()
    return {"aggregated": produced, "level": level}


def stage_analyze(
    workspace: str | Path,
    model_id: str,
    pw: PrioritizationWeights = EQUAL_WEIGHTS,
) -> dict:
    """Centrality report artifacts for one model of the corpus."""
    store = open_store(workspace)
    m = store.get(model_id)
    return analyze_model(m, Path(workspace) / "analysis", pw)


def analyze_model(m: FcmModel, out_dir: Path, pw: PrioritizationWeights = EQUAL_WEIGHTS) -> dict:
    report = compute_report(m, pw)
    doc = {
        "model": m.id,
        "n_nodes": m.n_nodes,
        "n_edges": m.n_edges,
        "density": density(m) if m.n_nodes >= 2 else None,
        "prioritization_weights": [pw.b_degree, pw.b_closeness, pw.b_betweenness],
        "nodes": report.rows(),
        "map_level": (
            {
                "degree": report.map_level.degree,
                "closeness": report.map_level.closeness,
                "betweenness": report.map_level.betweenness,
                "consensus": report.map_level.consensus,
            }
            if report.map_level
            else None
        ),
    }
    json_path = out_dir / f"{m.id}.centrality.json"
    _write_json(json_path, doc)
    csv_path = out_dir / f"{m.id}.centrality.csv"
    _write_csv(
        csv_path,
        ["id", "degree", "closeness", "betweenness", "ccm", "credibility_weight"],
        [
            [r["id"], r["degree"], r["closeness"], r["betweenness"], r["ccm"], r["credibility_weight"]]
            for r in report.rows()
        ],
    )
    return {"report": doc, "json": str(json_path), "csv": str(csv_path)}


def _scenario_slug(clamps: Mapping[str, float]) -> str:
    if not clamps:
        return "baseline"
    return "clamp-" + "-".join(f"{k}={clamps[k]:g}" for k in sorted(clamps))


def build_spec(
    m: FcmModel,
    preset: str | None = None,
    uniform: float = 0.5,
    clamps: Mapping[str, float] | None = None,
    squash_lambda: float = 1.0,
    tolerance: float = 1e-5,
    max_iterations: int = 100,
    initial_state: Mapping[str, float] | None = None,
) -> sim.ScenarioSpec:
    if initial_state is not None:
        states = dict(initial_state)
    elif preset:
        states = sim.preset_states(preset)
        missing = [i for i in m.ids if i not in states]
        if missing:
            raise ConsistencyError(f"preset {preset!r} lacks states for {missing[:5]}")
        states = {i: states[i] for i in m.ids}
    else:
        states = {i: uniform for i in m.ids}
    return sim.ScenarioSpec(
        initial_state=states,
        clamps=dict(clamps or {}),
        squash_lambda=squash_lambda,
        tolerance=tolerance,
        max_iterations=max_iterations,
    )


def stage_simulate(
    workspace: str | Path,
    model_id: str = "social-concept",
    preset: str | None = None,
    uniform: float = 0.5,
    clamps: Mapping[str, float] | None = None,
    squash_lambda: float = 1.0,
    tolerance: float = 1e-5,
    max_iterations: int = 100,
    initial_state: Mapping[str, float] | None = None,
) -> dict:
    """Run one scenario; with clamps, also run the baseline and write deltas."""
    store = open_store(workspace)
    m = store.get(model_id)
    out_dir = Path(workspace) / "sim"
    spec = build_spec(
        m, preset, uniform, clamps, squash_lambda, tolerance, max_iterations,
        initial_state=initial_state,
    )
    result = sim.run(m, spec)
    slug = _scenario_slug(spec.clamps)
    result_path = out_dir / f"{model_id}--{slug}.json"
    _write_json(result_path, {"model": model_id, "spec": spec.canonical(), **result.to_dict()})
    summary = {
        "model": model_id,
        "scenario": slug,
        "converged": result.converged,
        "iterations": result.iterations,
        "result": str(result_path),
    }
    if spec.clamps:
        base_spec = sim.ScenarioSpec(
            initial_state=spec.initial_state,
            clamps={},
            squash_lambda=spec.squash_lambda,
            tolerance=spec.tolerance,
            max_iterations=spec.max_iterations,
        )
        baseline = sim.run(m, base_spec)
        base_path = out_dir / f"{model_id}--baseline.json"
        _write_json(
            base_path, {"model": model_id, "spec": base_spec.canonical(), **baseline.to_dict()}
        )
        summary["baseline"] = str(base_path)
        summary["baseline_converged"] = baseline.converged
        if baseline.converged and result.converged:
            comparison = sim.compare(baseline, result)
            deltas_path = out_dir / f"{model_id}--{slug}.deltas.csv"
            _write_csv(
                deltas_path,
                ["id", "label", "baseline", "policy", "delta"],
                [
                    [i, m.node(i).label, float(comparison.baseline[k]),
                     float(comparison.policy[k]), float(comparison.deltas[k])]
                    for k, i in enumerate(comparison.ids)
                ],
            )
            summary["deltas"] = str(deltas_path)
    return summary


def load_result(path: str | Path) -> sim.SimulationResult:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    import numpy as np

    return sim.SimulationResult(
        ids=tuple(doc["ids"]),
        trajectory=np.array(doc["trajectory"]),
        iterations=int(doc["iterations"]),
        converged=bool(doc["converged"]),
        clamped=tuple(doc["clamped"]),
    )


def stage_compare(baseline_path: str | Path, policy_path: str | Path, out_path: str | Path | None = None) -> dict:
    baseline = load_result(baseline_path)
    policy = load_result(policy_path)
    comparison = sim.compare(baseline, policy)
    doc = comparison.to_dict()
    if out_path:
        _write_json(Path(out_path), doc)
    return doc


def clamp_one_comparisons(
    store: CorpusStore,
    level: str,
    candidates: Sequence[str],
    clamp_value: float = 1.0,
    squash_lambda: float = 1.0,
    tolerance: float = 1e-5,
    max_iterations: int = 100,
) -> dict[str, sim.ScenarioComparison]:
    """Clamp each candidate high in the level's social map vs. the default run."""
    m = store.social(level)
    missing = [c for c in candidates if c not in m.ids]
    if missing:
        raise ConsistencyError(f"candidates not in the {level} social map: {missing}")
    base_spec = sim.ScenarioSpec.uniform(
        m, squash_lambda=squash_lambda, tolerance=tolerance, max_iterations=max_iterations
    )
    baseline = sim.run(m, base_spec)
    if not baseline.converged:
        raise UsageError(f"default simulation on the {level} social map did not converge")
    out = {}
    for cand in candidates:
        spec = sim.ScenarioSpec(
            initial_state=base_spec.initial_state,
            clamps={cand: clamp_value},
            squash_lambda=squash_lambda,
            tolerance=tolerance,
            max_iterations=max_iterations,
        )
        policy = sim.run(m, spec)
        if not policy.converged:
            raise UsageError(f"scenario clamping {cand!r} did not converge")
        out[cand] = sim.compare(baseline, policy)
    return out


def stage_drill(
    workspace: str | Path,
    concept_id: str,
    clamp_value: float = 1.0,
    squash_lambda: float = 1.0,
    tolerance: float = 1e-5,
    max_iterations: int = 100,
) -> dict:
    """Run the concept's clamp-one batch and write the comparisons."""
    store = open_store(workspace)
    batch = sim.drill_down(
        concept_id,
        store.hierarchy,
        store,
        clamp_value=clamp_value,
        squash_lambda=squash_lambda,
        tolerance=tolerance,
        max_iterations=max_iterations,
    )
    out_dir = Path(workspace) / "drill" / concept_id
    kv_doc = {kv: comparison.to_dict() for kv, comparison in batch.key_variable_results}
    _write_json(out_dir / "key_variables.json", kv_doc)
    for kv, results in batch.variable_results.items():
        _write_json(out_dir / f"{kv}.variables.json", {v: c.to_dict() for v, c in results})
    return {
        "concept": concept_id,
        "key_variables": [kv for kv, _ in batch.key_variable_results],
        "variables": {kv: [v for v, _ in results] for kv, results in batch.variable_results.items()},
        "out_dir": str(out_dir),
    }


def rank_report(
    store: CorpusStore,
    concept_id: str | None = None,
    key_variable_id: str | None = None,
    weights: CriterionWeights = CriterionWeights(),
    clamp_value: float = 1.0,
    squash_lambda: float = 1.0,
    tolerance: float = 1e-5,
    max_iterations: int = 100,
) -> AppropriatenessReport:
    """Appropriateness ranking of a concept's key variables or a KV's variables."""
    hierarchy = store.hierarchy
    if (concept_id is None) == (key_variable_id is None):
        raise ConfigurationError("rank one concept or one key variable, not both/neither")
    if concept_id is not None:
        if hierarchy.level_of(concept_id) != "concept":
            raise ConsistencyError(f"{concept_id!r} is not a concept")
        candidates = list(hierarchy.children_of(concept_id))
        level = "key_variable"
    else:
        if hierarchy.level_of(key_variable_id) != "key_variable":
            raise ConsistencyError(f"{key_variable_id!r} is not a key variable")
        candidates = list(hierarchy.children_of(key_variable_id))
        level = "variable"
    if not candidates:
        raise ConsistencyError("the selected group has no children to rank")
    social = store.social(level)
    comparisons = clamp_one_comparisons(
        store, level, candidates,
        clamp_value=clamp_value, squash_lambda=squash_lambda,
        tolerance=tolerance, max_iterations=max_iterations,
    )
    targets = targets_from_hierarchy(hierarchy, level)
    cw = node_credibility_weights(social)
    mentions = store.mention_counts(level)
    imp = importance_pct(candidates, cw, mentions)
    feas = feasibility_pct(comparisons, targets)
    infl, sub = influence_pct(comparisons, targets)
    return combine_criteria(imp, feas, infl, weights, sub_influence=sub)


def stage_rank(
    workspace: str | Path,
    concept_id: str | None = None,
    key_variable_id: str | None = None,
    weights: CriterionWeights = CriterionWeights(),
    **sim_params,
) -> dict:
    store = open_store(workspace)
    report = rank_report(
        store, concept_id=concept_id, key_variable_id=key_variable_id,
        weights=weights, **sim_params,
    )
    name = concept_id or key_variable_id
    out_dir = Path(workspace) / "rank"
    json_path = out_dir / f"{name}.appropriateness.json"
    _write_json(json_path, report.to_dict())
    target_ids = sorted(report.rows[0].get("influence_by_target", {})) if report.rows else []
    csv_path = out_dir / f"{name}.appropriateness.csv"
    _write_csv(
        csv_path,
        ["id", "importance", "feasibility"]
        + [f"influence_{t}" for t in target_ids]
        + ["influence", "appropriateness", "rank"],
        [
            [r["id"], r["importance"], r["feasibility"]]
            + [r["influence_by_target"][t] for t in target_ids]
            + [r["influence"], r["appropriateness"], r["rank"]]
            for r in report.rows
        ],
    )
    return {"report": report.to_dict(), "json": str(json_path), "csv": str(csv_path)}


def run_all(
    workspace: str | Path,
    seed: int = 1,
    n_maps: int = 35,
    level_sizes: tuple[int, int, int] = (186, 42, 13),
    pw: PrioritizationWeights = EQUAL_WEIGHTS,
    preset: str | None = "jordan-2013",
    scenarios: Sequence[tuple[str, float]] = DEFAULT_SCENARIOS,
    rank_concept: str | None = "F",
) -> dict:
    """The whole pipeline: corpus, conversion, condensation, aggregation,
    analysis, baseline plus policy scenarios, and one ranking."""
    workspace = Path(workspace)
    summary: dict = {}
    stage_gen_corpus(workspace, seed=seed, n_maps=n_maps, level_sizes=level_sizes)
    summary["convert"] = stage_convert(workspace)
    summary["condense_1"] = stage_condense(workspace, "variable", pw)
    summary["condense_2"] = stage_condense(workspace, "key_variable", pw)
    for level in LEVELS:
        stage_aggregate(workspace, level, pw=pw)
    summary["analyze"] = stage_analyze(workspace, "social-concept", pw)["report"]["density"]
    top = "social-concept"
    store = open_store(workspace)
    concept_ids = set(store.get(top).ids)
    use_preset = preset
    if use_preset:
        try:
            states = sim.preset_states(use_preset)
            if set(states) != concept_ids:
                use_preset = None
        except ConfigurationError:
            use_preset = None
    summary["baseline"] = stage_simulate(workspace, top, preset=use_preset)
    runs = []
    for node_id, value in scenarios:
        if node_id not in concept_ids:
            continue
        runs.append(stage_simulate(workspace, top, preset=use_preset, clamps={node_id: value}))
    summary["scenarios"] = runs
    if rank_concept and rank_concept in concept_ids:
        summary["rank"] = stage_rank(workspace, concept_id=rank_concept)["json"]
    return summary
