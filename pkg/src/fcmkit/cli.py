"""Pipeline command-line driver.

Every stage is a subcommand operating on a workspace directory. Exit codes
distinguish failure classes: 2 for usage and configuration problems, 3 for
malformed files, 4 for unknown nodes/models and broken references, 5 for
simulations that did not converge where convergence was required.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import pipeline as pl
from .appropriateness import CriterionWeights
from .centrality import PrioritizationWeights
from .errors import (
    ConfigurationError,
    ConsistencyError,
    DegenerateInputError,
    FcmError,
    HierarchyError,
    InputRangeError,
    InvalidPairError,
    ParseError,
    PipelineError,
    ShapeError,
    UsageError,
    ValidationError,
)
from .model import load_fcm

EXIT_CONFIG = 2
EXIT_MALFORMED = 3
EXIT_UNKNOWN_REF = 4
EXIT_UNCONVERGED = 5

_EXIT_CODES = (
    (UsageError, EXIT_UNCONVERGED),
    ((ParseError, ShapeError, ValidationError, DegenerateInputError), EXIT_MALFORMED),
    ((ConsistencyError, HierarchyError, PipelineError, InvalidPairError), EXIT_UNKNOWN_REF),
    ((ConfigurationError, InputRangeError), EXIT_CONFIG),
)

DEFAULTS = {
    "workspace": "fcm-workspace",
    "seed": 1,
    "maps": 35,
    "level_sizes": "186,42,13",
    "prioritization_weights": "0.3333333333333333,0.3333333333333333,0.3333333333333333",
    "criterion_weights": "0.25,0.25,0.5",
    "squash_lambda": 1.0,
    "tolerance": 1e-5,
    "max_iterations": 100,
    "clamp_value": 1.0,
    "preset": "jordan-2013",
}


def _fail(exc: FcmError) -> None:
    click.echo(f"error: {exc}", err=True)
    for types, code in _EXIT_CODES:
        if isinstance(exc, types):
            sys.exit(code)
    sys.exit(1)


def run_stage(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except FcmError as exc:
        _fail(exc)


def _emit(doc, as_json: bool, lines=None) -> None:
    if as_json:
        click.echo(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        for line in lines or [str(doc)]:
            click.echo(line)


def _parse_sizes(text: str) -> tuple[int, int, int]:
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 3:
        raise click.BadParameter("expected three comma-separated sizes")
    return tuple(parts)


def _parse_clamps(pairs) -> dict[str, float]:
    clamps = {}
    for pair in pairs:
        if "=" not in pair:
            raise click.BadParameter(f"clamp must look like NODE=VALUE, got {pair!r}")
        node, _, value = pair.partition("=")
        try:
            clamps[node.strip()] = float(value)
        except ValueError:
            raise click.BadParameter(f"clamp value {value!r} is not a number") from None
    return clamps


class _Context:
    def __init__(self, config: dict):
        self.config = config


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False),
    default=None, help="JSON config file; flags override its values.",
)
@click.pass_context
def main(ctx, config_path):
    """Fuzzy cognitive map pipeline: corpus, conversion, condensation,
    aggregation, analysis, policy simulation, and ranking."""
    config = dict(DEFAULTS)
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"config file is not valid JSON: {exc}")
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
        config.update(loaded)
    ctx.obj = _Context(config)
    # flags > config file > built-in defaults; each key feeds only the
    # parameters it is meant for
    ws = {"workspace": config["workspace"]}
    sim_keys = {
        "squash_lambda": config["squash_lambda"],
        "tolerance": config["tolerance"],
        "max_iterations": config["max_iterations"],
    }
    corpus_keys = {
        "seed": config["seed"],
        "maps": config["maps"],
        "level_sizes": config["level_sizes"],
    }
    pw = {"pw_text": config["prioritization_weights"]}
    ctx.default_map = {
        "gen-corpus": {**ws, **corpus_keys},
        "convert": ws,
        "analyze": {**ws, **pw},
        "condense": {**ws, **pw},
        "aggregate": {**ws, **pw},
        "simulate": {**ws, **sim_keys},
        "drill": {**ws, **sim_keys, "clamp_value": config["clamp_value"]},
        "rank": {**ws, **sim_keys, "clamp_value": config["clamp_value"],
                 "cw_text": config["criterion_weights"]},
        "serve": ws,
        "run-all": {**ws, **corpus_keys, "preset": config["preset"]},
    }


def workspace_option(fn):
    return click.option(
        "-w", "--workspace", type=click.Path(), default=DEFAULTS["workspace"],
        show_default=True, help="Corpus workspace directory.",
    )(fn)


@main.command("show-config")
@click.pass_obj
def show_config(obj: _Context):
    """Print the effective configuration (defaults merged with --config)."""
    click.echo(json.dumps(obj.config, indent=2, sort_keys=True))


@main.command("gen-corpus")
@workspace_option
@click.option("--seed", type=int, default=DEFAULTS["seed"], show_default=True)
@click.option("--maps", type=int, default=DEFAULTS["maps"], show_default=True)
@click.option("--level-sizes", default=DEFAULTS["level_sizes"], show_default=True,
              help="variables,key_variables,concepts")
@click.option("--json", "as_json", is_flag=True)
def gen_corpus(workspace, seed, maps, level_sizes, as_json):
    """Generate a reproducible synthetic stakeholder corpus."""
    sizes = _parse_sizes(level_sizes)
    manifest = run_stage(pl.stage_gen_corpus, workspace, seed=seed, n_maps=maps, level_sizes=sizes)
    doc = {"workspace": str(workspace), "entries": len(manifest.entries), "seed": seed}
    _emit(doc, as_json, [f"wrote {len(manifest.entries)} maps under {workspace}"])


@main.command()
@workspace_option
@click.option("--json", "as_json", is_flag=True)
def convert(workspace, as_json):
    """Convert raw stakeholder files to the unified beta format."""
    out = run_stage(pl.stage_convert, workspace)
    _emit(out, as_json, [f"converted {len(out['converted'])} maps"])


@main.command()
@click.argument("model")
@workspace_option
@click.option("--format", "source_format", default=None,
              help="Source format when MODEL is a CSV path without a sidecar.")
@click.option("--weights", "pw_text", default=DEFAULTS["prioritization_weights"],
              show_default=False, help="Degree,closeness,betweenness mixing weights.")
@click.option("-o", "--out-dir", type=click.Path(), default=None,
              help="Report directory (default: workspace/analysis).")
@click.option("--json", "as_json", is_flag=True)
def analyze(model, workspace, source_format, pw_text, out_dir, as_json):
    """Centrality report for a corpus model id or a standalone CSV file."""
    try:
        pw = PrioritizationWeights.parse(pw_text)
        if Path(model).exists():
            m = load_fcm(Path(model), source_format=source_format)
            target = Path(out_dir) if out_dir else Path(model).parent
            out = pl.analyze_model(m, target, pw)
        else:
            store = pl.open_store(workspace)
            m = store.get(model)
            target = Path(out_dir) if out_dir else Path(workspace) / "analysis"
            out = pl.analyze_model(m, target, pw)
    except FcmError as exc:
        _fail(exc)
    report = out["report"]
    lines = [f"{model}: {report['n_nodes']} nodes, {report['n_edges']} edges, "
             f"density {report['density']:.3f}" if report["density"] is not None else model]
    lines += [
        f"  {r['id']:>6}  deg {r['degree']:8.3f}  clo {r['closeness']:8.3f}  "
        f"bet {r['betweenness']:8.3f}  ccm {r['ccm']:8.3f}  cw {r['credibility_weight']:.4f}"
        for r in report["nodes"]
    ]
    lines.append(f"wrote {out['json']} and {out['csv']}")
    _emit(report, as_json, lines)


@main.command()
@workspace_option
@click.option("--level", type=click.Choice(["variable", "key_variable"]), default="variable",
              show_default=True)
@click.option("--weights", "pw_text", default=DEFAULTS["prioritization_weights"])
@click.option("--json", "as_json", is_flag=True)
def condense(workspace, level, pw_text, as_json):
    """Condense every stakeholder map at LEVEL one level up."""
    pw = run_stage(PrioritizationWeights.parse, pw_text)
    out = run_stage(pl.stage_condense, workspace, level, pw)
    _emit(out, as_json, [f"condensed {len(out['condensed'])} maps to level {out['level']}"])


@main.command()
@workspace_option
@click.option("--level", type=click.Choice(["variable", "key_variable", "concept"]),
              required=True)
@click.option("--group", default=None, help="Aggregate only this stakeholder group.")
@click.option("--all", "all_groups", is_flag=True,
              help="Aggregate every group plus the social map (default when no --group).")
@click.option("--from-groups", is_flag=True,
              help="Build the social map from the group maps instead of individuals.")
@click.option("--weights", "pw_text", default=DEFAULTS["prioritization_weights"])
@click.option("--json", "as_json", is_flag=True)
def aggregate(workspace, level, group, all_groups, from_groups, pw_text, as_json):
    """Combine same-level maps into group and social maps."""
    pw = run_stage(PrioritizationWeights.parse, pw_text)
    out = run_stage(
        pl.stage_aggregate, workspace, level,
        group=None if all_groups else group, pw=pw, from_groups=from_groups,
    )
    _emit(out, as_json, [f"aggregated: {', '.join(out['aggregated'])}"])


def _load_scenario_file(path: str) -> dict:
    """A scenario document: {model, initial_state|preset, clamps, lambda,
    tolerance, max_iterations}; flags override its values."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"scenario file is not valid JSON: {exc}")
    known = {"model", "preset", "initial_state", "uniform", "clamps",
             "lambda", "squash_lambda", "tolerance", "max_iterations"}
    unknown = set(doc) - known
    if unknown:
        raise click.UsageError(f"unknown scenario keys: {sorted(unknown)}")
    if "lambda" in doc:
        doc["squash_lambda"] = doc.pop("lambda")
    return doc


@main.command()
@workspace_option
@click.option("--model", "model_id", default=None, help="Model id (default social-concept).")
@click.option("--scenario", "scenario_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Scenario JSON file; flags override its fields.")
@click.option("--preset", default=None, help='Initial-state preset (e.g. "jordan-2013").')
@click.option("--uniform", type=float, default=None,
              help="Uniform initial state when no preset is given [default: 0.5].")
@click.option("--clamp", "clamp_pairs", multiple=True, metavar="NODE=VALUE",
              help="Clamp a node for the whole run; repeatable.")
@click.option("--squash-lambda", type=float, default=DEFAULTS["squash_lambda"], show_default=True)
@click.option("--tolerance", type=float, default=DEFAULTS["tolerance"], show_default=True)
@click.option("--max-iterations", type=int, default=DEFAULTS["max_iterations"], show_default=True)
@click.option("--json", "as_json", is_flag=True)
def simulate(workspace, model_id, scenario_path, preset, uniform, clamp_pairs,
             squash_lambda, tolerance, max_iterations, as_json):
    """Run a scenario to steady state; with clamps, also write the delta table."""
    doc = _load_scenario_file(scenario_path) if scenario_path else {}
    clamps = dict(doc.get("clamps", {}))
    clamps.update(_parse_clamps(clamp_pairs))
    out = run_stage(
        pl.stage_simulate, workspace,
        model_id or doc.get("model", "social-concept"),
        preset=preset or doc.get("preset"),
        uniform=uniform if uniform is not None else doc.get("uniform", 0.5),
        initial_state=doc.get("initial_state"),
        clamps=clamps,
        squash_lambda=doc.get("squash_lambda", squash_lambda)
        if squash_lambda == DEFAULTS["squash_lambda"] else squash_lambda,
        tolerance=doc.get("tolerance", tolerance)
        if tolerance == DEFAULTS["tolerance"] else tolerance,
        max_iterations=doc.get("max_iterations", max_iterations)
        if max_iterations == DEFAULTS["max_iterations"] else max_iterations,
    )
    lines = [
        f"{out['model']} {out['scenario']}: "
        f"{'converged' if out['converged'] else 'DID NOT CONVERGE'} "
        f"after {out['iterations']} iterations",
        f"wrote {out['result']}",
    ]
    if "deltas" in out:
        lines.append(f"wrote {out['deltas']}")
    _emit(out, as_json, lines)
    if not out["converged"] or not out.get("baseline_converged", True):
        sys.exit(EXIT_UNCONVERGED)


@main.command()
@click.argument("baseline", type=click.Path(exists=True, dir_okay=False))
@click.argument("policy", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", "out_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
def compare(baseline, policy, out_path, as_json):
    """Per-node steady-state deltas between two saved simulation results."""
    doc = run_stage(pl.stage_compare, baseline, policy, out_path)
    lines = [
        f"{i:>8}  {b:8.4f} -> {p:8.4f}  delta {d:+.4f}"
        for i, b, p, d in zip(doc["ids"], doc["baseline"], doc["policy"], doc["deltas"])
    ]
    _emit(doc, as_json, lines)


@main.command()
@workspace_option
@click.option("--concept", required=True, help="Concept id to probe.")
@click.option("--clamp-value", type=float, default=DEFAULTS["clamp_value"], show_default=True)
@click.option("--squash-lambda", type=float, default=DEFAULTS["squash_lambda"])
@click.option("--tolerance", type=float, default=DEFAULTS["tolerance"])
@click.option("--max-iterations", type=int, default=DEFAULTS["max_iterations"])
@click.option("--json", "as_json", is_flag=True)
def drill(workspace, concept, clamp_value, squash_lambda, tolerance, max_iterations, as_json):
    """Clamp-one scenarios for a concept's key variables and variables."""
    out = run_stage(
        pl.stage_drill, workspace, concept,
        clamp_value=clamp_value, squash_lambda=squash_lambda,
        tolerance=tolerance, max_iterations=max_iterations,
    )
    lines = [f"key variables: {', '.join(out['key_variables'])}"]
    lines += [f"  {kv}: {', '.join(vs) if vs else '(no variables)'}"
              for kv, vs in out["variables"].items()]
    lines.append(f"wrote {out['out_dir']}")
    _emit(out, as_json, lines)


@main.command()
@workspace_option
@click.option("--concept", default=None, help="Rank this concept's key variables.")
@click.option("--key-variable", default=None, help="Rank this key variable's variables.")
@click.option("--weights", "cw_text", default=DEFAULTS["criterion_weights"],
              show_default=True, help="Importance,feasibility,influence weights.")
@click.option("--clamp-value", type=float, default=DEFAULTS["clamp_value"])
@click.option("--squash-lambda", type=float, default=DEFAULTS["squash_lambda"])
@click.option("--tolerance", type=float, default=DEFAULTS["tolerance"])
@click.option("--max-iterations", type=int, default=DEFAULTS["max_iterations"])
@click.option("--json", "as_json", is_flag=True)
def rank(workspace, concept, key_variable, cw_text, clamp_value, squash_lambda,
         tolerance, max_iterations, as_json):
    """Appropriateness ranking of candidate policy nodes."""
    weights = run_stage(CriterionWeights.parse, cw_text)
    out = run_stage(
        pl.stage_rank, workspace, concept_id=concept, key_variable_id=key_variable,
        weights=weights, clamp_value=clamp_value, squash_lambda=squash_lambda,
        tolerance=tolerance, max_iterations=max_iterations,
    )
    lines = [
        f"{r['rank']}. {r['id']:>6}  importance {r['importance']:6.1f}  "
        f"feasibility {r['feasibility']:+7.1f}  influence {r['influence']:6.1f}  "
        f"appropriateness {r['appropriateness']:6.1f}"
        for r in out["report"]["rows"]
    ]
    lines.append(f"wrote {out['json']} and {out['csv']}")
    _emit(out["report"], as_json, lines)


@main.command("run-all")
@workspace_option
@click.option("--seed", type=int, default=DEFAULTS["seed"], show_default=True)
@click.option("--maps", type=int, default=DEFAULTS["maps"], show_default=True)
@click.option("--level-sizes", default=DEFAULTS["level_sizes"], show_default=True)
@click.option("--preset", default=DEFAULTS["preset"], show_default=True)
@click.option("--json", "as_json", is_flag=True)
def run_all(workspace, seed, maps, level_sizes, preset, as_json):
    """Full pipeline: gen-corpus, convert, condense x2, aggregate, simulate, rank."""
    sizes = _parse_sizes(level_sizes)
    out = run_stage(pl.run_all, workspace, seed=seed, n_maps=maps,
                    level_sizes=sizes, preset=preset)
    lines = [f"pipeline complete under {workspace}"]
    if "rank" in out:
        lines.append(f"ranking at {out['rank']}")
    _emit(out, as_json, lines)


@main.command()
@workspace_option
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--frontend", "frontend_dir", type=click.Path(), default=None,
              help="Static explorer bundle to host at /.")
def serve(workspace, host, port, frontend_dir):
    """Serve the HTTP scenario-explorer API over the workspace corpus."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(Path(workspace) / "manifest.json", frontend_dir=frontend_dir)
    except FcmError as exc:
        _fail(exc)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
