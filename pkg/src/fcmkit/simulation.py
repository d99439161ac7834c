"""Fixed-point simulation of a map as an auto-associative network.

Each iteration feeds every node the weighted sum of all node states from the
previous step (weights rescaled from the beta range to [-1, 1]), squashes it
through a logistic function, and then re-imposes any clamped values. A run
stops when the largest per-node change falls below tolerance or the
iteration budget is spent; non-convergence is a reported state, not an
error.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Protocol, Sequence

import numpy as np

from .condensation import CondensationHierarchy
from .errors import (
    ConfigurationError,
    ConsistencyError,
    PipelineError,
    ShapeError,
    UsageError,
)
from .model import FcmModel
from .twotuple import BLTS_13

DEFAULT_WEIGHT_SCALE = 1.0 / BLTS_13.g


@dataclass(frozen=True)
class ScenarioSpec:
    """Initial per-node states, clamped nodes, and iteration controls."""

    initial_state: Mapping[str, float]
    clamps: Mapping[str, float] = field(default_factory=dict)
    squash_lambda: float = 1.0
    tolerance: float = 1e-5
    max_iterations: int = 100
    weight_scale: float = DEFAULT_WEIGHT_SCALE

    def __post_init__(self):
        if self.squash_lambda <= 0:
            raise ConfigurationError("squash_lambda must be positive")
        if self.tolerance <= 0:
            raise ConfigurationError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be at least 1")
        for name, mapping in (("initial state", self.initial_state), ("clamp", self.clamps)):
            for node_id, value in mapping.items():
                if not 0.0 <= value <= 1.0:
                    raise ConfigurationError(
                        f"{name} value for {node_id!r} must lie in [0, 1], got {value}"
                    )
        object.__setattr__(self, "initial_state", dict(self.initial_state))
        object.__setattr__(self, "clamps", dict(self.clamps))

    @classmethod
    def uniform(cls, m: FcmModel, value: float = 0.5, **kwargs) -> "ScenarioSpec":
        return cls(initial_state={i: value for i in m.ids}, **kwargs)

    def canonical(self) -> dict:
        """A stable, JSON-ready form (used for hashing and persistence)."""
        return {
            "initial_state": {k: self.initial_state[k] for k in sorted(self.initial_state)},
            "clamps": {k: self.clamps[k] for k in sorted(self.clamps)},
            "squash_lambda": self.squash_lambda,
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
            "weight_scale": self.weight_scale,
        }


@dataclass(frozen=True)
class SimulationResult:
    ids: tuple[str, ...]
    trajectory: np.ndarray  # (iterations + 1, N)
    iterations: int
    converged: bool
    clamped: tuple[str, ...]

    @property
    def steady_state(self) -> np.ndarray:
        return self.trajectory[-1]

    def state_of(self, node_id: str) -> float:
        return float(self.steady_state[self.ids.index(node_id)])

    def to_dict(self) -> dict:
        return {
            "ids": list(self.ids),
            "trajectory": self.trajectory.tolist(),
            "steady_state": self.steady_state.tolist(),
            "iterations": self.iterations,
            "converged": self.converged,
            "clamped": list(self.clamped),
        }


@dataclass(frozen=True)
class ScenarioComparison:
    """Per-node steady-state change of a policy run against its baseline."""

    ids: tuple[str, ...]
    baseline: np.ndarray
    policy: np.ndarray
    deltas: np.ndarray
    clamped: tuple[str, ...]
    target_summary: dict[str, float] = field(default_factory=dict)

    def delta_of(self, node_id: str) -> float:
        return float(self.deltas[self.ids.index(node_id)])

    def to_dict(self) -> dict:
        return {
            "ids": list(self.ids),
            "baseline": self.baseline.tolist(),
            "policy": self.policy.tolist(),
            "deltas": self.deltas.tolist(),
            "clamped": list(self.clamped),
            "target_summary": dict(self.target_summary),
        }


def _resolve(m: FcmModel, spec: ScenarioSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    missing = [i for i in m.ids if i not in spec.initial_state]
    if missing:
        raise ConfigurationError(f"initial state missing nodes {missing[:5]}")
    extra = [i for i in spec.initial_state if i not in m.ids]
    if extra:
        raise ConsistencyError(f"initial state names unknown nodes {extra[:5]}")
    unknown_clamps = [i for i in spec.clamps if i not in m.ids]
    if unknown_clamps:
        raise ConsistencyError(f"clamped nodes not in model: {unknown_clamps}")
    state = np.array([spec.initial_state[i] for i in m.ids])
    clamp_idx = np.array([m.index(i) for i in spec.clamps], dtype=int)
    clamp_val = np.array([spec.clamps[i] for i in spec.clamps])
    return state, clamp_idx, clamp_val


def step(m: FcmModel, state: np.ndarray, spec: ScenarioSpec) -> np.ndarray:
    """One synchronous update of all node states, clamps re-imposed last."""
    state = np.asarray(state, dtype=float)
    if state.shape != (m.n_nodes,):
        raise ShapeError(f"state has shape {state.shape}, expected ({m.n_nodes},)")
    unknown = [i for i in spec.clamps if i not in m.ids]
    if unknown:
        raise ConsistencyError(f"clamped nodes not in model: {unknown}")
    x = state @ (m.weights * spec.weight_scale)
    nxt = 1.0 / (1.0 + np.exp(-spec.squash_lambda * x))
    for node_id, value in spec.clamps.items():
        nxt[m.index(node_id)] = value
    return nxt


def run(m: FcmModel, spec: ScenarioSpec) -> SimulationResult:
    """Iterate to steady state (or the iteration budget). Deterministic."""
    state, clamp_idx, clamp_val = _resolve(m, spec)
    w = m.weights * spec.weight_scale
    trajectory = [state]
    converged = False
    iterations = 0
    for _ in range(spec.max_iterations):
        x = trajectory[-1] @ w
        nxt = 1.0 / (1.0 + np.exp(-spec.squash_lambda * x))
        if clamp_idx.size:
            nxt[clamp_idx] = clamp_val
        trajectory.append(nxt)
        iterations += 1
        if np.max(np.abs(nxt - trajectory[-2])) < spec.tolerance:
            converged = True
            break
    return SimulationResult(
        ids=m.ids,
        trajectory=np.array(trajectory),
        iterations=iterations,
        converged=converged,
        clamped=tuple(spec.clamps),
    )


def compare(
    baseline: SimulationResult,
    policy: SimulationResult,
    targets: Sequence[str] = (),
) -> ScenarioComparison:
    """Per-node steady-state deltas; both runs must have converged."""
    if not baseline.converged or not policy.converged:
        raise UsageError("comparison is only defined between converged runs")
    if baseline.ids != policy.ids:
        raise ConsistencyError("runs cover different node sets")
    deltas = policy.steady_state - baseline.steady_state
    summary = {}
    for t in targets:
        if t not in baseline.ids:
            raise ConsistencyError(f"target node {t!r} not in the simulated model")
        summary[t] = float(deltas[baseline.ids.index(t)])
    return ScenarioComparison(
        ids=baseline.ids,
        baseline=baseline.steady_state.copy(),
        policy=policy.steady_state.copy(),
        deltas=deltas,
        clamped=policy.clamped,
        target_summary=summary,
    )


# ---------------------------------------------------------------------------
# presets

def load_presets() -> dict:
    text = resources.files("fcmkit.data").joinpath("presets.json").read_text(encoding="utf-8")
    return json.loads(text)


def preset_states(name: str) -> dict[str, float]:
    presets = load_presets()
    if name not in presets:
        raise ConfigurationError(f"unknown preset {name!r}; available: {sorted(presets)}")
    return dict(presets[name]["states"])


# ---------------------------------------------------------------------------
# drill-down

class MapSource(Protocol):
    def social(self, level: str) -> FcmModel: ...


@dataclass(frozen=True)
class DrillBatch:
    """Clamp-one comparisons for a concept's children and grandchildren."""

    concept_id: str
    key_variable_results: tuple[tuple[str, ScenarioComparison], ...]
    variable_results: dict[str, tuple[tuple[str, ScenarioComparison], ...]]
    baselines: dict[str, SimulationResult]


def drill_down(
    concept_id: str,
    hierarchy: CondensationHierarchy,
    store: MapSource,
    *,
    clamp_value: float = 1.0,
    squash_lambda: float = 1.0,
    tolerance: float = 1e-5,
    max_iterations: int = 100,
    initial_states: Mapping[str, Mapping[str, float]] | None = None,
) -> DrillBatch:
    """Probe a concept one level at a time with clamp-one scenarios.

    Every child key variable is clamped (one scenario each) in the social
    key-variable map, then every grandchild variable in the social variable
    map; each scenario is compared against that level's baseline run. The
    resulting batch feeds the appropriateness scoring.
    """
    if hierarchy.level_of(concept_id) != "concept":
        raise ConsistencyError(f"{concept_id!r} is not a concept")
    key_vars = hierarchy.children_of(concept_id)
    if not key_vars:
        warnings.warn(f"concept {concept_id!r} has no key variables; empty batch", stacklevel=2)
        return DrillBatch(concept_id, (), {}, {})

    def level_spec(m: FcmModel, clamps: Mapping[str, float]) -> ScenarioSpec:
        level = m.provenance.level
        states = dict((initial_states or {}).get(level) or {i: 0.5 for i in m.ids})
        return ScenarioSpec(
            initial_state=states,
            clamps=clamps,
            squash_lambda=squash_lambda,
            tolerance=tolerance,
            max_iterations=max_iterations,
        )

    def comparisons(m: FcmModel, candidates: Sequence[str]):
        baseline = run(m, level_spec(m, {}))
        out = []
        for cand in candidates:
            policy = run(m, level_spec(m, {cand: clamp_value}))
            out.append((cand, compare(baseline, policy)))
        return baseline, tuple(out)

    try:
        kv_map = store.social("key_variable")
        var_map = store.social("variable")
    except Exception as exc:
        raise PipelineError(f"drill-down needs social maps at both lower levels: {exc}") from exc
    if kv_map is None or var_map is None:
        raise PipelineError("drill-down needs social maps at key-variable and variable levels")

    kv_baseline, kv_results = comparisons(kv_map, [k for k in key_vars if k in kv_map.ids])
    var_results: dict[str, tuple] = {}
    var_baseline = None
    for kv in key_vars:
        children = [v for v in hierarchy.children_of(kv) if v in var_map.ids]
        if not children:
            var_results[kv] = ()
            continue
        if var_baseline is None:
            var_baseline = run(var_map, level_spec(var_map, {}))
        out = []
        for cand in children:
            policy = run(var_map, level_spec(var_map, {cand: clamp_value}))
            out.append((cand, compare(var_baseline, policy)))
        var_results[kv] = tuple(out)
    baselines = {"key_variable": kv_baseline}
    if var_baseline is not None:
        baselines["variable"] = var_baseline
    return DrillBatch(
        concept_id=concept_id,
        key_variable_results=kv_results,
        variable_results=var_results,
        baselines=baselines,
    )
