"""Multi-criteria scoring of candidate policy nodes.

Candidates (key variables or original variables) are scored on Importance
(credibility weight and how often stakeholders mentioned them), Feasibility
(signed effect on the economic nodes: improvement positive, decline
negative), and Influence (desired-direction effect on the target concepts).
The weighted combination is normalized to percentages and ranked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .condensation import CondensationHierarchy
from .errors import ConfigurationError, ConsistencyError, DegenerateInputError
from .simulation import ScenarioComparison


@dataclass(frozen=True)
class CriterionWeights:
    w_importance: float = 0.25
    w_feasibility: float = 0.25
    w_influence: float = 0.5

    def __post_init__(self):
        ws = (self.w_importance, self.w_feasibility, self.w_influence)
        if any(w < 0 for w in ws):
            raise ConfigurationError("criterion weights must be nonnegative")
        if abs(sum(ws) - 1.0) > 1e-9:
            raise ConfigurationError(f"criterion weights must sum to 1, got {sum(ws)}")

    @classmethod
    def parse(cls, text: str) -> "CriterionWeights":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ConfigurationError("expected three comma-separated criterion weights")
        return cls(*parts)


@dataclass(frozen=True)
class TargetGroup:
    """Nodes carrying one target concept at the candidates' level.

    desired_sign is +1 when an increase is the desired outcome and -1 when a
    reduction is (e.g. demand); deltas are multiplied by it so that desired
    movement always counts positively.
    """

    concept_id: str
    nodes: tuple[str, ...]
    desired_sign: int = 1

    def __post_init__(self):
        if self.desired_sign not in (-1, 1):
            raise ConfigurationError("desired_sign must be +1 or -1")
        if not self.nodes:
            raise ConfigurationError(f"target group {self.concept_id!r} has no nodes")


@dataclass(frozen=True)
class TargetSets:
    economic_nodes: tuple[str, ...]
    targets: tuple[TargetGroup, ...]

    def __post_init__(self):
        if not self.economic_nodes:
            raise ConfigurationError("economic node set must not be empty")
        if not self.targets:
            raise ConfigurationError("at least one target group is required")

    def check_disjoint(self, candidates: Sequence[str]) -> None:
        tangled = set(candidates) & (
            set(self.economic_nodes) | {n for t in self.targets for n in t.nodes}
        )
        if tangled:
            raise ConfigurationError(
                f"candidates overlap the target/economic sets: {sorted(tangled)}"
            )


DEFAULT_TARGET_SIGNS = {"A": 1, "B": 1, "C": -1}
DEFAULT_ECONOMIC_CONCEPT = "D"


def targets_from_hierarchy(
    hierarchy: CondensationHierarchy,
    level: str,
    economic_concept: str = DEFAULT_ECONOMIC_CONCEPT,
    target_signs: Mapping[str, int] = None,
) -> TargetSets:
    """Resolve the economic and target concepts to their nodes at a level."""
    target_signs = dict(target_signs or DEFAULT_TARGET_SIGNS)

    def descend(concept_id: str) -> tuple[str, ...]:
        kvs = hierarchy.children_of(concept_id)
        if level == "key_variable":
            return kvs
        if level == "variable":
            return tuple(v for kv in kvs for v in hierarchy.children_of(kv))
        raise ConfigurationError(f"targets are defined below concept level, not {level!r}")

    groups = tuple(
        TargetGroup(concept_id=c, nodes=descend(c), desired_sign=s)
        for c, s in target_signs.items()
    )
    return TargetSets(economic_nodes=descend(economic_concept), targets=groups)


def _signed_percent(values: np.ndarray) -> np.ndarray:
    """Percentages preserving sign; magnitudes sum to 100. All-zero stays zero."""
    total = np.abs(values).sum()
    if total == 0.0:
        return np.zeros_like(values)
    return values / total * 100.0


def _mean_delta(comparison: ScenarioComparison, nodes: Sequence[str]) -> float:
    missing = [n for n in nodes if n not in comparison.ids]
    if missing:
        raise ConfigurationError(f"comparison lacks nodes {missing[:5]}")
    return float(np.mean([comparison.delta_of(n) for n in nodes]))


def importance(
    candidates: Sequence[str],
    cw_by_id: Mapping[str, float],
    mentions_by_id: Mapping[str, int],
) -> dict[str, float]:
    """Mean of the cohort-normalized credibility-weight and mention percentages."""
    cw = np.array([float(cw_by_id[c]) for c in candidates])
    mentions = np.array([float(mentions_by_id.get(c, 0)) for c in candidates])
    if mentions.sum() == 0:
        raise DegenerateInputError("no candidate was ever mentioned")
    if cw.sum() == 0:
        raise DegenerateInputError("all candidate credibility weights are zero")
    pct = (cw / cw.sum() * 100.0 + mentions / mentions.sum() * 100.0) / 2.0
    return {c: float(v) for c, v in zip(candidates, pct)}


def feasibility(
    comparisons: Mapping[str, ScenarioComparison],
    targets: TargetSets,
) -> dict[str, float]:
    """Signed normalized mean economic delta per candidate.

    Economic improvement comes out positive, economic decline negative.
    """
    candidates = list(comparisons)
    targets.check_disjoint(candidates)
    raw = np.array(
        [_mean_delta(comparisons[c], targets.economic_nodes) for c in candidates]
    )
    pct = _signed_percent(raw)
    return {c: float(v) for c, v in zip(candidates, pct)}


def influence(
    comparisons: Mapping[str, ScenarioComparison],
    targets: TargetSets,
) -> tuple[dict[str, float], dict[str, dict[str, float]]]:
    """Per-candidate influence percentage plus the per-target sub-columns.

    For each target concept the candidates' sign-adjusted mean deltas are
    normalized to percentages; the concept columns are then averaged and the
    averages renormalized across candidates.
    """
    candidates = list(comparisons)
    targets.check_disjoint(candidates)
    columns: dict[str, np.ndarray] = {}
    for group in targets.targets:
        raw = np.array(
            [group.desired_sign * _mean_delta(comparisons[c], group.nodes) for c in candidates]
        )
        columns[group.concept_id] = _signed_percent(raw)
    stacked = np.vstack([columns[g.concept_id] for g in targets.targets])
    final = _signed_percent(stacked.mean(axis=0))
    sub = {
        c: {g.concept_id: float(columns[g.concept_id][k]) for g in targets.targets}
        for k, c in enumerate(candidates)
    }
    return {c: float(v) for c, v in zip(candidates, final)}, sub


@dataclass(frozen=True)
class AppropriatenessReport:
    """Ranked per-candidate criterion breakdown, in rank order."""

    rows: tuple[dict, ...]
    weights: CriterionWeights = field(default_factory=CriterionWeights)

    def ranking(self) -> tuple[str, ...]:
        return tuple(r["id"] for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "weights": {
                "importance": self.weights.w_importance,
                "feasibility": self.weights.w_feasibility,
                "influence": self.weights.w_influence,
            },
            "rows": [dict(r) for r in self.rows],
        }


def appropriateness(
    importance_pct: Mapping[str, float],
    feasibility_pct: Mapping[str, float],
    influence_pct: Mapping[str, float],
    weights: CriterionWeights = CriterionWeights(),
    sub_influence: Mapping[str, Mapping[str, float]] | None = None,
) -> AppropriatenessReport:
    """Combine the three criteria, normalize to percentages, and rank.

    The weighted raw scores are divided by the sum of their positive parts,
    so a fully positive cohort sums to 100. Ties break by influence, then
    importance, then id.
    """
    candidates = list(importance_pct)
    if set(candidates) != set(feasibility_pct) or set(candidates) != set(influence_pct):
        raise ConsistencyError("criteria were computed on different candidate cohorts")
    raw = {
        c: (
            weights.w_importance * importance_pct[c]
            + weights.w_feasibility * feasibility_pct[c]
            + weights.w_influence * influence_pct[c]
        )
        for c in candidates
    }
    positive_total = sum(v for v in raw.values() if v > 0)
    if positive_total <= 0:
        raise DegenerateInputError("no candidate has a positive weighted score")
    pct = {c: raw[c] / positive_total * 100.0 for c in candidates}
    order = sorted(
        candidates,
        key=lambda c: (-pct[c], -influence_pct[c], -importance_pct[c], c),
    )
    rows = []
    for rank, c in enumerate(order, start=1):
        row = {
            "id": c,
            "importance": float(importance_pct[c]),
            "feasibility": float(feasibility_pct[c]),
            "influence": float(influence_pct[c]),
            "appropriateness": float(pct[c]),
            "rank": rank,
        }
        if sub_influence and c in sub_influence:
            row["influence_by_target"] = {k: float(v) for k, v in sub_influence[c].items()}
        rows.append(row)
    return AppropriatenessReport(rows=tuple(rows), weights=weights)
