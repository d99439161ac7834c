"""Hierarchical condensation of a map onto its next level of grouping.

Each group of lower-level nodes becomes one higher-level node. For every
ordered pair of groups, the nodes touching a nonzero cross-edge get their
credibility weights renormalized within their group for that pair, and the
condensed weight is the sum of cross-edge weights scaled by both ends' new
credibility weights. Intra-group edges are dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .centrality import EQUAL_WEIGHTS, PrioritizationWeights, node_credibility_weights
from .errors import DegenerateInputError, HierarchyError, InvalidPairError
from .model import LEVELS, ConceptNode, FcmModel, Provenance, level_above


@dataclass(frozen=True)
class CondensationHierarchy:
    """A strict three-level tree: variables -> key variables -> concepts.

    Levels are inferred from the parent map; groups that (degenerately) have
    no children can be declared explicitly so lookups still resolve them.
    """

    parent: dict[str, str]
    labels: dict[str, str] = field(default_factory=dict)
    level_names: tuple[str, ...] = LEVELS
    declared_levels: dict[str, str] = field(default_factory=dict)
    _children: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)
    _level_of: dict[str, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if tuple(self.level_names) != LEVELS:
            raise HierarchyError(f"expected levels {LEVELS}, got {self.level_names}")
        children: dict[str, list[str]] = {}
        for child, parent in self.parent.items():
            if child == parent:
                raise HierarchyError(f"node {child!r} is its own parent")
            children.setdefault(parent, []).append(child)
        parents = set(self.parent.values())
        concepts = [p for p in parents if p not in self.parent]
        key_vars = [p for p in parents if p in self.parent]
        variables = [c for c in self.parent if c not in parents]
        level_of = {c: "concept" for c in concepts}
        level_of.update({k: "key_variable" for k in key_vars})
        level_of.update({v: "variable" for v in variables})
        for kv in key_vars:
            if self.parent[kv] not in concepts:
                raise HierarchyError(f"key variable {kv!r} has a non-concept parent")
        for node_id, level in self.declared_levels.items():
            if level not in LEVELS:
                raise HierarchyError(f"unknown level {level!r} declared for {node_id!r}")
            if node_id in children and level_of.get(node_id) != level:
                raise HierarchyError(
                    f"declared level {level!r} for {node_id!r} contradicts its children"
                )
            level_of[node_id] = level
        object.__setattr__(self, "_children", {g: tuple(ms) for g, ms in children.items()})
        object.__setattr__(self, "_level_of", level_of)

    def children_of(self, group_id: str) -> tuple[str, ...]:
        return self._children.get(group_id, ())

    def parent_of(self, node_id: str) -> str | None:
        return self.parent.get(node_id)

    def level_of(self, node_id: str) -> str:
        try:
            return self._level_of[node_id]
        except KeyError:
            raise HierarchyError(f"node {node_id!r} is not in the hierarchy") from None

    def ids_at(self, level: str) -> tuple[str, ...]:
        """Ids at a level, in document order; declared childless ids last."""
        out = dict.fromkeys(i for i, lvl in self._level_of.items() if lvl == level)
        if level == "concept":
            structural = dict.fromkeys(
                self.parent[k] for k in self.parent if k in self._children
            )
        elif level == "key_variable":
            structural = dict.fromkeys(
                k for k in dict.fromkeys(self.parent.values()) if k in self.parent
            )
        else:
            structural = dict.fromkeys(v for v in self.parent if v not in self._children)
        ordered = dict.fromkeys(
            i for i in structural if self._level_of.get(i) == level
        )
        ordered.update(out)
        return tuple(ordered)

    def label(self, node_id: str) -> str:
        return self.labels.get(node_id, node_id)

    def validate_model(self, m: FcmModel) -> None:
        """Every node of the model must have a parent group in the hierarchy."""
        if m.provenance.level == LEVELS[-1]:
            raise HierarchyError("concept-level maps have no level above to condense into")
        for node in m.nodes:
            if node.id not in self.parent:
                raise HierarchyError(f"node {node.id!r} has no parent group in the hierarchy")

    @classmethod
    def from_tree(cls, concepts: Sequence[dict]) -> "CondensationHierarchy":
        """Build from the nested document form: concepts -> key_variables -> variables.

        Childless concepts/key variables are tolerated (their level is
        recorded explicitly); drilling into them yields an empty batch.
        """
        parent: dict[str, str] = {}
        labels: dict[str, str] = {}
        declared: dict[str, str] = {}
        for concept in concepts:
            labels[concept["id"]] = concept.get("label", concept["id"])
            if not concept["key_variables"]:
                declared[concept["id"]] = "concept"
            for kv in concept["key_variables"]:
                parent[kv["id"]] = concept["id"]
                labels[kv["id"]] = kv.get("label", kv["id"])
                if not kv["variables"]:
                    declared[kv["id"]] = "key_variable"
                for var in kv["variables"]:
                    parent[var["id"]] = kv["id"]
                    labels[var["id"]] = var.get("label", var["id"])
        return cls(parent=parent, labels=labels, declared_levels=declared)

    @classmethod
    def from_json(cls, path: str | Path) -> "CondensationHierarchy":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls.from_tree(doc["concepts"])

    def to_tree(self) -> dict:
        concepts = []
        for cid in self.ids_at("concept"):
            kvs = []
            for kid in self.children_of(cid):
                kvs.append(
                    {
                        "id": kid,
                        "label": self.label(kid),
                        "variables": [
                            {"id": v, "label": self.label(v)} for v in self.children_of(kid)
                        ],
                    }
                )
            concepts.append({"id": cid, "label": self.label(cid), "key_variables": kvs})
        return {"levels": list(LEVELS), "concepts": concepts}


def renormalize_group_cw(cws: Mapping[str, float]) -> dict[str, float]:
    """Rescale the selected nodes' credibility weights to sum to 1."""
    if not cws:
        raise DegenerateInputError("no nodes selected for renormalization")
    total = float(sum(cws.values()))
    if total <= 0:
        raise DegenerateInputError("selected credibility weights sum to zero")
    return {node_id: w / total for node_id, w in cws.items()}


def condensed_weight(
    group_i: Sequence[str],
    group_j: Sequence[str],
    m: FcmModel,
    node_cw: Mapping[str, float],
) -> float:
    """Condensed weight between two disjoint groups of the model's nodes.

    Only nodes incident to a nonzero cross-edge for this specific pair take
    part; their credibility weights are renormalized within each side before
    the weighted sum. No cross-edges means weight 0.
    """
    gi = list(group_i)
    gj = list(group_j)
    if set(gi) & set(gj):
        raise InvalidPairError("groups overlap; condensed weights are defined between distinct groups")
    src = [m.index(n) for n in gi]
    dst = [m.index(n) for n in gj]
    sub = m.weights[np.ix_(src, dst)]
    if not np.any(sub):
        return 0.0
    active_src = np.any(sub != 0.0, axis=1)
    active_dst = np.any(sub != 0.0, axis=0)
    u = np.zeros(len(src))
    v = np.zeros(len(dst))
    src_cw = renormalize_group_cw(
        {gi[k]: node_cw[gi[k]] for k in range(len(gi)) if active_src[k]}
    )
    dst_cw = renormalize_group_cw(
        {gj[k]: node_cw[gj[k]] for k in range(len(gj)) if active_dst[k]}
    )
    for k, name in enumerate(gi):
        u[k] = src_cw.get(name, 0.0)
    for k, name in enumerate(gj):
        v[k] = dst_cw.get(name, 0.0)
    return float(u @ sub @ v)


def condense(
    m: FcmModel,
    hierarchy: CondensationHierarchy,
    pw: PrioritizationWeights = EQUAL_WEIGHTS,
) -> FcmModel:
    """Collapse a map one level up its hierarchy.

    Credibility weights are recomputed from the map being condensed, so
    condensing the result again uses fresh weights at the new level. Groups
    with no member present in the map are omitted.
    """
    hierarchy.validate_model(m)
    next_level = level_above(m.provenance.level)
    cw = node_credibility_weights(m, pw)
    members: dict[str, list[str]] = {}
    for node in m.nodes:
        members.setdefault(hierarchy.parent_of(node.id), []).append(node.id)
    groups = [g for g in hierarchy.ids_at(next_level) if g in members]
    n = len(groups)
    w = np.zeros((n, n))
    for a, ga in enumerate(groups):
        for b, gb in enumerate(groups):
            if a == b:
                continue
            w[a, b] = condensed_weight(members[ga], members[gb], m, cw)
    nodes = tuple(
        ConceptNode(
            id=g,
            label=hierarchy.label(g),
            level=next_level,
            parent_group=hierarchy.parent_of(g),
        )
        for g in groups
    )
    prov = Provenance(
        stakeholder_id=m.provenance.stakeholder_id,
        group_id=m.provenance.group_id,
        level=next_level,
        source_format="beta",
        sources=(m.id,),
    )
    return FcmModel(nodes=nodes, weights=w, provenance=prov)
