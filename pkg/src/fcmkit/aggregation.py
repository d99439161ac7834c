"""Credibility-weighted aggregation of same-level maps into a consensus map."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .centrality import EQUAL_WEIGHTS, PrioritizationWeights, fcm_credibility_weights
from .errors import ConfigurationError, ConsistencyError, DegenerateInputError
from .model import ConceptNode, FcmModel, Provenance, union_nodes


class CancellationWarning(UserWarning):
    """Contributing maps exactly cancelled on an edge of the aggregate."""


@dataclass(frozen=True)
class WeightedMapSet:
    """Same-level maps with nonnegative per-map credibility weights summing to 1."""

    maps: tuple[FcmModel, ...]
    cw: np.ndarray

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise DegenerateInputError("cannot aggregate an empty set of maps")
        levels = {m.provenance.level for m in maps}
        if len(levels) != 1:
            raise ConfigurationError(f"maps must share one level, got {sorted(levels)}")
        cw = np.asarray(self.cw, dtype=float)
        if cw.shape != (len(maps),):
            raise ConfigurationError("one credibility weight per map is required")
        if np.any(cw < 0):
            raise ConfigurationError("credibility weights must be nonnegative")
        if abs(cw.sum() - 1.0) > 1e-9:
            raise ConfigurationError(f"credibility weights must sum to 1, got {cw.sum()}")
        cw.setflags(write=False)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "cw", cw)

    @property
    def level(self) -> str:
        return self.maps[0].provenance.level

    @classmethod
    def from_maps(
        cls, maps: Sequence[FcmModel], pw: PrioritizationWeights = EQUAL_WEIGHTS
    ) -> "WeightedMapSet":
        """Weight each map by its normalized map consensus centrality."""
        maps = tuple(maps)
        return cls(maps=maps, cw=fcm_credibility_weights(maps, pw))


def augment(m: FcmModel, nodes: Sequence[ConceptNode]) -> FcmModel:
    """Reindex a map onto a superset node ordering; absent rows/columns are zero."""
    ids = [n.id for n in nodes]
    pos = {node_id: k for k, node_id in enumerate(ids)}
    for node in m.nodes:
        if node.id not in pos:
            raise ConsistencyError(f"node {node.id!r} of map {m.id!r} missing from the union")
    n = len(ids)
    w = np.zeros((n, n))
    idx = np.array([pos[node_id] for node_id in m.ids], dtype=int)
    w[np.ix_(idx, idx)] = m.weights
    return FcmModel(nodes=tuple(nodes), weights=w, provenance=m.provenance)


def aggregate(
    mapset: WeightedMapSet,
    *,
    stakeholder_id: str = "social",
    group_id: str = "aggregate",
) -> FcmModel:
    """Weighted sum of the augmented maps over the union of their nodes.

    Deterministic: nodes ordered by id, maps summed in the given order. The
    result's mention counts record how many contributing maps held each node.
    An edge present in some input but exactly cancelled in the sum is kept at
    zero and reported with a CancellationWarning.
    """
    nodes = union_nodes(mapset.maps)
    total = np.zeros((len(nodes), len(nodes)))
    support = np.zeros_like(total, dtype=bool)
    for weight, m in zip(mapset.cw, mapset.maps):
        aug = augment(m, nodes)
        support |= aug.weights != 0.0
        total = total + weight * aug.weights
    cancelled = support & (total == 0.0)
    if np.any(cancelled):
        ids = [n.id for n in nodes]
        i, j = np.argwhere(cancelled)[0]
        warnings.warn(
            f"{int(cancelled.sum())} edge(s) exactly cancelled in aggregation "
            f"(first: {ids[i]} -> {ids[j]})",
            CancellationWarning,
            stacklevel=2,
        )
    prov = Provenance(
        stakeholder_id=stakeholder_id,
        group_id=group_id,
        level=mapset.level,
        source_format="beta",
        sources=tuple(m.id for m in mapset.maps),
    )
    return FcmModel(nodes=nodes, weights=total, provenance=prov)
