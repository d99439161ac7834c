"""Node and map centralities, the consensus measure, and credibility weights.

Shortest paths treat each nonzero edge as having length 1 / |beta|, so a
stronger influence is a shorter distance; paths follow edge direction.
Unreachable pairs are simply excluded (closeness of an unreached node is 0).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DegenerateInputError
from .model import FcmModel
from .twotuple import BLTS_13, defuzzify


@dataclass(frozen=True)
class PrioritizationWeights:
    """Mixing weights for degree / closeness / betweenness; must sum to 1."""

    b_degree: float = 1.0 / 3.0
    b_closeness: float = 1.0 / 3.0
    b_betweenness: float = 1.0 / 3.0

    def __post_init__(self):
        for name, b in (
            ("b_degree", self.b_degree),
            ("b_closeness", self.b_closeness),
            ("b_betweenness", self.b_betweenness),
        ):
            if b < 0:
                raise ConfigurationError(f"{name} must be nonnegative, got {b}")
        total = self.b_degree + self.b_closeness + self.b_betweenness
        if abs(total - 1.0) > 1e-9:
            raise ConfigurationError(f"prioritization weights must sum to 1, got {total}")

    @classmethod
    def parse(cls, text: str) -> "PrioritizationWeights":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ConfigurationError("expected three comma-separated weights")
        return cls(*parts)


EQUAL_WEIGHTS = PrioritizationWeights()


@dataclass(frozen=True)
class MapCentrality:
    degree: float
    closeness: float
    betweenness: float
    consensus: float


@dataclass(frozen=True)
class CentralityReport:
    """Per-node centrality columns plus the map-level indices."""

    ids: tuple[str, ...]
    degree: np.ndarray
    closeness: np.ndarray
    betweenness: np.ndarray
    ccm: np.ndarray
    credibility: np.ndarray
    map_level: MapCentrality | None
    weights: PrioritizationWeights = field(default=EQUAL_WEIGHTS)

    def row(self, node_id: str) -> dict:
        i = self.ids.index(node_id)
        return {
            "id": node_id,
            "degree": float(self.degree[i]),
            "closeness": float(self.closeness[i]),
            "betweenness": float(self.betweenness[i]),
            "ccm": float(self.ccm[i]),
            "credibility_weight": float(self.credibility[i]),
        }

    def rows(self) -> list[dict]:
        return [self.row(i) for i in self.ids]


# ---------------------------------------------------------------------------
# shortest-path core

def _adjacency(m: FcmModel, reverse: bool = False) -> list[list[tuple[int, float]]]:
    n = m.n_nodes
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    rows, cols = np.nonzero(m.weights)
    for i, j in zip(rows.tolist(), cols.tolist()):
        length = 1.0 / abs(float(m.weights[i, j]))
        if reverse:
            adj[j].append((i, length))
        else:
            adj[i].append((j, length))
    return adj


def _dijkstra(adj: list[list[tuple[int, float]]], source: int):
    """Distances, shortest-path counts, predecessor lists, settled order."""
    n = len(adj)
    dist = [np.inf] * n
    sigma = [0.0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    dist[source] = 0.0
    sigma[source] = 1.0
    done = [False] * n
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        for v, length in adj[u]:
            alt = d + length
            if alt < dist[v]:
                dist[v] = alt
                sigma[v] = sigma[u]
                preds[v] = [u]
                heapq.heappush(heap, (alt, v))
            elif alt == dist[v] and not done[v]:
                sigma[v] += sigma[u]
                preds[v].append(u)
    return dist, sigma, preds, order


# ---------------------------------------------------------------------------
# per-node measures

def degree_vector(m: FcmModel) -> np.ndarray:
    """Sum of absolute incoming and outgoing beta weights per node."""
    w = np.abs(m.weights)
    return w.sum(axis=1) + w.sum(axis=0)


def degree_centrality(m: FcmModel, node_id: str) -> float:
    return float(degree_vector(m)[m.index(node_id)])


def closeness_vector(m: FcmModel) -> np.ndarray:
    """Reciprocal of the total shortest-path distance from nodes that reach each node."""
    n = m.n_nodes
    radj = _adjacency(m, reverse=True)
    out = np.zeros(n)
    for i in range(n):
        dist, _, _, _ = _dijkstra(radj, i)
        total = sum(d for j, d in enumerate(dist) if j != i and np.isfinite(d))
        out[i] = 1.0 / total if total > 0 else 0.0
    return out


def closeness_centrality(m: FcmModel, node_id: str) -> float:
    return float(closeness_vector(m)[m.index(node_id)])


def betweenness_vector(m: FcmModel) -> np.ndarray:
    """Fraction of shortest paths passing through each node, all (s, t) pairs."""
    n = m.n_nodes
    adj = _adjacency(m)
    out = np.zeros(n)
    for s in range(n):
        _, sigma, preds, order = _dijkstra(adj, s)
        delta = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                out[w] += delta[w]
    return out


def betweenness_centrality(m: FcmModel, node_id: str) -> float:
    return float(betweenness_vector(m)[m.index(node_id)])


def consensus_centrality(
    degree, closeness, betweenness, pw: PrioritizationWeights = EQUAL_WEIGHTS
):
    """Weighted average of the three measures (scalar or elementwise)."""
    return pw.b_degree * degree + pw.b_closeness * closeness + pw.b_betweenness * betweenness


# ---------------------------------------------------------------------------
# map-level measures

def _centralization(values: np.ndarray, denom: float) -> float:
    return float((values.max() - values).sum() / denom)


def map_centrality(m: FcmModel, pw: PrioritizationWeights = EQUAL_WEIGHTS) -> MapCentrality:
    """Map-level centralization indices and their consensus combination."""
    n = m.n_nodes
    if n < 4:
        raise DegenerateInputError("map centrality needs at least 4 nodes")
    deg = degree_vector(m)
    clo = closeness_vector(m)
    bet = betweenness_vector(m)
    cen_d = _centralization(deg, n - 1)
    cen_c = _centralization(clo, (n - 1) * (n - 2) * (n - 3))
    cen_b = _centralization(bet, n - 1)
    return MapCentrality(
        degree=cen_d,
        closeness=cen_c,
        betweenness=cen_b,
        consensus=float(consensus_centrality(cen_d, cen_c, cen_b, pw)),
    )


# ---------------------------------------------------------------------------
# credibility weights

def credibility_from_ccm(ccm: np.ndarray, g: int = BLTS_13.g) -> np.ndarray:
    """Normalized defuzzified consensus centralities; nonnegative, sums to 1.

    Raw consensus values can exceed the beta range (degree sums routinely
    do), so the vector is first scaled to put its maximum at g. The scaling
    preserves ordering and the argmax, and drops out of the normalization.
    """
    ccm = np.asarray(ccm, dtype=float)
    if ccm.size == 0 or np.all(ccm == 0.0):
        raise DegenerateInputError("all consensus centralities are zero")
    if np.any(ccm < 0):
        raise DegenerateInputError("consensus centralities must be nonnegative")
    scaled = np.clip(ccm * (g / ccm.max()), 0.0, float(g))
    crisp = np.array([defuzzify(b) for b in scaled])
    return crisp / crisp.sum()


def node_credibility_weights(
    m: FcmModel, pw: PrioritizationWeights = EQUAL_WEIGHTS
) -> dict[str, float]:
    """Per-node credibility weights from the model's consensus centralities."""
    ccm = consensus_centrality(degree_vector(m), closeness_vector(m), betweenness_vector(m), pw)
    cw = credibility_from_ccm(ccm)
    return {node_id: float(w) for node_id, w in zip(m.ids, cw)}


def fcm_credibility_weights(
    models, pw: PrioritizationWeights = EQUAL_WEIGHTS
) -> np.ndarray:
    """Per-map weights: each map's consensus centrality over the total."""
    models = list(models)
    if not models:
        raise DegenerateInputError("no maps to weight")
    ccm = np.array([map_centrality(m, pw).consensus for m in models])
    total = ccm.sum()
    if total <= 0:
        raise DegenerateInputError("all map consensus centralities are zero")
    return ccm / total


def compute_report(m: FcmModel, pw: PrioritizationWeights = EQUAL_WEIGHTS) -> CentralityReport:
    """All per-node columns plus map-level indices (map level needs N >= 4)."""
    deg = degree_vector(m)
    clo = closeness_vector(m)
    bet = betweenness_vector(m)
    ccm = consensus_centrality(deg, clo, bet, pw)
    cred = credibility_from_ccm(ccm)
    map_level = map_centrality(m, pw) if m.n_nodes >= 4 else None
    return CentralityReport(
        ids=m.ids,
        degree=deg,
        closeness=clo,
        betweenness=bet,
        ccm=ccm,
        credibility=cred,
        map_level=map_level,
        weights=pw,
    )
