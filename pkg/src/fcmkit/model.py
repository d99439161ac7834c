"""Weighted-digraph data model for fuzzy cognitive maps.

A model is an ordered list of concept nodes plus an N x N matrix of beta
values (row = cause, column = effect) and provenance describing where the
map came from. Models are immutable after construction; the persistence
format is a CSV adjacency matrix with a JSON sidecar for node metadata.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    ConfigurationError,
    ConsistencyError,
    DegenerateInputError,
    InputRangeError,
    ParseError,
    ShapeError,
    ValidationError,
)
from .twotuple import BLTS_13, TERMS_11, beta_from_numeric, normalize_to_blts, tuple_from_term

LEVELS = ("variable", "key_variable", "concept")
GROUPS = ("private_sector", "public", "experts", "managers", "farmers", "aggregate")
SOURCE_FORMATS = ("numeric_1", "numeric_10", "linguistic_13", "linguistic_11", "beta")

#: tokens accepted as "no influence" in any source format
_ZERO_TOKENS = {"", "0", "0.0", "-0", "null", "none"}


def level_above(level: str) -> str | None:
    """The next condensation level up, or None for the top level."""
    idx = LEVELS.index(level)
    return LEVELS[idx + 1] if idx + 1 < len(LEVELS) else None


@dataclass(frozen=True)
class ConceptNode:
    id: str
    label: str
    level: str
    mention_count: int = 0
    parent_group: str | None = None

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValidationError(f"unknown level {self.level!r} for node {self.id!r}")
        if self.mention_count < 0:
            raise ValidationError(f"negative mention count for node {self.id!r}")


@dataclass(frozen=True)
class Provenance:
    stakeholder_id: str
    group_id: str
    level: str
    source_format: str
    sources: tuple[str, ...] = ()

    def __post_init__(self):
        if self.group_id not in GROUPS:
            raise ValidationError(f"unknown stakeholder group {self.group_id!r}")
        if self.level not in LEVELS:
            raise ValidationError(f"unknown level {self.level!r}")
        if self.source_format not in SOURCE_FORMATS:
            raise ValidationError(f"unknown source format {self.source_format!r}")

    @property
    def model_id(self) -> str:
        return f"{self.stakeholder_id}-{self.level}"


@dataclass(frozen=True)
class FcmModel:
    """An immutable FCM: ordered nodes, beta weight matrix, provenance."""

    nodes: tuple[ConceptNode, ...]
    weights: np.ndarray
    provenance: Provenance
    max_beta: float = float(BLTS_13.g)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ShapeError(f"weight matrix must be square, got shape {w.shape}")
        if w.shape[0] != len(nodes):
            raise ShapeError(f"{len(nodes)} nodes but {w.shape[0]}x{w.shape[1]} matrix")
        ids = [n.id for n in nodes]
        if len(set(ids)) != len(ids):
            raise ValidationError("node ids must be unique within a model")
        if not np.all(np.isfinite(w)):
            raise ValidationError("weights must be finite")
        if np.any(np.abs(w) > self.max_beta + 1e-9):
            raise ValidationError(f"weights exceed the beta range [-{self.max_beta}, {self.max_beta}]")
        if w.shape[0] and np.any(np.diag(w) != 0.0):
            bad = ids[int(np.flatnonzero(np.diag(w))[0])]
            raise ValidationError(f"self-loop on node {bad!r}; diagonals must be zero")
        w.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", w)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return int(np.count_nonzero(self.weights))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    @property
    def id(self) -> str:
        return self.provenance.model_id

    def index(self, node_id: str) -> int:
        try:
            return self.ids.index(node_id)
        except ValueError:
            raise ConsistencyError(f"unknown node {node_id!r} in model {self.id!r}") from None

    def node(self, node_id: str) -> ConceptNode:
        return self.nodes[self.index(node_id)]

    def weight(self, cause: str, effect: str) -> float:
        return float(self.weights[self.index(cause), self.index(effect)])

    def with_mentions(self, counts: Mapping[str, int]) -> "FcmModel":
        nodes = tuple(replace(n, mention_count=int(counts.get(n.id, 0))) for n in self.nodes)
        return replace(self, nodes=nodes)


def density(m: FcmModel) -> float:
    """Edges over possible edges, E / (N * (N - 1))."""
    n = m.n_nodes
    if n < 2:
        raise DegenerateInputError("density needs at least 2 nodes")
    return m.n_edges / (n * (n - 1))


# ---------------------------------------------------------------------------
# cell conversion

def _parse_cell(token: str, source_format: str, row: int, col: int) -> float:
    """One CSV cell to a beta value, per the declared source format."""
    token = token.strip()
    if token.lower() in _ZERO_TOKENS:
        return 0.0
    if source_format in ("numeric_1", "numeric_10", "beta"):
        try:
            x = float(token)
        except ValueError:
            raise ParseError(f"expected a number, got {token!r}", row, col) from None
        try:
            if source_format == "numeric_1":
                return beta_from_numeric(x, BLTS_13)
            if source_format == "numeric_10":
                return beta_from_numeric(x / 10.0, BLTS_13)
            return BLTS_13.check_beta(x)
        except InputRangeError as exc:
            raise ParseError(str(exc), row, col) from None
    if source_format == "linguistic_13":
        try:
            return float(BLTS_13.index_of(token))
        except ConfigurationError:
            raise ParseError(f"unknown 13-term label {token!r}", row, col) from None
    if source_format == "linguistic_11":
        try:
            idx = TERMS_11.index_of(token)
        except ConfigurationError:
            raise ParseError(f"unknown 11-term label {token!r}", row, col) from None
        return normalize_to_blts(tuple_from_term(idx, TERMS_11), TERMS_11)
    raise ConfigurationError(f"unknown source format {source_format!r}")


def _format_cell(beta: float, fmt: str) -> str:
    if fmt == "beta":
        return repr(float(beta))
    if fmt == "numeric_1":
        return repr(float(beta) / BLTS_13.g)
    if fmt == "numeric_10":
        return repr(float(beta) * 10.0 / BLTS_13.g)
    raise ConfigurationError(f"cannot export in format {fmt!r} (lossless formats only)")


# ---------------------------------------------------------------------------
# persistence

def sidecar_path(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".json")


def load_fcm(
    path: str | Path,
    *,
    source_format: str | None = None,
    stakeholder_id: str | None = None,
    group_id: str | None = None,
    level: str | None = None,
) -> FcmModel:
    """Read a CSV adjacency matrix (plus JSON sidecar, if present) into a model.

    Keyword arguments override the sidecar; with no sidecar they must supply
    at least the source format, and node metadata is synthesized from the
    header row.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"no such file: {path}")
    meta: dict = {}
    side = sidecar_path(path)
    if side.exists():
        try:
            meta = json.loads(side.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed sidecar {side}: {exc}") from None
    prov_meta = dict(meta.get("provenance", {}))
    source_format = source_format or prov_meta.get("source_format")
    if source_format is None:
        raise ConfigurationError(f"no source format declared for {path}")
    if source_format not in SOURCE_FORMATS:
        raise ConfigurationError(f"unknown source format {source_format!r}")
    provenance = Provenance(
        stakeholder_id=stakeholder_id or prov_meta.get("stakeholder_id", path.stem),
        group_id=group_id or prov_meta.get("group_id", "aggregate"),
        level=level or prov_meta.get("level", "variable"),
        source_format=source_format,
        sources=tuple(prov_meta.get("sources", ())),
    )

    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 2:
        raise ShapeError(f"{path}: expected a header row of node ids")
    header = [c.strip() for c in rows[0][1:]]
    n = len(header)
    if len(rows) - 1 != n:
        raise ShapeError(f"{path}: {n} columns but {len(rows) - 1} data rows")
    w = np.zeros((n, n))
    for r, row in enumerate(rows[1:], start=1):
        if len(row) != n + 1:
            raise ShapeError(f"{path}: row {r} has {len(row) - 1} cells, expected {n}")
        if row[0].strip() != header[r - 1]:
            raise ShapeError(
                f"{path}: row label {row[0].strip()!r} does not match header order"
            )
        for c, token in enumerate(row[1:], start=1):
            w[r - 1, c - 1] = _parse_cell(token, source_format, r, c)
        if w[r - 1, r - 1] != 0.0:
            raise ValidationError(f"{path}: self-loop on node {header[r - 1]!r}")

    node_meta = {nm["id"]: nm for nm in meta.get("nodes", [])}
    nodes = []
    for node_id in header:
        nm = node_meta.get(node_id, {})
        nodes.append(
            ConceptNode(
                id=node_id,
                label=nm.get("label", node_id),
                level=nm.get("level", provenance.level),
                mention_count=int(nm.get("mention_count", 0)),
                parent_group=nm.get("parent_group"),
            )
        )
    return FcmModel(nodes=tuple(nodes), weights=w, provenance=provenance)


def _atomic_write(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_fcm(m: FcmModel, path: str | Path, fmt: str = "beta") -> None:
    """Write a model as CSV + JSON sidecar; beta format round-trips exactly."""
    path = Path(path)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(m.ids))
    for i, node in enumerate(m.nodes):
        writer.writerow([node.id] + [_format_cell(b, fmt) for b in m.weights[i]])
    _atomic_write(path, buf.getvalue())

    prov = m.provenance
    sidecar = {
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "level": n.level,
                "mention_count": n.mention_count,
                "parent_group": n.parent_group,
            }
            for n in m.nodes
        ],
        "provenance": {
            "stakeholder_id": prov.stakeholder_id,
            "group_id": prov.group_id,
            "level": prov.level,
            "source_format": fmt,
            "sources": list(prov.sources),
        },
    }
    _atomic_write(sidecar_path(path), json.dumps(sidecar, indent=2, sort_keys=True) + "\n")


def union_nodes(models: Iterable[FcmModel]) -> tuple[ConceptNode, ...]:
    """Union of the models' nodes ordered by id; metadata from first occurrence.

    mention_count on the result counts how many of the given models contain
    each node.
    """
    seen: dict[str, ConceptNode] = {}
    counts: dict[str, int] = {}
    for m in models:
        for n in m.nodes:
            counts[n.id] = counts.get(n.id, 0) + 1
            if n.id not in seen:
                seen[n.id] = n
            elif seen[n.id].level != n.level:
                raise ConsistencyError(
                    f"node {n.id!r} appears at levels {seen[n.id].level!r} and {n.level!r}"
                )
    return tuple(
        replace(seen[i], mention_count=counts[i]) for i in sorted(seen)
    )
