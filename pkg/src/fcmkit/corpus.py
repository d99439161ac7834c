"""Corpus manifests, the model store, and the synthetic corpus generator.

A corpus directory holds stakeholder map files plus a manifest describing
each one (who drew it, which group, which level, which input format) and a
hierarchy file. The generator fabricates a reproducible stakeholder corpus
at the documented scale: 35 maps over 186 variables condensable to 42 key
variables and 13 concepts, whose social maps carry exactly 2682 / 771 / 135
connections.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .condensation import CondensationHierarchy
from .errors import ConfigurationError, ConsistencyError, PipelineError, ValidationError
from .model import (
    GROUPS,
    LEVELS,
    SOURCE_FORMATS,
    FcmModel,
    load_fcm,
    _atomic_write,
)
from .twotuple import BLTS_13, TERMS_11, _round_half_away

ROLES = ("stakeholder", "group", "social")

#: stakeholder group sizes at the documented corpus scale
DEFAULT_GROUP_SIZES = (
    ("private_sector", 6),
    ("public", 8),
    ("experts", 7),
    ("managers", 7),
    ("farmers", 7),
)

PAPER_LEVEL_SIZES = (186, 42, 13)
PAPER_EDGE_TARGETS = (2682, 771, 135)
LEVEL_DENSITIES = (0.078, 0.448, 0.865)


def bundled_hierarchy() -> CondensationHierarchy:
    """The packaged three-level water-scarcity hierarchy (186/42/13 nodes)."""
    text = resources.files("fcmkit.data").joinpath("water_hierarchy.json").read_text("utf-8")
    return CondensationHierarchy.from_tree(json.loads(text)["concepts"])


def bundled_demo_path() -> Path:
    """Path of the packaged 13-node demo map (numeric [-1, 1] weights)."""
    return Path(str(resources.files("fcmkit.data").joinpath("demo13.csv")))


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    path: str
    stakeholder_id: str
    group_id: str
    level: str
    source_format: str
    role: str = "stakeholder"

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValidationError(f"unknown level {self.level!r}")
        if self.group_id not in GROUPS:
            raise ValidationError(f"unknown group {self.group_id!r}")
        if self.source_format not in SOURCE_FORMATS:
            raise ValidationError(f"unknown source format {self.source_format!r}")
        if self.role not in ROLES:
            raise ValidationError(f"unknown role {self.role!r}")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "path": self.path,
            "stakeholder_id": self.stakeholder_id,
            "group_id": self.group_id,
            "level": self.level,
            "source_format": self.source_format,
            "role": self.role,
        }


@dataclass
class CorpusManifest:
    root: Path
    entries: list[ManifestEntry] = field(default_factory=list)
    hierarchy_path: str = "hierarchy.json"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.root = Path(self.root)
        paths = [e.path for e in self.entries]
        if len(set(paths)) != len(paths):
            raise ValidationError("manifest paths must be unique")
        ids = [e.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValidationError("manifest entry ids must be unique")

    def entry(self, entry_id: str) -> ManifestEntry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise ConsistencyError(f"no manifest entry {entry_id!r}")

    def at(self, level: str, role: str | None = None, group: str | None = None):
        return [
            e
            for e in self.entries
            if e.level == level
            and (role is None or e.role == role)
            and (group is None or e.group_id == group)
        ]

    def replace_entry(self, entry_id: str, new: ManifestEntry) -> None:
        for k, e in enumerate(self.entries):
            if e.id == entry_id:
                self.entries[k] = new
                return
        raise ConsistencyError(f"no manifest entry {entry_id!r}")

    def add(self, entry: ManifestEntry) -> None:
        if any(e.id == entry.id for e in self.entries):
            raise ValidationError(f"duplicate manifest entry {entry.id!r}")
        self.entries.append(entry)

    def save(self, path: str | Path | None = None) -> Path:
        path = Path(path) if path else self.root / "manifest.json"
        doc = {
            "hierarchy": self.hierarchy_path,
            "metadata": self.metadata,
            "entries": [e.to_dict() for e in self.entries],
        }
        _atomic_write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return path

    @classmethod
    def load(cls, path: str | Path) -> "CorpusManifest":
        path = Path(path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        entries = [ManifestEntry(**e) for e in doc.get("entries", [])]
        return cls(
            root=path.parent,
            entries=entries,
            hierarchy_path=doc.get("hierarchy", "hierarchy.json"),
            metadata=doc.get("metadata", {}),
        )


class CorpusStore:
    """Read-only access to a corpus: models by id, social maps, mention counts."""

    def __init__(self, manifest: CorpusManifest):
        self.manifest = manifest
        self._cache: dict[str, FcmModel] = {}
        self._mentions: dict[str, dict[str, int]] = {}
        self._hierarchy: CondensationHierarchy | None = None

    @classmethod
    def open(cls, manifest_path: str | Path) -> "CorpusStore":
        return cls(CorpusManifest.load(manifest_path))

    @property
    def hierarchy(self) -> CondensationHierarchy:
        if self._hierarchy is None:
            path = self.manifest.root / self.manifest.hierarchy_path
            if not path.exists():
                raise PipelineError(f"hierarchy file missing: {path}")
            self._hierarchy = CondensationHierarchy.from_json(path)
        return self._hierarchy

    def model_ids(self) -> list[str]:
        return [e.id for e in self.manifest.entries]

    def get(self, model_id: str) -> FcmModel:
        if model_id not in self._cache:
            entry = self.manifest.entry(model_id)
            m = load_fcm(
                self.manifest.root / entry.path,
                source_format=entry.source_format,
                stakeholder_id=entry.stakeholder_id,
                group_id=entry.group_id,
                level=entry.level,
            )
            self._cache[model_id] = m.with_mentions(self.mention_counts(entry.level))
        return self._cache[model_id]

    def stakeholder_models(self, level: str, group: str | None = None) -> list[FcmModel]:
        return [self.get(e.id) for e in self.manifest.at(level, role="stakeholder", group=group)]

    def social(self, level: str) -> FcmModel:
        entries = self.manifest.at(level, role="social")
        if not entries:
            raise PipelineError(f"no social map at level {level!r}; run the aggregate stage")
        return self.get(entries[0].id)

    def group_model(self, group: str, level: str) -> FcmModel:
        entries = self.manifest.at(level, role="group", group=group)
        if not entries:
            raise PipelineError(f"no aggregated map for group {group!r} at level {level!r}")
        return self.get(entries[0].id)

    def mention_counts(self, level: str) -> dict[str, int]:
        """How many stakeholder maps at a level contain each node id."""
        if level not in self._mentions:
            counts: dict[str, int] = {}
            for e in self.manifest.at(level, role="stakeholder"):
                m = load_fcm(
                    self.manifest.root / e.path,
                    source_format=e.source_format,
                    stakeholder_id=e.stakeholder_id,
                    group_id=e.group_id,
                    level=e.level,
                )
                for node_id in m.ids:
                    counts[node_id] = counts.get(node_id, 0) + 1
            self._mentions[level] = counts
        return dict(self._mentions[level])


# ---------------------------------------------------------------------------
# synthetic corpus generation

def _generic_hierarchy(level_sizes: tuple[int, int, int]) -> CondensationHierarchy:
    n_var, n_kv, n_con = level_sizes
    if not n_var >= n_kv >= n_con >= 1:
        raise ConfigurationError(f"level sizes must be decreasing, got {level_sizes}")
    parent: dict[str, str] = {}
    concepts = [f"T{i + 1}" for i in range(n_con)]
    kvs = [f"T{i % n_con + 1}.{i + 1}" for i in range(n_kv)]
    for i, kv in enumerate(kvs):
        parent[kv] = concepts[i % n_con]
    for j in range(n_var):
        parent[f"{kvs[j % n_kv]}.{j + 1}"] = kvs[j % n_kv]
    return CondensationHierarchy(parent=parent)


def _format_token(w: float, fmt: str) -> str:
    """Render one synthetic weight in a stakeholder input format."""
    if w == 0.0:
        return "0"
    if fmt == "numeric_1":
        return repr(round(float(w), 4))
    if fmt == "numeric_10":
        return repr(round(float(w) * 10.0, 4))
    if fmt == "linguistic_13":
        return BLTS_13.label(_round_half_away(6.0 * w))
    if fmt == "linguistic_11":
        return TERMS_11.label(_round_half_away(5.0 * w))
    raise ConfigurationError(f"cannot render format {fmt!r}")


def _write_raw_map(
    path: Path,
    node_ids: list[str],
    edges: dict[tuple[str, str], float],
    fmt: str,
    meta: dict,
    hierarchy: CondensationHierarchy,
) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + node_ids)
    for a in node_ids:
        writer.writerow([a] + [_format_token(edges.get((a, b), 0.0), fmt) for b in node_ids])
    _atomic_write(path, buf.getvalue())
    sidecar = {
        "nodes": [
            {
                "id": n,
                "label": hierarchy.label(n),
                "level": "variable",
                "mention_count": 0,
                "parent_group": hierarchy.parent_of(n),
            }
            for n in node_ids
        ],
        "provenance": dict(meta, source_format=fmt, sources=[]),
    }
    _atomic_write(path.with_suffix(".json"), json.dumps(sidecar, indent=2, sort_keys=True) + "\n")


def _pick_supports(
    rng: np.random.Generator,
    hierarchy: CondensationHierarchy,
    edge_targets: tuple[int, int, int],
) -> list[tuple[str, str]]:
    """Choose directed variable-level edges whose projections hit the targets.

    Works top-down: a fixed number of ordered concept pairs, then key-variable
    pairs refining them, then variable pairs refining those. All edges cross
    key-variable (and concept) boundaries so each condensation level keeps an
    exact, known connection count.
    """
    e_var, e_kv, e_con = edge_targets
    concepts = list(hierarchy.ids_at("concept"))
    kv_of = {c: list(hierarchy.children_of(c)) for c in concepts}
    var_of = {k: list(hierarchy.children_of(k)) for c in concepts for k in kv_of[c]}

    con_pairs_all = [(a, b) for a in concepts for b in concepts if a != b]
    if not 1 <= e_con <= len(con_pairs_all):
        raise ConfigurationError(f"cannot place {e_con} concept edges on {len(concepts)} concepts")

    for _ in range(64):
        idx = rng.choice(len(con_pairs_all), size=e_con, replace=False)
        con_pairs = [con_pairs_all[i] for i in sorted(idx)]
        capacity = sum(len(kv_of[a]) * len(kv_of[b]) for a, b in con_pairs)
        if capacity >= e_kv:
            break
    else:
        raise ConfigurationError("could not satisfy the key-variable edge target")

    kv_pairs: list[tuple[str, str]] = []
    pool: list[tuple[str, str]] = []
    for a, b in con_pairs:
        options = [(ka, kb) for ka in kv_of[a] for kb in kv_of[b]]
        first = options[int(rng.integers(len(options)))]
        kv_pairs.append(first)
        pool.extend(o for o in options if o != first)
    extra = rng.choice(len(pool), size=e_kv - len(kv_pairs), replace=False)
    kv_pairs.extend(pool[i] for i in sorted(extra))

    var_capacity = sum(len(var_of[a]) * len(var_of[b]) for a, b in kv_pairs)
    if var_capacity < e_var:
        raise ConfigurationError("could not satisfy the variable edge target")

    var_pairs: list[tuple[str, str]] = []
    var_pool: list[tuple[str, str]] = []
    uncovered = {v for vs in var_of.values() for v in vs}
    for ka, kb in kv_pairs:
        options = [(va, vb) for va in var_of[ka] for vb in var_of[kb]]
        preferred = [o for o in options if o[0] in uncovered or o[1] in uncovered]
        choice_from = preferred or options
        first = choice_from[int(rng.integers(len(choice_from)))]
        var_pairs.append(first)
        uncovered.discard(first[0])
        uncovered.discard(first[1])
        var_pool.extend(o for o in options if o != first)
    # prefer edges touching still-uncovered variables, then fill randomly
    rng.shuffle(var_pool)
    var_pool.sort(key=lambda p: not (p[0] in uncovered or p[1] in uncovered))
    taken = set(var_pairs)
    for pair in var_pool:
        if len(var_pairs) >= e_var:
            break
        if pair in taken:
            continue
        var_pairs.append(pair)
        taken.add(pair)
        uncovered.discard(pair[0])
        uncovered.discard(pair[1])
    if len(var_pairs) != e_var:
        raise ConfigurationError("variable edge pool exhausted")
    return var_pairs


def generate_synthetic_corpus(
    out_dir: str | Path,
    seed: int = 1,
    n_maps: int = 35,
    level_sizes: tuple[int, int, int] = PAPER_LEVEL_SIZES,
    edge_targets: tuple[int, int, int] | None = None,
) -> CorpusManifest:
    """Write a reproducible stakeholder corpus and return its manifest.

    With the default sizes the packaged hierarchy is used and the social
    maps' connection counts land exactly on 2682 / 771 / 135. Identical
    arguments produce byte-identical files.
    """
    out_dir = Path(out_dir)
    level_sizes = tuple(level_sizes)
    if level_sizes == PAPER_LEVEL_SIZES:
        hierarchy = bundled_hierarchy()
    else:
        hierarchy = _generic_hierarchy(level_sizes)
    if edge_targets is None:
        if level_sizes == PAPER_LEVEL_SIZES:
            edge_targets = PAPER_EDGE_TARGETS
        else:
            derived = [
                max(n - 1, int(round(d * n * (n - 1))))
                for n, d in zip(level_sizes, LEVEL_DENSITIES)
            ]
            # refinement needs at least one lower-level edge per higher edge
            derived[1] = max(derived[1], derived[2])
            derived[0] = max(derived[0], derived[1])
            edge_targets = tuple(derived)
    e_var, e_kv, e_con = edge_targets
    if not e_var >= e_kv >= e_con >= 1:
        raise ConfigurationError(
            f"edge targets must decrease with level, got {tuple(edge_targets)}"
        )

    rng = np.random.default_rng(seed)
    edges = _pick_supports(rng, hierarchy, tuple(edge_targets))

    # per-edge consensus weight and the maps each edge appears in
    signs = np.where(rng.random(len(edges)) < 0.55, 1.0, -1.0)
    bases = rng.uniform(0.2, 0.9, size=len(edges))
    per_map_edges: list[dict[tuple[str, str], float]] = [dict() for _ in range(n_maps)]
    for k, edge in enumerate(edges):
        multiplicity = 1 + int(rng.binomial(3, 0.35))
        owners = rng.choice(n_maps, size=min(multiplicity, n_maps), replace=False)
        for owner in sorted(owners.tolist()):
            noisy = float(np.clip(bases[k] + rng.normal(0.0, 0.06), 0.12, 0.98))
            per_map_edges[owner][edge] = signs[k] * noisy

    # every variable appears in at least one map, even if isolated there
    per_map_nodes: list[set[str]] = [set() for _ in range(n_maps)]
    for owner, emap in enumerate(per_map_edges):
        for a, b in emap:
            per_map_nodes[owner].update((a, b))
    present = set().union(*per_map_nodes) if per_map_nodes else set()
    for var in hierarchy.ids_at("variable"):
        if var not in present:
            per_map_nodes[int(rng.integers(n_maps))].add(var)

    # group assignment
    if n_maps == sum(size for _, size in DEFAULT_GROUP_SIZES):
        group_sizes = DEFAULT_GROUP_SIZES
    else:
        names = [g for g, _ in DEFAULT_GROUP_SIZES]
        group_sizes = tuple(
            (g, n_maps // len(names) + (1 if i < n_maps % len(names) else 0))
            for i, g in enumerate(names)
        )
    group_of: list[str] = []
    for group, size in group_sizes:
        group_of.extend([group] * size)

    formats = ("numeric_1", "numeric_10", "linguistic_13", "linguistic_11")
    fmt_of = [formats[int(rng.integers(len(formats)))] for _ in range(n_maps)]

    width = max(2, len(str(n_maps)))
    manifest = CorpusManifest(
        root=out_dir,
        hierarchy_path="hierarchy.json",
        metadata={
            "seed": seed,
            "n_maps": n_maps,
            "level_sizes": list(level_sizes),
            "edge_targets": list(edge_targets),
        },
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    _atomic_write(
        out_dir / "hierarchy.json", json.dumps(hierarchy.to_tree(), indent=2) + "\n"
    )
    for k in range(n_maps):
        sid = f"s{k + 1:0{width}d}"
        node_ids = sorted(per_map_nodes[k])
        path = out_dir / "raw" / f"{sid}-variable.csv"
        meta = {
            "stakeholder_id": sid,
            "group_id": group_of[k],
            "level": "variable",
        }
        _write_raw_map(path, node_ids, per_map_edges[k], fmt_of[k], meta, hierarchy)
        manifest.add(
            ManifestEntry(
                id=f"{sid}-variable",
                path=f"raw/{sid}-variable.csv",
                stakeholder_id=sid,
                group_id=group_of[k],
                level="variable",
                source_format=fmt_of[k],
                role="stakeholder",
            )
        )
    manifest.save()
    return manifest
