"""HTTP facade for the scenario explorer.

Serves a loaded corpus read-only under /api/v1: model browsing, centrality
reports, on-demand simulation (synchronous for small maps, job-based for
large ones), baseline comparison, drill-down, and ranking. Responses are
pure functions of (corpus, request); completed results are cached by
(model id, scenario hash) and shared across requests.
"""

from __future__ import annotations

import hashlib
import json
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Mapping

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import simulation as sim
from .appropriateness import CriterionWeights
from .centrality import EQUAL_WEIGHTS, compute_report
from .corpus import CorpusStore
from .errors import (
    ConfigurationError,
    ConsistencyError,
    DegenerateInputError,
    FcmError,
    HierarchyError,
    InputRangeError,
    ParseError,
    PipelineError,
    ShapeError,
    UsageError,
    ValidationError,
)
from .model import FcmModel, density
from .pipeline import build_spec, rank_report

#: models at or above this node count run as polled jobs instead of inline
ASYNC_NODE_THRESHOLD = 100

_STATUS_OF = (
    (UsageError, 422),
    ((ConsistencyError, HierarchyError, PipelineError), 404),
    (
        (
            ConfigurationError,
            InputRangeError,
            ParseError,
            ShapeError,
            ValidationError,
            DegenerateInputError,
        ),
        400,
    ),
)


class ScenarioBody(BaseModel):
    preset: str | None = None
    uniform: float = 0.5
    initial_state: dict[str, float] | None = None
    clamps: dict[str, float] = Field(default_factory=dict)
    squash_lambda: float = 1.0
    tolerance: float = 1e-5
    max_iterations: int = 100


class SimulateRequest(ScenarioBody):
    model_id: str


class CompareRequest(BaseModel):
    model_id: str
    policy: ScenarioBody
    baseline: ScenarioBody | None = None


class DrillRequest(BaseModel):
    concept_id: str
    clamp_value: float = 1.0
    squash_lambda: float = 1.0
    tolerance: float = 1e-5
    max_iterations: int = 100


class RankRequest(BaseModel):
    concept_id: str | None = None
    key_variable_id: str | None = None
    weights: tuple[float, float, float] | None = None
    clamp_value: float = 1.0
    squash_lambda: float = 1.0
    tolerance: float = 1e-5
    max_iterations: int = 100


class SessionState:
    """Shared corpus plus caches; the only mutable structures carry locks."""

    def __init__(self, store: CorpusStore):
        self.store = store
        self.results: dict[tuple[str, str], sim.SimulationResult] = {}
        self.centrality: dict[str, dict] = {}
        self.jobs: dict[str, dict] = {}
        self.lock = threading.Lock()
        self.executor = ThreadPoolExecutor(max_workers=2)

    def resolve_spec(self, m: FcmModel, body: ScenarioBody) -> sim.ScenarioSpec:
        if body.initial_state is not None:
            return sim.ScenarioSpec(
                initial_state=body.initial_state,
                clamps=body.clamps,
                squash_lambda=body.squash_lambda,
                tolerance=body.tolerance,
                max_iterations=body.max_iterations,
            )
        return build_spec(
            m,
            preset=body.preset,
            uniform=body.uniform,
            clamps=body.clamps,
            squash_lambda=body.squash_lambda,
            tolerance=body.tolerance,
            max_iterations=body.max_iterations,
        )

    @staticmethod
    def spec_hash(model_id: str, spec: sim.ScenarioSpec) -> str:
        payload = json.dumps({"model": model_id, **spec.canonical()}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def run_cached(self, model_id: str, spec: sim.ScenarioSpec) -> sim.SimulationResult:
        key = (model_id, self.spec_hash(model_id, spec))
        with self.lock:
            cached = self.results.get(key)
        if cached is not None:
            return cached
        result = sim.run(self.store.get(model_id), spec)
        with self.lock:
            self.results.setdefault(key, result)
        return result

    def centrality_doc(self, model_id: str) -> dict:
        with self.lock:
            cached = self.centrality.get(model_id)
        if cached is not None:
            return cached
        m = self.store.get(model_id)
        report = compute_report(m, EQUAL_WEIGHTS)
        doc = {
            "model_id": model_id,
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
        with self.lock:
            self.centrality.setdefault(model_id, doc)
        return doc


def _model_summary(entry, m: FcmModel) -> dict:
    return {
        "id": entry.id,
        "level": entry.level,
        "group": entry.group_id,
        "role": entry.role,
        "n_nodes": m.n_nodes,
        "n_edges": m.n_edges,
        "density": density(m) if m.n_nodes >= 2 else None,
    }


def _model_detail(state: SessionState, entry, m: FcmModel) -> dict:
    hierarchy = state.store.hierarchy
    nodes = []
    for n in m.nodes:
        children: tuple[str, ...] = ()
        if n.id in hierarchy.parent or hierarchy.children_of(n.id):
            children = hierarchy.children_of(n.id)
        nodes.append(
            {
                "id": n.id,
                "label": n.label,
                "level": n.level,
                "parent_group": n.parent_group or hierarchy.parent.get(n.id),
                "mention_count": n.mention_count,
                "children": list(children),
            }
        )
    edges = [
        {"source": m.ids[i], "target": m.ids[j], "beta": float(m.weights[i, j])}
        for i, j in zip(*m.weights.nonzero())
    ]
    doc = _model_summary(entry, m)
    doc["nodes"] = nodes
    doc["edges"] = edges
    return doc


def create_app(manifest_path: str | Path, frontend_dir: str | Path | None = None) -> FastAPI:
    """Build the API app over one corpus manifest."""
    store = CorpusStore.open(manifest_path)
    state = SessionState(store)

    app = FastAPI(
        title="fcmkit scenario service",
        version="1.0",
        openapi_url="/api/v1/spec",
        docs_url="/api/v1/docs",
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(FcmError)
    async def fcm_error_handler(_: Request, exc: FcmError):
        for types, status in _STATUS_OF:
            if isinstance(exc, types):
                return JSONResponse(status_code=status, content={"detail": str(exc)})
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/api/v1/models")
    def list_models():
        out = []
        for entry in store.manifest.entries:
            out.append(_model_summary(entry, store.get(entry.id)))
        return {"models": out}

    @app.get("/api/v1/models/{model_id}")
    def get_model(model_id: str):
        entry = store.manifest.entry(model_id)
        return _model_detail(state, entry, store.get(model_id))

    @app.get("/api/v1/models/{model_id}/centrality")
    def get_centrality(model_id: str):
        store.manifest.entry(model_id)
        return state.centrality_doc(model_id)

    @app.get("/api/v1/hierarchy")
    def get_hierarchy():
        return store.hierarchy.to_tree()

    @app.get("/api/v1/presets")
    def get_presets():
        return sim.load_presets()

    def _run_job(job_id: str, model_id: str, spec: sim.ScenarioSpec):
        try:
            result = state.run_cached(model_id, spec)
            doc = {"model_id": model_id, **result.to_dict()}
            with state.lock:
                state.jobs[job_id].update(status="done", result=doc)
        except Exception as exc:  # surfaced through job status
            with state.lock:
                state.jobs[job_id].update(status="error", error=str(exc))

    @app.post("/api/v1/simulate")
    def simulate(req: SimulateRequest):
        m = store.get(req.model_id)
        spec = state.resolve_spec(m, req)
        if m.n_nodes < ASYNC_NODE_THRESHOLD:
            result = state.run_cached(req.model_id, spec)
            return {"model_id": req.model_id, **result.to_dict()}
        job_id = state.spec_hash(req.model_id, spec)
        poll = f"/api/v1/jobs/{job_id}"
        with state.lock:
            job = state.jobs.get(job_id)
            if job is not None and job["status"] == "pending":
                return JSONResponse(
                    status_code=409,
                    content={"detail": "job already submitted", "job_id": job_id, "poll": poll},
                )
            if job is not None:
                return {"job_id": job_id, "status": job["status"], "poll": poll}
            state.jobs[job_id] = {"status": "pending"}
        state.executor.submit(_run_job, job_id, req.model_id, spec)
        return JSONResponse(
            status_code=202, content={"job_id": job_id, "status": "pending", "poll": poll}
        )

    @app.get("/api/v1/jobs/{job_id}")
    def job_status(job_id: str):
        with state.lock:
            job = state.jobs.get(job_id)
            if job is None:
                return JSONResponse(status_code=404, content={"detail": "unknown job"})
            doc = {"job_id": job_id, **job}
        return doc

    @app.post("/api/v1/compare")
    def compare(req: CompareRequest):
        m = store.get(req.model_id)
        policy_spec = state.resolve_spec(m, req.policy)
        if req.baseline is not None:
            base_spec = state.resolve_spec(m, req.baseline)
        else:
            base_body = req.policy.model_copy(update={"clamps": {}})
            base_spec = state.resolve_spec(m, base_body)
        baseline = state.run_cached(req.model_id, base_spec)
        policy = state.run_cached(req.model_id, policy_spec)
        comparison = sim.compare(baseline, policy)
        return {
            "model_id": req.model_id,
            "baseline_iterations": baseline.iterations,
            "policy_iterations": policy.iterations,
            **comparison.to_dict(),
        }

    @app.post("/api/v1/drill")
    def drill(req: DrillRequest):
        batch = sim.drill_down(
            req.concept_id,
            store.hierarchy,
            store,
            clamp_value=req.clamp_value,
            squash_lambda=req.squash_lambda,
            tolerance=req.tolerance,
            max_iterations=req.max_iterations,
        )
        return {
            "concept_id": batch.concept_id,
            "key_variables": [
                {"id": kv, "comparison": c.to_dict()} for kv, c in batch.key_variable_results
            ],
            "variables": {
                kv: [{"id": v, "comparison": c.to_dict()} for v, c in results]
                for kv, results in batch.variable_results.items()
            },
        }

    @app.post("/api/v1/rank")
    def rank(req: RankRequest):
        weights = CriterionWeights(*req.weights) if req.weights else CriterionWeights()
        report = rank_report(
            store,
            concept_id=req.concept_id,
            key_variable_id=req.key_variable_id,
            weights=weights,
            clamp_value=req.clamp_value,
            squash_lambda=req.squash_lambda,
            tolerance=req.tolerance,
            max_iterations=req.max_iterations,
        )
        return report.to_dict()

    if frontend_dir:
        frontend_dir = Path(frontend_dir)
        if frontend_dir.exists():
            from fastapi.staticfiles import StaticFiles

            app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="explorer")

    return app
