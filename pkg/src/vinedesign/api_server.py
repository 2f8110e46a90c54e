"""HTTP API for the designer UI.

Stateless except for an in-memory job table used by long-running workspace
scans; jobs stream partial sample sets so the UI can paint progressively and
are evicted an hour after completion. Solve requests run synchronously up to
a time budget, then degrade to a polling job (202).
"""
from __future__ import annotations

import math
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .design import Region, tradeoff_sweep, workspace_analysis
from .errors import ValidationError
from .kinematics import Design
from .problem_io import (
    build_solution_document,
    problem_from_dict,
    solution_to_dict,
    solve_problem,
)

JOB_TTL_SECONDS = 3600.0
_STATUS_ORDER = {"pending": 0, "running": 1, "done": 2, "failed": 2}


@dataclass
class JobRecord:
    job_id: str
    kind: str
    status: str = "pending"
    progress: float = 0.0
    result: dict | None = None
    error: str | None = None
    finished_at: float | None = None
    created_at: float = field(default_factory=time.monotonic)

    def advance(self, status: str) -> None:
        if _STATUS_ORDER[status] < _STATUS_ORDER[self.status]:
            raise RuntimeError(f"job status cannot move {self.status} -> {status}")
        self.status = status
        if status in ("done", "failed"):
            self.finished_at = time.monotonic()

    def to_dict(self) -> dict:
        out = {
            "jobId": self.job_id,
            "kind": self.kind,
            "status": self.status,
            "progress": round(self.progress, 4),
        }
        if self.result is not None:
            out["result"] = self.result
        if self.error is not None:
            out["error"] = self.error
        return out


class JobTable:
    def __init__(self):
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()

    def create(self, kind: str) -> JobRecord:
        record = JobRecord(job_id=uuid.uuid4().hex, kind=kind)
        with self._lock:
            self._evict()
            self._jobs[record.job_id] = record
        return record

    def get(self, job_id: str) -> JobRecord | None:
        with self._lock:
            self._evict()
            return self._jobs.get(job_id)

    def update(self, job_id: str, **changes) -> None:
        with self._lock:
            record = self._jobs.get(job_id)
            if record is None:
                return
            status = changes.pop("status", None)
            for key, value in changes.items():
                setattr(record, key, value)
            if status is not None:
                record.advance(status)

    def _evict(self) -> None:
        now = time.monotonic()
        stale = [
            k
            for k, r in self._jobs.items()
            if r.finished_at is not None and now - r.finished_at > JOB_TTL_SECONDS
        ]
        for k in stale:
            del self._jobs[k]


def _validation_response(exc: ValidationError) -> JSONResponse:
    return JSONResponse(
        status_code=400, content={"detail": str(exc), "field": exc.field}
    )


def create_app(*, solve_timeout: float = 30.0, workers: int = 2) -> FastAPI:
    app = FastAPI(title="vinedesign", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    jobs = JobTable()
    pool = ThreadPoolExecutor(max_workers=workers)

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/solve")
    def solve(body: dict):
        try:
            problem = problem_from_dict(body)
        except ValidationError as exc:
            return _validation_response(exc)

        record = jobs.create("solve")

        def run():
            jobs.update(record.job_id, status="running")
            try:
                doc = solve_problem(problem)
                jobs.update(
                    record.job_id,
                    status="done",
                    progress=1.0,
                    result=solution_to_dict(doc),
                )
            except Exception as exc:  # surfaced through the job record
                jobs.update(record.job_id, status="failed", error=str(exc))

        future = pool.submit(run)
        if solve_timeout <= 0:
            future.result()
        deadline = time.monotonic() + max(solve_timeout, 0.0)
        while time.monotonic() < deadline:
            current = jobs.get(record.job_id)
            if current.status in ("done", "failed"):
                break
            time.sleep(0.02)
        current = jobs.get(record.job_id)
        if current.status == "done":
            doc = current.result
            status = 200 if doc["feasible"] else 422
            return JSONResponse(status_code=status, content=doc)
        if current.status == "failed":
            return JSONResponse(status_code=500, content={"detail": current.error})
        return JSONResponse(status_code=202, content={"jobId": record.job_id})

    @app.post("/api/workspace")
    def workspace(body: dict):
        try:
            if not isinstance(body, dict):
                raise ValidationError("request must be an object", field="$")
            problem = problem_from_dict(body.get("problem"))
            design_data = body.get("design")
            if not isinstance(design_data, dict) or "lengths" not in design_data:
                raise ValidationError("design.lengths is required", field="design")
            design = Design(tuple(float(v) for v in design_data["lengths"]))
            samples = int(body.get("samples", 1000))
            if samples < 1:
                raise ValidationError("samples must be positive", field="samples")
            region_data = body.get("region", {})
            region = Region.from_degrees(
                float(region_data.get("xMin", 0.1)),
                float(region_data.get("xMax", 0.9)),
                float(region_data.get("yMin", 0.1)),
                float(region_data.get("yMax", 0.9)),
                float(region_data.get("phiMinDegrees", -90.0)),
                float(region_data.get("phiMaxDegrees", 90.0)),
            )
            seed = int(body.get("seed", problem.search.seed))
        except ValidationError as exc:
            return _validation_response(exc)
        except (TypeError, ValueError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})

        record = jobs.create("workspace")

        def run():
            jobs.update(record.job_id, status="running")
            collected: list[dict] = []

            def on_sample(sample):
                collected.append(
                    {
                        "x": sample.x,
                        "y": sample.y,
                        "phiDegrees": math.degrees(sample.phi),
                        "feasible": sample.feasible,
                    }
                )
                jobs.update(
                    record.job_id,
                    progress=len(collected) / samples,
                    result={
                        "seed": seed,
                        "samples": list(collected),
                        "successRate": sum(s["feasible"] for s in collected)
                        / max(len(collected), 1),
                        "total": samples,
                    },
                )

            try:
                result = workspace_analysis(
                    design,
                    region,
                    samples,
                    problem.constraints,
                    problem.weights,
                    problem.tolerance,
                    problem.search,
                    seed=seed,
                    on_sample=on_sample,
                )
                final = jobs.get(record.job_id).result or {}
                final["successRate"] = result.success_rate
                jobs.update(record.job_id, status="done", progress=1.0, result=final)
            except Exception as exc:
                jobs.update(record.job_id, status="failed", error=str(exc))

        pool.submit(run)
        return JSONResponse(status_code=202, content={"jobId": record.job_id})

    @app.get("/api/jobs/{job_id}")
    def job_status(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            return JSONResponse(status_code=404, content={"detail": "unknown job"})
        return record.to_dict()

    @app.post("/api/tradeoff")
    def tradeoff(body: dict):
        try:
            if not isinstance(body, dict):
                raise ValidationError("request must be an object", field="$")
            problem = problem_from_dict(body.get("problem"))
            angles = body.get("angles")
            if not isinstance(angles, list) or not angles:
                raise ValidationError("angles must be a non-empty array", field="angles")
            limits = [float(a) for a in angles]
        except ValidationError as exc:
            return _validation_response(exc)
        except (TypeError, ValueError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})

        variants = [problem.constraints.with_bend_limit_degrees(limit) for limit in limits]
        solutions = tradeoff_sweep(
            problem.targets,
            variants,
            problem.weights,
            problem.tolerance,
            problem.search,
        )
        documents = []
        for variant, solution in zip(variants, solutions):
            doc = build_solution_document(replace(problem, constraints=variant), solution)
            documents.append(solution_to_dict(doc))
        return {"solutions": documents}

    return app
