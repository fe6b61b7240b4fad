"""HTTP API backing the interactive exploration UI.

In-memory session store; bootstrap jobs run on a shared worker pool and
are polled via /jobs/{id}. All numeric results are computed server-side
so the UI never recomputes statistics.
"""

from __future__ import annotations

import io
import itertools
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import bootstrap as bt
from . import dataio, distances, expfit, regress
from .errors import (
    NumericalError,
    ParseError,
    ResourceError,
    ValidationError,
    VarioscopeError,
)

SCHEMA_VERSION = 1


@dataclass
class Session:
    id: str
    dataset: dataio.SpatialDataset
    sweeps: list[dict] = field(default_factory=list)
    fits: list[list[expfit.ExpModelFit | None]] = field(default_factory=list)
    residual_sessions: dict[str, str] = field(default_factory=dict)
    created_at: float = field(default_factory=time.time)


@dataclass
class BootstrapJob:
    id: str
    session_id: str
    state: str = "queued"  # queued -> running -> done | failed
    accepted: int = 0
    discarded: int = 0
    result: dict | None = None
    error: dict | None = None


class VariogramRequest(BaseModel):
    max_dists: list[float]
    nbins_list: list[int]


class RegressionRequest(BaseModel):
    response: str
    predictors: list[str]


class BootstrapRequest(BaseModel):
    model_index: int
    sweep_index: int = -1  # default: most recent sweep
    B: int = 1000
    threshold_factor: float = 3.0
    seed: int = 0


def _http_error(exc: VarioscopeError) -> HTTPException:
    if isinstance(exc, (ParseError, ValidationError)):
        return HTTPException(status_code=400, detail=str(exc))
    if isinstance(exc, NumericalError):
        return HTTPException(
            status_code=422, detail={"kind": "numerical", "message": str(exc)}
        )
    if isinstance(exc, ResourceError):
        return HTTPException(
            status_code=422, detail={"kind": "resource", "message": str(exc)}
        )
    return HTTPException(status_code=500, detail=str(exc))


def _curve_arrays(ev, fit, n_curve: int = 120) -> dict:
    payload = {"bins": ev.to_json_dict()["bins"], "curve": None}
    if fit is not None:
        hs = np.linspace(ev.max_dist / n_curve, ev.max_dist, n_curve)
        payload["curve"] = {
            "h": hs.tolist(),
            "gamma": expfit.eval_exponential(fit.params, hs).tolist(),
        }
    return payload


def create_app(max_workers: int = 4, max_queued_jobs: int = 32) -> FastAPI:
    app = FastAPI(title="varioscope")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, Session] = {}
    jobs: dict[str, BootstrapJob] = {}
    lock = threading.Lock()
    pool = ThreadPoolExecutor(max_workers=max_workers)
    pending = itertools.count()
    queued_count = [0]

    def _session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return session

    @app.post("/datasets")
    async def upload_dataset(file: UploadFile):
        raw = await file.read()
        try:
            ds = dataio.load_dataset(io.BytesIO(raw))
        except VarioscopeError as exc:
            raise _http_error(exc)
        session = Session(id=uuid.uuid4().hex, dataset=ds)
        with lock:
            sessions[session.id] = session
        report = dataio.missingness_summary(ds)
        return {
            "schema_version": SCHEMA_VERSION,
            "session_id": session.id,
            "n": ds.n,
            "missingness": report.to_json_dict(),
            "columns": list(ds.column_names),
        }

    @app.get("/datasets/{session_id}/distance-info")
    def distance_info(session_id: str):
        session = _session(session_id)
        try:
            dset = distances.pairwise_distances(session.dataset)
            summary = distances.distance_summary(dset)
        except VarioscopeError as exc:
            raise _http_error(exc)
        return {"schema_version": SCHEMA_VERSION, **summary.to_json_dict()}

    @app.post("/datasets/{session_id}/variograms")
    def variograms(session_id: str, req: VariogramRequest):
        session = _session(session_id)
        try:
            sweep = expfit.vario_mod(session.dataset, req.max_dists, req.nbins_list)
        except VarioscopeError as exc:
            raise _http_error(exc)
        models = [
            _curve_arrays(ev, fit) if ev is not None else None
            for ev, fit in zip(sweep.variograms, sweep.fits)
        ]
        payload = {
            "schema_version": SCHEMA_VERSION,
            "request": req.model_dump(),
            "table": sweep.table.to_json_dict(),
            "models": models,
            "sweep_index": len(session.sweeps),
        }
        with lock:
            session.sweeps.append(payload)
            session.fits.append(list(sweep.fits))
        return payload

    @app.post("/datasets/{session_id}/regressions")
    def regressions(session_id: str, req: RegressionRequest):
        session = _session(session_id)
        try:
            fit = regress.fit_ols(session.dataset, req.response, req.predictors)
            residual_ds = regress.vario_reg_prep(fit, session.dataset)
        except VarioscopeError as exc:
            raise _http_error(exc)
        residual_session = Session(id=uuid.uuid4().hex, dataset=residual_ds)
        with lock:
            sessions[residual_session.id] = residual_session
            session.residual_sessions[residual_session.id] = req.response
        return {
            "schema_version": SCHEMA_VERSION,
            "summary": fit.to_json_dict(),
            "residual_session_id": residual_session.id,
            "n_residuals": residual_ds.n,
        }

    def _run_job(job: BootstrapJob, session: Session, fit, cfg: bt.BootstrapConfig):
        job.state = "running"

        def progress(accepted: int, discarded: int):
            job.accepted = accepted
            job.discarded = discarded

        try:
            table = bt.par_uncertainty(session.dataset, fit, cfg, progress_cb=progress)
            job.result = {"schema_version": SCHEMA_VERSION, **table.to_json_dict()}
            job.state = "done"
        except VarioscopeError as exc:
            job.error = {"kind": type(exc).__name__, "message": str(exc)}
            job.state = "failed"
        finally:
            with lock:
                queued_count[0] -= 1

    @app.post("/datasets/{session_id}/bootstrap")
    def launch_bootstrap(session_id: str, req: BootstrapRequest):
        session = _session(session_id)
        if not session.fits:
            raise HTTPException(
                status_code=409, detail="no variogram sweep run for this session yet"
            )
        sweep_fits = session.fits[req.sweep_index]
        if not (1 <= req.model_index <= len(sweep_fits)):
            raise HTTPException(
                status_code=400,
                detail=f"model_index must be in 1..{len(sweep_fits)}",
            )
        fit = sweep_fits[req.model_index - 1]
        if fit is None:
            raise HTTPException(
                status_code=422,
                detail={"kind": "numerical", "message": "selected model failed to fit"},
            )
        try:
            cfg = bt.BootstrapConfig(
                B=req.B, threshold_factor=req.threshold_factor, seed=req.seed
            )
        except ValidationError as exc:
            raise _http_error(exc)
        with lock:
            if queued_count[0] >= max_queued_jobs:
                raise HTTPException(status_code=503, detail="worker pool saturated")
            queued_count[0] += 1
            job = BootstrapJob(id=uuid.uuid4().hex, session_id=session_id)
            jobs[job.id] = job
        pool.submit(_run_job, job, session, fit, cfg)
        return {"schema_version": SCHEMA_VERSION, "job_id": job.id}

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id}")
        return {
            "schema_version": SCHEMA_VERSION,
            "job_id": job.id,
            "session_id": job.session_id,
            "state": job.state,
            "progress": {"accepted": job.accepted, "discarded": job.discarded},
            "result": job.result,
            "error": job.error,
        }

    return app
