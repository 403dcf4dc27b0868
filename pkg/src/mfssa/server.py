"""In-memory analysis server backing the grouping workbench.

Sessions hold an ingested dataset, the current window length, a cached
decomposition, the analyst's grouping, and cached reconstructions. Mutations
on a session are serialized; reads work on immutable snapshots. Nothing is
persisted server-side: the export/import endpoints round-trip session state
as JSON.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .decomposition import (
    TrajectoryDecomposition,
    decompose,
    render_left_functions,
)
from .embedding import embed
from .mfts import MFTS, evaluate, ingest_dict, to_dataset_dict
from .reconstruction import Grouping, ReconstructionSet, reconstruct
from .separability import wcorrelation_matrix

DEFAULT_LAG = 2
MAX_PLOT_COMPONENTS = 12
LEFT_FUNCTION_SITES_1D = 64


def dataset_fingerprint(dataset: dict, lag: int) -> str:
    payload = json.dumps({"dataset": dataset, "lag": lag}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class AnalysisSession:
    session_id: str
    dataset: dict
    mfts: MFTS
    lag: int
    decomposition: TrajectoryDecomposition
    fingerprint: str
    grouping: Grouping | None = None
    include_residual: bool = False
    reconstructions: ReconstructionSet | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _compute_plotdata(session: AnalysisSession) -> dict:
    dec = session.decomposition
    sigma = dec.singular_values
    sq = sigma**2
    total = float(sq.sum()) or 1.0
    n_show = min(dec.rank, MAX_PLOT_COMPONENTS)
    right = dec.right_vectors[:, :n_show]
    paired = [
        {
            "components": [i + 1, i + 2],
            "coordinates": np.stack([right[:, i], right[:, i + 1]], axis=1).tolist(),
        }
        for i in range(n_show - 1)
    ]
    left = []
    for j, basis in enumerate(dec.bases):
        if basis.domain.ndim == 1:
            lo, hi = basis.domain.bounds[0]
            sites = np.linspace(lo, hi, LEFT_FUNCTION_SITES_1D)
            grid = sites.tolist()
        elif basis.kind == "discrete_delta":
            sites = basis.points
            grid = np.asarray(sites).tolist()
        else:
            (x0, x1), (y0, y1) = basis.domain.bounds
            gx = np.linspace(x0, x1, 8)
            gy = np.linspace(y0, y1, 8)
            sites = np.array([(x, y) for x in gx for y in gy])
            grid = sites.tolist()
        rendered = render_left_functions(dec, j, sites, range(n_show))
        left.append(
            {
                "variable": session.mfts.names[j],
                "grid": grid,
                # values[i][r] is component i's lag-r functional element
                "values": rendered.tolist(),
            }
        )
    return {
        "fingerprint": session.fingerprint,
        "scree": {
            "sigma": sigma.tolist(),
            "cumulative_share": np.cumsum(sq / total).tolist(),
        },
        "right_vectors": right.T.tolist(),
        "paired": paired,
        "left_functions": left,
        "L": dec.plan.L,
        "K": dec.plan.K,
        "rank": dec.rank,
    }


def _reconstruction_payload(session: AnalysisSession) -> dict:
    recs = session.reconstructions
    groups = []
    for label, series, share in zip(recs.labels, recs.series, recs.shares):
        payload = to_dataset_dict(series)
        payload["group"] = label
        payload["share"] = share
        groups.append(payload)
    return {"fingerprint": session.fingerprint, "groups": groups}


def create_app() -> FastAPI:
    app = FastAPI(title="mfssa analysis server")
    sessions: dict[str, AnalysisSession] = {}
    registry_lock = threading.Lock()

    def _get(session_id: str) -> AnalysisSession:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    def _build_session(dataset: dict, lag: int, session_id: str | None = None):
        try:
            mfts = ingest_dict(dataset)
            if not 1 <= lag < mfts.length:
                raise ValueError(f"lag must satisfy 1 <= lag < N={mfts.length}")
            dec = decompose(embed(mfts, lag))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return AnalysisSession(
            session_id=session_id or uuid.uuid4().hex[:12],
            dataset=dataset,
            mfts=mfts,
            lag=lag,
            decomposition=dec,
            fingerprint=dataset_fingerprint(dataset, lag),
        )

    @app.post("/api/session", status_code=201)
    def create_session(body: dict):
        dataset = body.get("dataset", body)
        if "variables" not in dataset:
            raise HTTPException(status_code=422, detail="dataset has no variables")
        lag = int(body.get("lag", DEFAULT_LAG))
        session = _build_session(dataset, lag)
        with registry_lock:
            sessions[session.session_id] = session
        return {
            "id": session.session_id,
            "lag": session.lag,
            "rank": session.decomposition.rank,
            "fingerprint": session.fingerprint,
        }

    @app.get("/api/session/{session_id}/decomposition")
    def get_decomposition(session_id: str, lag: int | None = Query(default=None)):
        session = _get(session_id)
        if lag is not None and lag != session.lag:
            with session.lock:
                if lag != session.lag:
                    rebuilt = _build_session(session.dataset, lag, session.session_id)
                    session.lag = rebuilt.lag
                    session.decomposition = rebuilt.decomposition
                    session.fingerprint = rebuilt.fingerprint
                    session.grouping = None
                    session.reconstructions = None
        payload = session.decomposition.export_dict()
        payload["fingerprint"] = session.fingerprint
        return payload

    @app.get("/api/session/{session_id}/plotdata")
    def get_plotdata(session_id: str):
        return _compute_plotdata(_get(session_id))

    @app.put("/api/session/{session_id}/grouping")
    def put_grouping(session_id: str, body: dict):
        session = _get(session_id)
        spec = body.get("groups")
        include_residual = bool(body.get("residual", False))
        try:
            if isinstance(spec, str):
                grouping = Grouping.parse(spec)
            elif isinstance(spec, list):
                grouping = Grouping(tuple(tuple(g) for g in spec))
            else:
                raise ValueError("groups must be a string or list of index lists")
            grouping.validate_rank(session.decomposition.rank)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        with session.lock:
            session.grouping = grouping
            session.include_residual = include_residual
            session.reconstructions = reconstruct(
                session.decomposition,
                grouping,
                session.mfts,
                include_residual=include_residual,
            )
        return _reconstruction_payload(session)

    @app.get("/api/session/{session_id}/reconstruction/{group}")
    def get_reconstruction(session_id: str, group: str):
        session = _get(session_id)
        if session.reconstructions is None:
            raise HTTPException(status_code=404, detail="no grouping submitted yet")
        recs = session.reconstructions
        if group in recs.labels:
            idx = recs.labels.index(group)
        else:
            try:
                idx = int(group)
            except ValueError:
                raise HTTPException(status_code=404, detail=f"unknown group {group!r}")
            if not 0 <= idx < len(recs.series):
                raise HTTPException(status_code=404, detail=f"group {idx} out of range")
        payload = to_dataset_dict(recs.series[idx])
        payload["group"] = recs.labels[idx]
        payload["share"] = recs.shares[idx]
        payload["fingerprint"] = session.fingerprint
        return payload

    @app.get("/api/session/{session_id}/wcorrelation")
    def get_wcorrelation(session_id: str):
        session = _get(session_id)
        dec = session.decomposition
        if session.reconstructions is not None:
            series = session.reconstructions.series
            labels = list(session.reconstructions.labels)
        else:
            # elementary diagnostic: each component reconstructed on its own
            n = min(dec.rank, MAX_PLOT_COMPONENTS)
            grouping = Grouping(tuple((i,) for i in range(1, n + 1)))
            series = reconstruct(dec, grouping, session.mfts).series
            labels = [str(i) for i in range(1, n + 1)]
        try:
            matrix = wcorrelation_matrix(series, session.lag, labels)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {
            "fingerprint": session.fingerprint,
            "labels": labels,
            "matrix": matrix.tolist(),
        }

    @app.get("/api/session/{session_id}/export")
    def export_session(session_id: str):
        session = _get(session_id)
        return {
            "dataset": session.dataset,
            "lag": session.lag,
            "grouping": [list(g) for g in session.grouping.groups]
            if session.grouping
            else None,
            "residual": session.include_residual,
            "fingerprint": session.fingerprint,
        }

    @app.post("/api/session/import", status_code=201)
    def import_session(body: dict):
        if "dataset" not in body:
            raise HTTPException(status_code=422, detail="export payload needs 'dataset'")
        session = _build_session(body["dataset"], int(body.get("lag", DEFAULT_LAG)))
        with registry_lock:
            sessions[session.session_id] = session
        if body.get("grouping"):
            put_grouping(
                session.session_id,
                {"groups": body["grouping"], "residual": body.get("residual", False)},
            )
        return {"id": session.session_id, "fingerprint": session.fingerprint}

    ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
