"""HTTP API for the capture service (the surface the web UI drives)."""

from __future__ import annotations

import threading
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from ..model.behaviors import (
    AmbiguousBehaviorError,
    BehaviorDefinition,
    DuplicateBehaviorError,
    UnknownBehaviorError,
)
from .service import CaptureService, SessionStateError, UnknownSessionError


def registry_payload(service: CaptureService) -> dict:
    registry = service.registry
    return {
        "revision": registry.revision,
        "definitions": [
            {
                "category_code": d.category_code,
                "behavior_name": d.behavior_name,
                "category_name": d.category_name,
            }
            for d in registry.definitions
        ],
    }


def create_capture_app(service: CaptureService, drain_interval_s: float | None = 0.5) -> FastAPI:
    """App factory; a daemon drainer flushes the sync queue when interval is set."""
    app = FastAPI(title="behaviorlab capture service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    if drain_interval_s:
        # Full drains so the entry-level backoff (not the poll interval) paces
        # retries; a click burst during an outage must not burn attempt budget.
        def _drain_loop():
            while True:
                try:
                    service.drain_sync_queue()
                except Exception:
                    pass
                time.sleep(drain_interval_s)

        threading.Thread(target=_drain_loop, daemon=True, name="sync-drain").start()

    @app.get("/registry")
    def get_registry():
        return registry_payload(service)

    @app.put("/registry")
    async def put_registry(request: Request):
        payload = await request.json()
        rows = payload.get("definitions")
        if not isinstance(rows, list):
            return JSONResponse(status_code=400, content={"error": "definitions must be a list"})
        defs = []
        for i, row in enumerate(rows):
            try:
                defs.append(
                    BehaviorDefinition(
                        category_code=row.get("category_code"),
                        behavior_name=row.get("behavior_name", ""),
                        category_name=row.get("category_name", ""),
                    )
                )
            except (ValueError, TypeError, AttributeError) as exc:
                return JSONResponse(
                    status_code=400,
                    content={"error": str(exc), "row": i, "field": _offending_field(row)},
                )
        try:
            service.replace_registry(defs)
        except DuplicateBehaviorError as exc:
            return JSONResponse(
                status_code=400,
                content={"error": str(exc), "field": "behavior_name"},
            )
        return registry_payload(service)

    @app.post("/sessions/start")
    async def start_session(request: Request):
        payload = await request.json() if await _has_body(request) else {}
        try:
            session = service.start_session(location_label=payload.get("location_label"))
        except SessionStateError as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        return _session_payload(session)

    @app.post("/sessions/end")
    def end_session():
        try:
            session = service.end_session()
        except SessionStateError as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        return _session_payload(session)

    @app.post("/clicks")
    async def post_click(request: Request):
        payload = await request.json()
        try:
            record = service.record_behavior(
                behavior_name=payload.get("behavior_name", ""),
                category_name=payload.get("category_name"),
            )
        except (UnknownBehaviorError, AmbiguousBehaviorError) as exc:
            return JSONResponse(
                status_code=400, content={"error": f"unknown behavior: {exc}", "field": "behavior_name"}
            )
        except SessionStateError as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        pending = record.event_id in service.queue.pending_event_ids()
        return {
            "event_id": record.event_id,
            "session_id": record.session_id,
            "behavior_name": record.behavior_name,
            "category_name": record.category_name,
            "clicked_at": record.clicked_at,
            "slots_present": record.n_values,
            "slots_total": 31,
            "error_slots": list(record.error_slots()),
            "sync_state": "pending" if pending else "acked",
        }

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str):
        try:
            text = service.export_log(session_id)
        except UnknownSessionError:
            return JSONResponse(status_code=404, content={"error": f"unknown session: {session_id}"})
        return PlainTextResponse(text, media_type="application/x-ndjson")

    @app.get("/status")
    def get_status():
        return service.status()

    return app


def _session_payload(session) -> dict:
    return {
        "session_id": session.session_id,
        "started_at": session.started_at,
        "ended_at": session.ended_at,
        "registry_revision": session.registry_revision,
        "location_label": session.location_label,
    }


def _offending_field(row) -> str:
    if not isinstance(row, dict):
        return "row"
    if not isinstance(row.get("category_code"), int) or row.get("category_code", -1) < 0:
        return "category_code"
    if not row.get("behavior_name"):
        return "behavior_name"
    return "category_name"


async def _has_body(request: Request) -> bool:
    body = await request.body()
    return bool(body)
